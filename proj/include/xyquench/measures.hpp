#pragma once

// Entanglement and work-deficit measures for two-qubit states.

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>
#include <string_view>

#include "xyquench/errors.hpp"
#include "xyquench/state.hpp"

namespace xyq {

/// Eigenvalues below this are treated as exactly zero in entropies.
inline constexpr double kEntropyFloor = 1e-14;

/// -x log2 x with the floor applied.
inline double entropy_term(double x) { return x > kEntropyFloor ? -x * std::log2(x) : 0.0; }

/// von Neumann entropy in bits of a density matrix of dimension <= 4.
/// Throws InvalidState for a non-square, oversized, non-Hermitian, non-unit
/// trace or clearly non-positive input.
template <typename Derived>
double von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  using Plain = typename Derived::PlainObject;
  if (rho.rows() != rho.cols() || rho.rows() < 1 || rho.rows() > 4) {
    throw InvalidState("von_neumann_entropy: expected a square matrix of dimension <= 4");
  }
  const Plain m = rho.eval();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidState("von_neumann_entropy: matrix is not Hermitian");
  }
  if (std::abs(m.trace() - typename Plain::Scalar(1)) > 1e-10) {
    throw InvalidState("von_neumann_entropy: trace differs from 1");
  }
  const Plain herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Plain> solver(herm, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda < -kEigenvalueSlack) throw InvalidState("von_neumann_entropy: negative eigenvalue");
    s += entropy_term(lambda);
  }
  return s;
}

/// rho^{T_1}: transpose on the first site.
Matrix4c partial_transpose_first(const Matrix4c& rho);

/// Sum of |negative eigenvalues| of rho^{T_1}. Uses the closed form for
/// X-form states and a Hermitian eigensolve otherwise.
double negativity(const TwoQubitState& rho);

/// Negativity from an explicit eigensolve of the partial transpose.
double negativity_eigen(const TwoQubitState& rho);

/// log2(2 N + 1), in ebits.
double log_negativity(const TwoQubitState& rho);

/// Wootters concurrence.
double concurrence(const TwoQubitState& rho);

/// Projective qubit basis |i1> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
/// |i2> = -e^{-i phi} sin(theta/2)|0> + cos(theta/2)|1>.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector2cd first() const;
  Eigen::Vector2cd second() const;
  /// Unitary with columns (|i1>, |i2>).
  Matrix2c unitary() const;
  /// Same projectors with theta in [0, pi] and phi in [0, 2 pi).
  MeasurementBasis canonical() const;
};

enum class Party { First = 1, Second = 2 };

enum class DeficitVariant {
  LocalSum,        // S(rho'_1) + S(rho'_2) of the dephased state
  GlobalDephased,  // S(rho') of the dephased state
};

std::string_view to_string(DeficitVariant variant);
/// Accepts "local-sum" and "global-dephased"; throws ParameterError otherwise.
DeficitVariant parse_deficit_variant(std::string_view text);

/// sum_k (P_k on `party`) rho (P_k on `party`) with P_k the basis projectors.
TwoQubitState dephase(const TwoQubitState& rho, const MeasurementBasis& basis, Party party);

/// Entropic cost of the dephased state, in bits: S(Tr_2 rho') + S(Tr_1 rho')
/// for LocalSum, S(rho') for GlobalDephased.
double clocc_objective(const TwoQubitState& rho, const MeasurementBasis& basis, Party party,
                       DeficitVariant variant);

struct OptimizerSpec {
  int n_theta = 64;   // grid points on [0, pi], endpoints included
  int n_phi = 128;    // grid points on [0, 2 pi)
  double x_tol = 1e-6;
  double f_tol = 1e-10;
  int max_iterations = 500;

  void validate() const;
  friend bool operator==(const OptimizerSpec&, const OptimizerSpec&) = default;
};

struct WorkDeficitResult {
  double value = 0.0;        // qubits
  MeasurementBasis argmin;   // canonical angles of the best basis
  Party party = Party::Second;
  double grid_value = 0.0;   // best coarse-grid value, same units
  bool refined = false;      // false when the simplex stage was discarded
  int evaluations = 0;
};

/// One-way work deficit: min over projective measurements of
/// clocc_objective, minus S(rho). Swap-symmetric states are measured on
/// site 2 only; otherwise both sites are tried and the smaller value kept.
/// GlobalDephased values within 1e-9 below zero are clipped to zero.
WorkDeficitResult work_deficit(const TwoQubitState& rho,
                               DeficitVariant variant = DeficitVariant::LocalSum,
                               const OptimizerSpec& opt = {});

namespace detail {

/// Precomputed pieces of clocc_objective for repeated evaluation with the
/// measurement always on site 2 (site-1 measurements use the swapped state).
class DephasingObjective {
 public:
  DephasingObjective(const Matrix4c& rho, DeficitVariant variant);
  double operator()(double theta, double phi) const;

 private:
  Matrix4c rho_;
  DeficitVariant variant_;
  double first_site_entropy_ = 0.0;
};

bool is_swap_symmetric(const Matrix4c& rho, double tol = 1e-12);

}  // namespace detail

}  // namespace xyq
