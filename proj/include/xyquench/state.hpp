#pragma once

#include <Eigen/Core>
#include <complex>

#include "xyquench/model.hpp"

namespace xyq {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Two-qubit density matrix in the basis |00>, |01>, |10>, |11>, where |0>
/// is the sz = +1 state of each site.
class TwoQubitState {
 public:
  TwoQubitState() : rho_(Matrix4c::Identity() / 4.0) {}
  explicit TwoQubitState(const Matrix4c& rho) : rho_(rho) {}

  const Matrix4c& matrix() const noexcept { return rho_; }
  std::complex<double> operator()(int row, int col) const { return rho_(row, col); }

  /// True when every entry off the diagonal and anti-diagonal is within tol.
  bool is_x_form(double tol = 1e-13) const;

  static TwoQubitState maximally_mixed() { return TwoQubitState(); }

 private:
  Matrix4c rho_;
};

/// Physicality slacks for assembled states.
inline constexpr double kTraceSlack = 1e-12;
inline constexpr double kHermiticitySlack = 1e-12;
inline constexpr double kEigenvalueSlack = 1e-8;

struct ValidationReport {
  double trace_deviation = 0.0;
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool trace_ok = false;
  bool hermitian_ok = false;
  bool psd_ok = false;

  bool pass() const { return trace_ok && hermitian_ok && psd_ok; }
};

ValidationReport validate_state(const TwoQubitState& rho);

/// Free-fermion contraction for <sz sz>: Mz^2 - g(+1) g(-1) + s^2.
double lzz_from_wick(const CorrelatorSet& c, double mz);

/// Builds (1/4)[II + Mz(ZI + IZ) + s(XY + YX) + sum_j l_jj jj].
/// Throws NonPhysicalState if the result fails validate_state.
TwoQubitState assemble_state(const CorrelatorSet& c);

/// Same construction without the physicality check.
TwoQubitState assemble_state_unchecked(const CorrelatorSet& c);

/// SWAP rho SWAP.
Matrix4c swap_parties(const Matrix4c& rho);

/// Partial traces; `reduced_first` keeps site 1, `reduced_second` keeps site 2.
Matrix2c reduced_first(const Matrix4c& rho);
Matrix2c reduced_second(const Matrix4c& rho);

}  // namespace xyq
