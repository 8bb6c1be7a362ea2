#pragma once

#include <array>

namespace xyq {

/// Physics configuration of the quenched XY chain.
///
/// Energies are measured in units of the coupling J, so the pre-quench field
/// enters as `a_tilde = a / J` and times as `t_tilde = J t / hbar` (passed
/// per call). The field is switched from `a_tilde` to zero at t = 0.
class ModelParams {
 public:
  /// Throws ParameterError unless gamma != 0 and a_tilde >= 0 (both finite).
  ModelParams(double gamma, double a_tilde);

  double gamma() const noexcept { return gamma_; }
  double a_tilde() const noexcept { return a_tilde_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double gamma_;
  double a_tilde_;
};

/// Accuracy contract for the adaptive dispersion integrals.
struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;

  /// Throws ParameterError when a field is out of range.
  void validate() const;

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// Nearest-neighbor correlators feeding the two-site state.
///
/// g_minus = <sx sx>, g_plus = <sy sy>, s = <sx sy> = <sy sx>,
/// mz = <sz>, l_zz = <sz sz>, all with Pauli normalization.
struct CorrelatorSet {
  double g_minus = 0.0;
  double g_plus = 0.0;
  double s = 0.0;
  double mz = 0.0;
  double l_zz = 0.0;

  std::array<double, 5> as_array() const { return {g_minus, g_plus, s, mz, l_zz}; }

  friend bool operator==(const CorrelatorSet&, const CorrelatorSet&) = default;
};

/// Throws ParameterError for a negative or non-finite time.
void require_valid_time(double t_tilde);

}  // namespace xyq
