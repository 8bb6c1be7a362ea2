#include <cmath>
#include <numbers>

#include "xyquench/errors.hpp"
#include "xyquench/oracle.hpp"

namespace xyq::oracle {

CorrelatorSet ring_correlators(double t_tilde, const ModelParams& params, const RingSpec& ring) {
  require_valid_time(t_tilde);
  if (ring.n_modes < 8) throw ParameterError("ring oracle needs n_modes >= 8");

  const double g = params.gamma();
  const double a = params.a_tilde();
  const double t = t_tilde;
  const int n = ring.n_modes;

  // Straight transcription with plain cos(phi); the midpoint lattice never
  // touches phi = 0, where the a = 1 dispersion vanishes.
  double sum_xx = 0.0, sum_yy = 0.0, sum_s = 0.0, sum_m = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double phi = std::numbers::pi * (k - 0.5) / n;
    const double c = std::cos(phi);
    const double sn = std::sin(phi);
    const double lam0 = std::sqrt(g * g * sn * sn + c * c);
    const double lama = std::sqrt(g * g * sn * sn + (a - c) * (a - c));
    const double osc_c = std::cos(2.0 * lam0 * t);
    const double osc_s = std::sin(2.0 * lam0 * t);
    const double den = lama * lam0 * lam0;
    const double brace = g * g * sn * sn + (c - a) * c;

    for (int ip : {-1, 1}) {
      const double first = g * std::sin(ip * phi) * sn / den * (brace + a * c * osc_c);
      const double second = c / den * (brace * c - a * g * g * sn * sn * osc_c);
      (ip == -1 ? sum_xx : sum_yy) += first - second;
    }
    sum_s += -g * a * sn * sn * osc_s / (lama * lam0);
    sum_m += (osc_c * g * g * a * sn * sn - c * ((c - a) * c + g * g * sn * sn)) / den;
  }

  CorrelatorSet out;
  out.g_minus = sum_xx / n;
  out.g_plus = sum_yy / n;
  out.s = sum_s / n;
  out.mz = sum_m / n;
  out.l_zz = out.mz * out.mz - out.g_plus * out.g_minus + out.s * out.s;
  return out;
}

}  // namespace xyq::oracle
