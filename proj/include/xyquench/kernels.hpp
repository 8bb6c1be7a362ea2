#pragma once

// Dispersion-integral correlators of the quenched XY chain at zero
// temperature. Every correlator has the form (1/pi) * int_0^pi f(phi) dphi;
// the integrands below return f.

#include <Eigen/Core>
#include <cmath>

#include "xyquench/model.hpp"

namespace xyq {

/// Quasiparticle dispersion sqrt(gamma^2 sin^2 phi + (x - cos phi)^2).
///
/// x - cos(phi) is formed as (x - 1) + 2 sin^2(phi/2) so the gap closing at
/// x = 1, phi = 0 is resolved without cancellation.
template <typename Scalar>
Scalar dispersion(Scalar x, Scalar phi, Scalar gamma) {
  using std::hypot;
  using std::sin;
  const Scalar half = sin(phi / Scalar(2));
  const Scalar detuning = (x - Scalar(1)) + Scalar(2) * half * half;
  return hypot(gamma * sin(phi), detuning);
}

/// Below this value of the pre-quench dispersion the integrands are replaced
/// by their phi -> 0 limit (which is zero for all four; they vanish linearly
/// in phi when a_tilde = 1).
inline constexpr double kGapFloor = 1e-12;

/// Integrands of (g(-1), g(+1), s, Mz) at one momentum angle.
template <typename Scalar>
struct CorrelatorIntegrand {
  Scalar gamma;
  Scalar a;  // pre-quench field a_tilde
  Scalar t;  // post-quench time t_tilde

  using Vector = Eigen::Array<Scalar, 4, 1>;

  Vector operator()(Scalar phi) const {
    using std::cos;
    using std::sin;
    const Scalar lam_a = dispersion(a, phi, gamma);
    if (lam_a < Scalar(kGapFloor)) return Vector::Zero();

    const Scalar lam_0 = dispersion(Scalar(0), phi, gamma);
    const Scalar c = cos(phi);
    const Scalar sn = sin(phi);
    const Scalar half = sin(phi / Scalar(2));
    const Scalar c_minus_a = -((a - Scalar(1)) + Scalar(2) * half * half);
    const Scalar q = gamma * gamma * sn * sn;
    const Scalar ct = cos(Scalar(2) * lam_0 * t);
    const Scalar st = sin(Scalar(2) * lam_0 * t);

    const Scalar pre = q + c_minus_a * c;  // gamma^2 sin^2 + (cos - a) cos
    const Scalar inv = Scalar(1) / (lam_a * lam_0 * lam_0);

    // g(i', t) = gamma sin(i' phi) sin(phi) [pre + a cos ct] - cos [pre cos - a q ct]
    const Scalar common = c * (pre * c - a * q * ct);
    const Scalar odd = gamma * sn * sn * (pre + a * c * ct);

    Vector out;
    out(0) = (-odd - common) * inv;               // i' = -1  -> l^xx
    out(1) = (odd - common) * inv;                // i' = +1  -> l^yy
    out(2) = -gamma * a * sn * sn * st / (lam_a * lam_0);
    out(3) = (ct * q * a - c * pre) * inv;
    return out;
  }
};

/// g(i', t) with i' = -1 giving <sx sx> and i' = +1 giving <sy sy>.
/// Throws ParameterError for i' outside {-1, +1} or t < 0, QuadratureFailure
/// if the tolerance cannot be met.
double g_corr(int i_prime, double t_tilde, const ModelParams& params,
              const QuadratureSpec& quad = {});

/// Off-diagonal correlator s(t) = <sx sy>; vanishes at t = 0 and at a_tilde = 0.
double s_corr(double t_tilde, const ModelParams& params, const QuadratureSpec& quad = {});

/// Transverse magnetization <sz> after the quench.
double magnetization_z(double t_tilde, const ModelParams& params,
                       const QuadratureSpec& quad = {});

/// All five nearest-neighbor correlators from one vector-valued integration;
/// l_zz is completed with lzz_from_wick.
CorrelatorSet correlators(double t_tilde, const ModelParams& params,
                          const QuadratureSpec& quad = {});

}  // namespace xyq
