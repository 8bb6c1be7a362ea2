#include "xyquench/kernels.hpp"

#include <numbers>
#include <string>

#include "xyquench/errors.hpp"
#include "xyquench/quadrature.hpp"
#include "xyquench/state.hpp"

namespace xyq {

namespace {

constexpr double kPi = std::numbers::pi;

CorrelatorIntegrand<double> make_integrand(double t_tilde, const ModelParams& params) {
  require_valid_time(t_tilde);
  return {params.gamma(), params.a_tilde(), t_tilde};
}

// (1/pi) int_0^pi of one component of the integrand vector.
double integrate_component(const CorrelatorIntegrand<double>& integrand, int component,
                           const QuadratureSpec& quad) {
  // The 1/pi normalization is applied after integration, so the tolerance is
  // scaled to keep the contract on the normalized value.
  QuadratureSpec scaled = quad;
  scaled.abs_tol = quad.abs_tol * kPi;
  auto f = [&](double phi) { return integrand(phi)(component); };
  return integrate_adaptive<double>(f, 0.0, kPi, scaled).value / kPi;
}

}  // namespace

double g_corr(int i_prime, double t_tilde, const ModelParams& params,
              const QuadratureSpec& quad) {
  if (i_prime != -1 && i_prime != 1) {
    throw ParameterError("g_corr: i_prime must be -1 or +1, got " + std::to_string(i_prime));
  }
  return integrate_component(make_integrand(t_tilde, params), i_prime == -1 ? 0 : 1, quad);
}

double s_corr(double t_tilde, const ModelParams& params, const QuadratureSpec& quad) {
  return integrate_component(make_integrand(t_tilde, params), 2, quad);
}

double magnetization_z(double t_tilde, const ModelParams& params, const QuadratureSpec& quad) {
  return integrate_component(make_integrand(t_tilde, params), 3, quad);
}

CorrelatorSet correlators(double t_tilde, const ModelParams& params, const QuadratureSpec& quad) {
  const auto integrand = make_integrand(t_tilde, params);
  QuadratureSpec scaled = quad;
  scaled.abs_tol = quad.abs_tol * kPi;
  const auto result =
      integrate_adaptive<Eigen::Array4d>(integrand, 0.0, kPi, scaled).value / kPi;

  CorrelatorSet c;
  c.g_minus = result(0);
  c.g_plus = result(1);
  c.s = result(2);
  c.mz = result(3);
  c.l_zz = lzz_from_wick(c, c.mz);
  return c;
}

}  // namespace xyq
