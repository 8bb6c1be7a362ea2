#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "xyquench/errors.hpp"
#include "xyquench/kernels.hpp"
#include "xyquench/oracle.hpp"
#include "xyquench/parallel.hpp"
#include "xyquench/scan.hpp"
#include "xyquench/state.hpp"

namespace xyq::cli {

using nlohmann::json;

namespace {

json check(std::string name, bool pass, json details = json::object()) {
  details["name"] = std::move(name);
  details["pass"] = pass;
  return details;
}

json suite(std::string name, std::vector<json> checks) {
  const bool pass = std::all_of(checks.begin(), checks.end(),
                                [](const json& c) { return c.at("pass").get<bool>(); });
  return {{"suite", std::move(name)}, {"pass", pass}, {"checks", std::move(checks)}};
}

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

TwoQubitState bell_state() {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
  return TwoQubitState(rho);
}

TwoQubitState classical_mixture() {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = rho(3, 3) = 0.5;
  return TwoQubitState(rho);
}

CorrelationCurve synthetic_curve(std::vector<double> ln) {
  CorrelationCurve c;
  for (std::size_t i = 0; i < ln.size(); ++i) c.samples.push_back({0.01 * i, ln[i], 0.0, 0.0});
  return c;
}

template <typename F>
bool throws_kind(F&& f, ErrorKind kind) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

std::vector<GridPoint> standard_grid() {
  std::vector<GridPoint> grid;
  for (double g : {0.2, 0.4, 0.5, 0.6, 0.8, 1.0}) {
    for (int ia = 0; ia <= 20; ++ia) {
      for (int it = 0; it <= 20; ++it) grid.push_back({g, 0.1 * ia, 0.5 * it});
    }
  }
  return grid;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"trivial", "state-psd", "ring", "ed", "optimizer"};
  return names;
}

json run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "trivial") return trivial_suite();
  if (name == "state-psd") return state_psd_suite(options);
  if (name == "ring") return ring_suite(options);
  if (name == "ed") return ed_suite(options);
  if (name == "optimizer") return optimizer_suite(options);
  throw ParameterError("unknown suite '" + std::string(name) +
                       "' (expected trivial, state-psd, ring, ed, optimizer or all)");
}

json trivial_suite() {
  std::vector<json> checks;

  const auto bell = bell_state();
  const double ln = log_negativity(bell);
  const double neg = negativity(bell);
  const double conc = concurrence(bell);
  const double qgd = work_deficit(bell, DeficitVariant::GlobalDephased).value;
  const double qls = work_deficit(bell, DeficitVariant::LocalSum).value;
  checks.push_back(check("bell", near(ln, 1.0, 1e-10) && near(neg, 0.5, 1e-10) &&
                                     near(conc, 1.0, 1e-10) && near(qgd, 1.0, 1e-4) &&
                                     near(qls, 2.0, 1e-4),
                         {{"ln", ln}, {"negativity", neg}, {"concurrence", conc},
                          {"qwd_global_dephased", qgd}, {"qwd_local_sum", qls}}));

  const auto mixed = TwoQubitState::maximally_mixed();
  const double m_ln = log_negativity(mixed);
  const double m_c = concurrence(mixed);
  const double m_gd = work_deficit(mixed, DeficitVariant::GlobalDephased).value;
  const double m_ls = work_deficit(mixed, DeficitVariant::LocalSum).value;
  checks.push_back(check("maximally_mixed", near(m_ln, 0, 1e-9) && near(m_c, 0, 1e-9) &&
                                                near(m_gd, 0, 1e-9) && near(m_ls, 0, 1e-9),
                         {{"ln", m_ln}, {"concurrence", m_c}, {"qwd_global_dephased", m_gd},
                          {"qwd_local_sum", m_ls}}));

  const auto classical = classical_mixture();
  const double c_ln = log_negativity(classical);
  const double c_gd = work_deficit(classical, DeficitVariant::GlobalDephased).value;
  checks.push_back(check("classical_mixture", near(c_ln, 0, 1e-10) && near(c_gd, 0, 1e-4),
                         {{"ln", c_ln}, {"qwd_global_dephased", c_gd}}));

  checks.push_back(check("scale_factor",
                         scale_factor(3.0, 3.0, 3.0) == 0.0 && scale_factor(6.0, 3.0, 3.0) == 1.0 &&
                             scale_factor(1.5, 3.0, 3.0) == -0.5 &&
                             throws_kind([] { scale_factor(1.0, 1.0, 0.0); },
                                         ErrorKind::NonpositiveScale)));
  checks.push_back(check("predict_revival",
                         predict_revival(0.0) && !predict_revival(-1e-3) && predict_revival(2.7)));

  const auto none = detect_revival(synthetic_curve(std::vector<double>(201, 0.5)));
  std::vector<double> dies(201, 0.0);
  for (int i = 0; i < 50; ++i) dies[i] = 0.5;
  const auto death = detect_revival(synthetic_curve(dies));
  std::vector<double> revives = dies;
  for (int i = 120; i < 201; ++i) revives[i] = 0.5;
  const auto revival = detect_revival(synthetic_curve(revives));
  const bool revival_ok =
      revival.classification == RevivalClass::DeathWithRevival && revival.death_field &&
      revival.revival_field && near(*revival.death_field, 0.49 + 0.01 * (0.5 - 1e-4) / 0.5, 1e-12) &&
      near(*revival.revival_field, 1.19 + 0.01 * (1e-4 / 0.5), 1e-12);
  checks.push_back(check("detect_revival",
                         none.classification == RevivalClass::NoDeath &&
                             death.classification == RevivalClass::DeathNoRevival && revival_ok));

  const std::vector<double> x = uniform_grid(0.0, 2.0, 201);
  const std::vector<double> zeros(201, 0.0), consts(201, 0.37);
  checks.push_back(check("area_synthetic", trapezoid_area(x, zeros) == 0.0 &&
                                               near(trapezoid_area(x, consts), 0.74, 1e-13)));

  const std::vector<TimeAreaPoint> pts{{0.0, 3.0, true}, {0.25, 5.0, true}, {0.5, 1.0, false}};
  const auto cal = calibrate_a_min(pts);
  const std::vector<TimeAreaPoint> empty{{0.0, 1.0, false}};
  checks.push_back(check("calibrate_a_min",
                         cal.a_min == 3.0 && cal.witness_t == 0.0 &&
                             throws_kind([&] { calibrate_a_min(empty); }, ErrorKind::NoRevivalInGrid)));

  const ModelParams zero_field(0.5, 0.0);
  const auto r0 = oracle::ring_correlators(0.0, zero_field, {512});
  const auto r5 = oracle::ring_correlators(5.0, zero_field, {512});
  double ring_drift = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    ring_drift = std::max(ring_drift, std::abs(r0.as_array()[i] - r5.as_array()[i]));
  }
  checks.push_back(check("ring_zero_field_stationary", ring_drift <= 1e-14, {{"drift", ring_drift}}));

  checks.push_back(check("gamma_zero_rejected",
                         throws_kind([] { ModelParams(0.0, 0.5); }, ErrorKind::Parameter)));
  return suite("trivial", std::move(checks));
}

json state_psd_suite(const SuiteOptions& options) {
  const auto grid = standard_grid();
  const auto reports = parallel_map(grid.size(), options.jobs, [&](std::size_t i) {
    const auto& p = grid[i];
    return validate_state(
        assemble_state_unchecked(correlators(p.t_tilde, ModelParams(p.gamma, p.a_tilde), options.quad)));
  });
  double worst_trace = 0.0, min_eig = std::numeric_limits<double>::infinity();
  int failures = 0;
  for (const auto& r : reports) {
    worst_trace = std::max(worst_trace, r.trace_deviation);
    min_eig = std::min(min_eig, r.min_eigenvalue);
    if (!(r.trace_deviation <= 1e-12 && r.min_eigenvalue >= -1e-8)) ++failures;
  }
  return suite("state-psd", {check("trace_and_psd", failures == 0,
                                   {{"points", grid.size()},
                                    {"failures", failures},
                                    {"max_trace_deviation", worst_trace},
                                    {"min_eigenvalue", min_eig}})});
}

json ring_suite(const SuiteOptions& options) {
  std::vector<json> checks;
  const auto grid = standard_grid();
  const oracle::RingSpec ring{options.ring_modes};
  const auto devs = parallel_map(grid.size(), options.jobs, [&](std::size_t i) {
    const auto& p = grid[i];
    const ModelParams params(p.gamma, p.a_tilde);
    const auto q = correlators(p.t_tilde, params, options.quad).as_array();
    const auto r = oracle::ring_correlators(p.t_tilde, params, ring).as_array();
    double d = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) d = std::max(d, std::abs(q[k] - r[k]));
    return d;
  });
  const auto worst = std::max_element(devs.begin(), devs.end());
  const auto& wp = grid[static_cast<std::size_t>(worst - devs.begin())];
  checks.push_back(check("kernels_vs_ring", *worst <= 1e-6,
                         {{"points", grid.size()},
                          {"n_modes", ring.n_modes},
                          {"max_abs_deviation", *worst},
                          {"worst_point", {{"gamma", wp.gamma}, {"a_tilde", wp.a_tilde}, {"t_tilde", wp.t_tilde}}}}));

  const ModelParams smooth(0.5, 0.5);
  const auto ref = correlators(1.0, smooth, options.quad).as_array();
  std::vector<double> errs;
  json seq = json::array();
  for (int n : {8, 16, 32}) {
    const auto r = oracle::ring_correlators(1.0, smooth, {n}).as_array();
    double d = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) d = std::max(d, std::abs(r[k] - ref[k]));
    errs.push_back(d);
    seq.push_back({{"n_modes", n}, {"deviation", d}});
  }
  const bool converging = errs[1] * 10.0 <= errs[0] && errs[2] * 10.0 <= errs[1];
  checks.push_back(check("ring_convergence", converging, {{"sequence", seq}}));
  return suite("ring", std::move(checks));
}

json ed_suite(const SuiteOptions& options) {
  std::vector<json> checks;
  const ModelParams params(0.5, 0.8);
  const Matrix4c infinite = assemble_state(correlators(1.0, params, options.quad)).matrix();
  json seq = json::array();
  std::vector<double> devs;
  for (int n : {8, 10, 12}) {
    const auto ed = oracle::ed_quench(1.0, params, {n});
    const double d = (ed.lowest.matrix() - infinite).cwiseAbs().maxCoeff();
    const double d_avg = (ed.averaged.matrix() - infinite).cwiseAbs().maxCoeff();
    devs.push_back(d);
    seq.push_back({{"n_sites", n}, {"deviation", d}, {"deviation_averaged", d_avg},
                   {"ground_degeneracy", ed.ground_degeneracy}});
  }
  checks.push_back(check("finite_size_convergence", devs[1] < devs[0] && devs[2] < devs[1],
                         {{"gamma", 0.5}, {"a_tilde", 0.8}, {"t_tilde", 1.0}, {"sequence", seq}}));

  const auto polarized = oracle::ed_quench(0.0, ModelParams(0.5, 100.0), {10});
  const double fidelity = polarized.lowest(0, 0).real();
  checks.push_back(check("large_field_polarized", fidelity > 0.999, {{"fidelity", fidelity}}));

  const ModelParams zero_field(0.5, 0.0);
  const auto e0 = oracle::ed_quench(0.0, zero_field, {8});
  const auto e3 = oracle::ed_quench(3.0, zero_field, {8});
  const double drift = (e0.averaged.matrix() - e3.averaged.matrix()).cwiseAbs().maxCoeff();
  checks.push_back(check("zero_field_stationary", drift <= 1e-10, {{"drift", drift}}));
  return suite("ed", std::move(checks));
}

json optimizer_suite(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed);
  const std::vector<double> gammas{0.2, 0.4, 0.5, 0.6, 0.8, 1.0};
  std::uniform_int_distribution<std::size_t> pick(0, gammas.size() - 1);
  std::uniform_real_distribution<double> field(0.0, 2.0), time(0.0, 10.0);
  std::vector<GridPoint> points;
  for (int i = 0; i < options.samples; ++i) {
    const double g = gammas[pick(rng)];
    const double a = field(rng);
    points.push_back({g, a, time(rng)});
  }

  std::vector<json> checks;
  for (DeficitVariant variant : {DeficitVariant::LocalSum, DeficitVariant::GlobalDephased}) {
    const auto gaps = parallel_map(points.size(), options.jobs, [&](std::size_t i) {
      const auto& p = points[i];
      const auto rho = assemble_state(correlators(p.t_tilde, ModelParams(p.gamma, p.a_tilde), options.quad));
      const double refined = work_deficit(rho, variant, options.opt).value;
      return refined - oracle::qwd_grid_oracle(rho, variant).value;
    });
    const double hi = *std::max_element(gaps.begin(), gaps.end());
    const double lo = *std::min_element(gaps.begin(), gaps.end());
    checks.push_back(check(std::string("optimizer_vs_grid_") + std::string(to_string(variant)),
                           hi <= 1e-9 && lo >= -1e-4,
                           {{"samples", points.size()},
                            {"max_refined_minus_oracle", hi},
                            {"min_refined_minus_oracle", lo}}));
  }
  return suite("optimizer", std::move(checks));
}

}  // namespace xyq::cli
