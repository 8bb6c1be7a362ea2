// xyq: curves, heatmaps, threshold analyses and validation suites for the
// quenched XY chain.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

#include "commands.hpp"

namespace {

using xyq::cli::Options;

void add_options(CLI::App& app, Options& o, std::optional<double>& area_min) {
  app.add_option("--gamma", o.gamma, "Anisotropy (nonzero)")->capture_default_str();
  app.add_option("--t", o.t, "Evolution time t~ (curve, predict)")->capture_default_str();
  app.add_option("--t-min", o.t_min, "Time grid start")->capture_default_str();
  app.add_option("--t-max", o.t_max, "Time grid end")->capture_default_str();
  app.add_option("--t-step", o.t_step, "Time grid step")->capture_default_str();
  app.add_option("--a-min", o.a_min, "Field grid start")->capture_default_str();
  app.add_option("--a-max", o.a_max, "Field grid end")->capture_default_str();
  app.add_option("--a-step", o.a_step, "Field grid step")->capture_default_str();
  app.add_option("--variant", o.variant, "Work-deficit variant")
      ->check(CLI::IsMember({"local-sum", "global-dephased"}))
      ->capture_default_str();
  app.add_option("--eps-ent", o.eps_ent, "Entanglement-death threshold in ebits")->capture_default_str();
  app.add_option("--max-spacing", o.max_spacing, "Largest field step accepted by revival detection")
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  app.add_option("--cache-dir", o.cache_dir, "Result cache directory (default: $XYQ_CACHE_DIR or ~/.cache/xyquench)");
  app.add_flag("--no-cache", o.no_cache, "Disable the result cache");
  app.add_option("--out", o.out, "Output file");

  app.add_option("--abs-tol", o.quad.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
  app.add_option("--rel-tol", o.quad.rel_tol, "Quadrature relative tolerance")->capture_default_str();
  app.add_option("--max-subdivisions", o.quad.max_subdivisions)->capture_default_str();
  app.add_option("--n-theta", o.opt.n_theta, "Optimizer grid points in theta")->capture_default_str();
  app.add_option("--n-phi", o.opt.n_phi, "Optimizer grid points in phi")->capture_default_str();
  app.add_option("--x-tol", o.opt.x_tol)->capture_default_str();
  app.add_option("--f-tol", o.opt.f_tol)->capture_default_str();
  app.add_option("--max-iterations", o.opt.max_iterations)->capture_default_str();

  app.add_option("--m", o.m, "Scale M: 'a_min' or a positive number")->capture_default_str();
  app.add_option("--resolution", o.area_resolution, "Initial field points for areas")->capture_default_str();
  app.add_option("--area-tol", o.area_tolerance, "Area refinement tolerance")->capture_default_str();
  app.add_option("--area-min", area_min, "Calibrated minimum area (predict; skips calibration)");

  app.add_option("--suite", o.suite, "trivial, state-psd, ring, ed, optimizer or all")->capture_default_str();
  app.add_option("--samples", o.samples, "States for the optimizer suite")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and work deficit after a field quench of the XY chain", "xyq"};
  app.set_version_flag("--version", XYQ_VERSION);
  app.set_config("--config", "", "TOML/INI file of option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::optional<double> area_min;
  add_options(app, o, area_min);

  auto* curve = app.add_subcommand("curve", "Measures versus initial field at fixed t~");
  auto* heatmap = app.add_subcommand("heatmap", "Measures on a t~ x a~ grid");
  auto* area = app.add_subcommand("area", "Cumulative work-deficit areas, scale factors and revival agreement");
  auto* predict = app.add_subcommand("predict", "Scale factor and revival prediction at one t~");
  auto* validate = app.add_subcommand("validate", "Oracle and invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return xyq::cli::kParameterError;
  }
  o.area_min = area_min;

  try {
    if (*curve) return xyq::cli::cmd_curve(o, std::cerr);
    if (*heatmap) return xyq::cli::cmd_heatmap(o, std::cerr);
    if (*area) return xyq::cli::cmd_area(o, std::cerr);
    if (*predict) return xyq::cli::cmd_predict(o, std::cerr);
    if (*validate) return xyq::cli::cmd_validate(o, std::cerr);
  } catch (const xyq::Error& e) {
    std::cerr << fmt::format("xyq: {}: {}\n", xyq::to_string(e.kind()), e.what());
    return xyq::cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "xyq: " << e.what() << '\n';
    return xyq::cli::kNumericalFailure;
  }
  return xyq::cli::kParameterError;
}
