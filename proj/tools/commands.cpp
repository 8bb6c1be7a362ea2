#include "commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "cache.hpp"
#include "suites.hpp"
#include "xyquench/parallel.hpp"

namespace xyq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_value(double v) { return fmt::format("{:.9e}", v); }

std::string manifest_path_for(const std::string& output) {
  fs::path p(output);
  return (p.parent_path() / (p.stem().string() + ".manifest.json")).string();
}

std::string curve_csv(const CorrelationCurve& curve) {
  std::string csv = "a_tilde,ln_ebits,qwd_qubits,concurrence\n";
  for (const auto& s : curve.samples) {
    csv += fmt::format("{},{},{},{}\n", format_value(s.a_tilde), format_value(s.ln),
                       format_value(s.qwd), format_value(s.concurrence));
  }
  return csv;
}

std::string area_csv(const AreaSeries& series) {
  std::string csv = "t_tilde,area,scale_factor,revival_detected,revival_predicted\n";
  for (const auto& e : series.entries) {
    csv += fmt::format("{},{},{},{},{}\n", format_value(e.t_tilde), format_value(e.area),
                       format_value(e.scale_factor), e.revival_detected ? 1 : 0,
                       e.revival_predicted ? 1 : 0);
  }
  return csv;
}

json options_to_json(const Options& o) {
  json j = {
      {"gamma", o.gamma},
      {"t", o.t},
      {"t_grid", {{"min", o.t_min}, {"max", o.t_max}, {"step", o.t_step}}},
      {"a_grid", {{"min", o.a_min}, {"max", o.a_max}, {"step", o.a_step}}},
      {"variant", o.variant},
      {"eps_ent", o.eps_ent},
      {"max_spacing", o.max_spacing},
      {"quad",
       {{"abs_tol", o.quad.abs_tol},
        {"rel_tol", o.quad.rel_tol},
        {"max_subdivisions", o.quad.max_subdivisions}}},
      {"opt",
       {{"n_theta", o.opt.n_theta},
        {"n_phi", o.opt.n_phi},
        {"x_tol", o.opt.x_tol},
        {"f_tol", o.opt.f_tol},
        {"max_iterations", o.opt.max_iterations}}},
      {"m", o.m},
      {"area_resolution", o.area_resolution},
      {"area_tolerance", o.area_tolerance},
      {"area_min", o.area_min ? json(*o.area_min) : json(nullptr)},
      {"suite", o.suite},
      {"samples", o.samples},
      {"jobs", o.jobs},
      {"cache_dir", o.cache_dir},
      {"no_cache", o.no_cache},
      {"out", o.out},
  };
  return j;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter:
    case ErrorKind::NonpositiveScale:
    case ErrorKind::InsufficientResolution:
      return kParameterError;
    default:
      return kNumericalFailure;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

PipelineConfig pipeline_of(const Options& o) {
  o.quad.validate();
  o.opt.validate();
  if (o.jobs < 1) throw ParameterError("--jobs must be >= 1");
  (void)ModelParams(o.gamma, 0.0);
  PipelineConfig cfg;
  cfg.quad = o.quad;
  cfg.opt = o.opt;
  cfg.variant = parse_deficit_variant(o.variant);
  cfg.jobs = o.jobs;
  return cfg;
}

std::optional<fs::path> resolve_cache_dir(const Options& o) {
  if (o.no_cache) return std::nullopt;
  if (!o.cache_dir.empty()) return fs::path(o.cache_dir);
  if (const char* env = std::getenv("XYQ_CACHE_DIR"); env && *env) return fs::path(env);
  if (const char* home = std::getenv("HOME"); home && *home) {
    return fs::path(home) / ".cache" / "xyquench";
  }
  return std::nullopt;
}

// Evaluator plus the cache it may be backed by.
struct Evaluation {
  std::unique_ptr<ResultCache> cache;
  PointEvaluator eval;

  Evaluation(const Options& o, const PipelineConfig& cfg) {
    if (auto dir = resolve_cache_dir(o)) {
      cache = std::make_unique<ResultCache>(*dir);
      eval = caching_evaluator(cfg, *cache);
    } else {
      eval = direct_evaluator(cfg);
    }
  }

  json info() const {
    if (!cache) return {{"enabled", false}};
    return {{"enabled", true},
            {"dir", cache->dir().string()},
            {"hits", cache->hits()},
            {"misses", cache->misses()},
            {"evictions", cache->evictions()}};
  }
};

// Parameters that determine the output; scheduling and storage settings are excluded.
json hashed_inputs(const std::string& command, const Options& o) {
  json p = options_to_json(o);
  for (const char* k : {"jobs", "cache_dir", "no_cache", "out"}) p.erase(k);
  return {{"command", command}, {"version", XYQ_VERSION}, {"parameters", p}};
}

void write_text(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::trunc | std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
  if (!out) throw ParameterError("write failed for " + path);
}

void write_manifest(const std::string& command, const Options& o, const std::vector<std::string>& outputs,
                    Clock::time_point start, const Evaluation* evaluation, json extra,
                    const std::string& path) {
  json m = {
      {"command", command},
      {"version", XYQ_VERSION},
      {"parameters", options_to_json(o)},
      {"input_hash", sha256_hex(hashed_inputs(command, o).dump())},
      {"outputs", outputs},
      {"wall_clock_seconds", std::chrono::duration<double>(Clock::now() - start).count()},
  };
  if (evaluation) m["cache"] = evaluation->info();
  for (auto& [k, v] : extra.items()) m[k] = v;
  write_text(path, m.dump(2) + "\n");
}

std::string output_or(const Options& o, const char* fallback) {
  return o.out.empty() ? std::string(fallback) : o.out;
}

json report_to_json(const RevivalReport& r) {
  return {{"classification", std::string(to_string(r.classification))},
          {"death_field", r.death_field ? json(*r.death_field) : json(nullptr)},
          {"revival_field", r.revival_field ? json(*r.revival_field) : json(nullptr)}};
}

ScalePolicy scale_policy_of(const Options& o) {
  if (o.m == "a_min") return {};
  try {
    std::size_t used = 0;
    const double m = std::stod(o.m, &used);
    if (used != o.m.size()) throw std::invalid_argument(o.m);
    if (!(m > 0.0)) throw NonpositiveScale("scaling parameter M must be > 0, got " + o.m);
    return {m};
  } catch (const std::logic_error&) {
    throw ParameterError("--m must be 'a_min' or a positive number, got '" + o.m + "'");
  }
}

ScanSpec scan_spec_of(const Options& o, const PipelineConfig& cfg) {
  ScanSpec spec;
  spec.pipeline = cfg;
  spec.detection = {o.eps_ent, o.max_spacing};
  spec.area.resolution = o.area_resolution;
  spec.area.tolerance = o.area_tolerance;
  spec.area.a_max = o.a_max;
  return spec;
}

json agreement_to_json(const ThresholdAnalysis& a, const Options& o) {
  const auto& r = a.agreement;
  json times = json::array();
  for (const auto& s : a.slices) {
    json t = report_to_json(s.report);
    t["t_tilde"] = s.t_tilde;
    t["area"] = s.area.area;
    t["area_resolution"] = s.area.resolution;
    t["area_converged"] = s.area.converged;
    t["refined_classification"] = std::string(to_string(s.refined_class));
    times.push_back(t);
  }
  return {{"gamma", o.gamma},
          {"variant", o.variant},
          {"a_min", a.series.a_min},
          {"witness_t", a.series.witness_t},
          {"m", a.series.m},
          {"n_times", r.n_times},
          {"n_compared", r.n_compared},
          {"n_agree", r.n_agree},
          {"agreement", r.agreement},
          {"n_no_death", r.n_no_death},
          {"n_no_death_predicted", r.n_no_death_predicted},
          {"disagreements", r.disagreements},
          {"interior_disagreements", r.interior_disagreements},
          {"monotone_violations", r.monotone_violations},
          {"interior_monotone_violations", r.interior_monotone_violations},
          {"times", times}};
}

}  // namespace

int cmd_curve(const Options& o, std::ostream& log) {
  const auto start = Clock::now();
  const PipelineConfig cfg = pipeline_of(o);
  Evaluation ev(o, cfg);
  const auto grid = stepped_grid(o.a_min, o.a_max, o.a_step);
  const auto curve = sweep_field(o.t, o.gamma, grid, cfg, ev.eval);

  const std::string out = output_or(o, "curve.csv");
  write_text(out, curve_csv(curve));

  json revival;
  try {
    revival = report_to_json(detect_revival(curve, {o.eps_ent, o.max_spacing}));
  } catch (const InsufficientResolution& e) {
    revival = {{"skipped", e.what()}};
  }
  write_manifest("curve", o, {out}, start, &ev, {{"revival", revival}}, manifest_path_for(out));
  fmt::print(log, "curve: {} rows -> {}\n", curve.samples.size(), out);
  return kSuccess;
}

int cmd_heatmap(const Options& o, std::ostream& log) {
  const auto start = Clock::now();
  const PipelineConfig cfg = pipeline_of(o);
  Evaluation ev(o, cfg);
  const auto ts = stepped_grid(o.t_min, o.t_max, o.t_step);
  const auto as = stepped_grid(o.a_min, o.a_max, o.a_step);
  for (double t : ts) require_valid_time(t);
  if (as.front() < 0.0) throw ParameterError("field grid must start at a_tilde >= 0");

  const auto points = parallel_map(ts.size() * as.size(), o.jobs, [&](std::size_t k) {
    const double t = ts[k / as.size()];
    const double a = as[k % as.size()];
    try {
      return ev.eval(t, o.gamma, a);
    } catch (const Error& e) {
      rethrow_with_context(e, fmt::format("heatmap at t_tilde={}, a_tilde={}", t, a));
    }
  });

  std::string csv = "t_tilde,a_tilde,ln_ebits,qwd_qubits\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    csv += fmt::format("{},{},{},{}\n", format_value(ts[k / as.size()]),
                       format_value(as[k % as.size()]), format_value(points[k].ln),
                       format_value(points[k].qwd));
  }
  const std::string out = output_or(o, "heatmap.csv");
  write_text(out, csv);
  write_manifest("heatmap", o, {out}, start, &ev,
                 {{"shape", {{"t_points", ts.size()}, {"a_points", as.size()}}}},
                 manifest_path_for(out));
  fmt::print(log, "heatmap: {}x{} rows -> {}\n", ts.size(), as.size(), out);
  return kSuccess;
}

int cmd_area(const Options& o, std::ostream& log) {
  const auto start = Clock::now();
  const PipelineConfig cfg = pipeline_of(o);
  const ScalePolicy policy = scale_policy_of(o);
  Evaluation ev(o, cfg);
  const auto ts = stepped_grid(o.t_min, o.t_max, o.t_step);
  const std::string out = output_or(o, "area.csv");
  const fs::path outp(out);
  const std::string agreement_path =
      (outp.parent_path() / (outp.stem().string() + ".agreement.json")).string();

  ThresholdAnalysis analysis;
  try {
    analysis = analyze_threshold(o.gamma, ts, scan_spec_of(o, cfg), policy, ev.eval);
  } catch (const NoRevivalInGrid& e) {
    write_text(agreement_path, json{{"gamma", o.gamma}, {"variant", o.variant},
                                    {"error", "NoRevivalInGrid"}, {"message", e.what()}}
                                       .dump(2) + "\n");
    throw;
  }

  write_text(out, area_csv(analysis.series));
  write_text(agreement_path, agreement_to_json(analysis, o).dump(2) + "\n");
  write_manifest("area", o, {out, agreement_path}, start, &ev, json::object(),
                 manifest_path_for(out));
  const auto& r = analysis.agreement;
  fmt::print(log, "area: a_min={:.6g} (t={:g}), agreement {}/{} = {:.3f}, no-death {} -> {}\n",
             analysis.series.a_min, analysis.series.witness_t, r.n_agree, r.n_compared,
             r.agreement, r.n_no_death, out);
  return kSuccess;
}

int cmd_predict(const Options& o, std::ostream& log) {
  const auto start = Clock::now();
  const PipelineConfig cfg = pipeline_of(o);
  const ScalePolicy policy = scale_policy_of(o);
  Evaluation ev(o, cfg);
  const ScanSpec spec = scan_spec_of(o, cfg);

  json calibration;
  double a_min = 0.0;
  if (o.area_min) {
    if (!(*o.area_min > 0.0)) throw NonpositiveScale("--area-min must be > 0");
    a_min = *o.area_min;
    calibration = {{"source", "given"}, {"a_min", a_min}};
  } else {
    const auto ts = stepped_grid(o.t_min, o.t_max, o.t_step);
    const auto analysis = analyze_threshold(o.gamma, ts, spec, policy, ev.eval);
    a_min = analysis.series.a_min;
    calibration = {{"source", "time_grid"}, {"a_min", a_min}, {"witness_t", analysis.series.witness_t}};
  }

  const std::vector<double> t_one{o.t};
  const auto slice = scan_times(o.gamma, t_one, spec, ev.eval).front();
  const double m = policy.m.value_or(a_min);
  const double sf = scale_factor(slice.area.area, a_min, m);
  json result = {{"gamma", o.gamma},
                 {"t_tilde", o.t},
                 {"variant", o.variant},
                 {"area", slice.area.area},
                 {"calibration", calibration},
                 {"m", m},
                 {"scale_factor", sf},
                 {"revival_predicted", predict_revival(sf)},
                 {"detected", report_to_json(slice.report)}};

  const std::string text = result.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
    write_manifest("predict", o, {o.out}, start, &ev, json::object(), manifest_path_for(o.out));
  }
  fmt::print(log, "predict: S={:.6g} -> {}\n", sf, predict_revival(sf) ? "revival" : "no revival");
  return kSuccess;
}

int cmd_validate(const Options& o, std::ostream& log) {
  const auto start = Clock::now();
  SuiteOptions so;
  so.quad = o.quad;
  so.opt = o.opt;
  so.jobs = o.jobs;
  so.samples = o.samples;
  o.quad.validate();
  o.opt.validate();
  if (o.samples < 1) throw ParameterError("--samples must be >= 1");

  std::vector<std::string> names;
  if (o.suite == "all") {
    names = suite_names();
  } else {
    names.push_back(o.suite);
  }
  json suites = json::array();
  bool pass = true;
  for (const auto& name : names) {
    json r = run_suite(name, so);
    pass = pass && r.at("pass").get<bool>();
    fmt::print(log, "validate {}: {}\n", name, r.at("pass").get<bool>() ? "pass" : "FAIL");
    suites.push_back(std::move(r));
  }
  const json report = {{"pass", pass}, {"suites", suites}};
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
    write_manifest("validate", o, {o.out}, start, nullptr, json::object(), manifest_path_for(o.out));
  }
  return pass ? kSuccess : kValidationFailure;
}

}  // namespace xyq::cli
