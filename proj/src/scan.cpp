#include "xyquench/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "xyquench/errors.hpp"
#include "xyquench/kernels.hpp"
#include "xyquench/parallel.hpp"
#include "xyquench/state.hpp"

namespace xyq {

namespace {

std::string point_context(double t, double gamma, double a) {
  std::ostringstream os;
  os.precision(17);
  os << "pipeline at t_tilde=" << t << ", gamma=" << gamma << ", a_tilde=" << a;
  return os.str();
}

std::vector<PointResult> evaluate_many(double t, double gamma, std::span<const double> fields,
                                       int jobs, const PointEvaluator& evaluator) {
  return parallel_map(fields.size(), jobs, [&](std::size_t i) {
    try {
      return evaluator(t, gamma, fields[i]);
    } catch (const Error& e) {
      rethrow_with_context(e, point_context(t, gamma, fields[i]));
    }
  });
}

void require_strictly_increasing(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw ParameterError(std::string(what) + " is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ParameterError(std::string(what) + " must be strictly increasing");
    }
  }
}

CorrelationCurve make_curve(double t, double gamma, std::span<const double> fields,
                            const std::vector<PointResult>& points) {
  CorrelationCurve curve;
  curve.gamma = gamma;
  curve.t_tilde = t;
  curve.samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    curve.samples.push_back({fields[i], points[i].ln, points[i].qwd, points[i].concurrence});
  }
  return curve;
}

// Field value where ln crosses eps between samples lo and hi.
double crossing(const CurveSample& lo, const CurveSample& hi, double eps) {
  const double dl = hi.ln - lo.ln;
  if (dl == 0.0) return 0.5 * (lo.a_tilde + hi.a_tilde);
  const double w = std::clamp((eps - lo.ln) / dl, 0.0, 1.0);
  return lo.a_tilde + w * (hi.a_tilde - lo.a_tilde);
}

struct RefinedGrid {
  std::vector<double> fields;
  std::vector<PointResult> points;
  AreaResult area;
};

double area_of(const RefinedGrid& g) {
  std::vector<double> q(g.points.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = g.points[i].qwd;
  return trapezoid_area(g.fields, q);
}

// Doubles the grid until the trapezoid area settles.
void refine_area(double t, double gamma, RefinedGrid& grid, const AreaSpec& spec, int jobs,
                 const PointEvaluator& evaluator) {
  double current = area_of(grid);
  grid.area = {current, static_cast<int>(grid.fields.size()), 0.0, false};
  while (static_cast<int>(2 * grid.fields.size() - 1) <= spec.max_resolution) {
    std::vector<double> mids(grid.fields.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.fields.size(); ++i) {
      mids[i] = 0.5 * (grid.fields[i] + grid.fields[i + 1]);
    }
    auto mid_points = evaluate_many(t, gamma, mids, jobs, evaluator);

    RefinedGrid next;
    next.fields.reserve(grid.fields.size() + mids.size());
    next.points.reserve(grid.fields.size() + mids.size());
    for (std::size_t i = 0; i < grid.fields.size(); ++i) {
      next.fields.push_back(grid.fields[i]);
      next.points.push_back(grid.points[i]);
      if (i < mids.size()) {
        next.fields.push_back(mids[i]);
        next.points.push_back(mid_points[i]);
      }
    }
    const double refined = area_of(next);
    const double change = std::abs(refined - current);
    grid.fields = std::move(next.fields);
    grid.points = std::move(next.points);
    grid.area = {refined, static_cast<int>(grid.fields.size()), change, change < spec.tolerance};
    current = refined;
    if (grid.area.converged) return;
  }
}

void check_area_spec(const AreaSpec& spec) {
  if (spec.resolution < 101) throw ParameterError("area resolution must be >= 101 points");
  if (!(spec.tolerance > 0.0)) throw ParameterError("area tolerance must be > 0");
  if (!(spec.a_max > 0.0)) throw ParameterError("area a_max must be > 0");
}

}  // namespace

PointResult evaluate_point(double t_tilde, const ModelParams& params, const PipelineConfig& config) {
  PointResult r;
  r.correlators = correlators(t_tilde, params, config.quad);
  const TwoQubitState rho = assemble_state(r.correlators);
  r.negativity = negativity(rho);
  r.ln = std::log2(2.0 * r.negativity + 1.0);
  r.concurrence = concurrence(rho);
  r.qwd = work_deficit(rho, config.variant, config.opt).value;
  return r;
}

PointEvaluator direct_evaluator(const PipelineConfig& config) {
  return [config](double t, double gamma, double a) {
    return evaluate_point(t, ModelParams(gamma, a), config);
  };
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2) throw ParameterError("uniform grid needs at least 2 points");
  if (!(hi > lo)) throw ParameterError("uniform grid needs hi > lo");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + h * i;
  g.back() = hi;
  return g;
}

std::vector<double> stepped_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("grid step must be > 0");
  if (!(hi >= lo)) throw ParameterError("grid upper bound must be >= lower bound");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  return g;
}

CorrelationCurve sweep_field(double t_tilde, double gamma, std::span<const double> grid,
                             const PipelineConfig& config, const PointEvaluator& evaluator) {
  require_valid_time(t_tilde);
  (void)ModelParams(gamma, 0.0);
  require_strictly_increasing(grid, "field grid");
  if (grid.front() < 0.0) throw ParameterError("field grid must start at a_tilde >= 0");
  if (grid.back() < 2.0 - 1e-12) throw ParameterError("field grid must reach a_tilde >= 2");
  const PointEvaluator eval = evaluator ? evaluator : direct_evaluator(config);
  const auto points = evaluate_many(t_tilde, gamma, grid, config.jobs, eval);
  return make_curve(t_tilde, gamma, grid, points);
}

std::string_view to_string(RevivalClass c) {
  switch (c) {
    case RevivalClass::NoDeath: return "no-death";
    case RevivalClass::DeathNoRevival: return "death-no-revival";
    case RevivalClass::DeathWithRevival: return "death-with-revival";
  }
  return "unknown";
}

RevivalReport detect_revival(const CorrelationCurve& curve, const DetectionSpec& spec) {
  const auto& s = curve.samples;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].a_tilde - s[i - 1].a_tilde > spec.max_spacing * (1.0 + 1e-9)) {
      throw InsufficientResolution("field spacing " +
                                   std::to_string(s[i].a_tilde - s[i - 1].a_tilde) +
                                   " exceeds the maximum " + std::to_string(spec.max_spacing));
    }
  }
  auto above = [&](std::size_t i) { return s[i].ln > spec.eps_ent; };

  RevivalReport report;
  std::size_t death = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (above(i - 1) && !above(i) && !above(i + 1)) {
      death = i;
      break;
    }
  }
  if (death == 0) return report;
  report.death_field = crossing(s[death - 1], s[death], spec.eps_ent);
  report.classification = RevivalClass::DeathNoRevival;

  for (std::size_t j = death + 1; j + 1 < s.size(); ++j) {
    if (!above(j - 1) && above(j) && above(j + 1)) {
      report.revival_field = crossing(s[j - 1], s[j], spec.eps_ent);
      report.classification = RevivalClass::DeathWithRevival;
      break;
    }
  }
  return report;
}

double trapezoid_area(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("trapezoid: size mismatch");
  double area = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) area += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return area;
}

AreaResult area_qwd(double t_tilde, double gamma, const PipelineConfig& config,
                    const AreaSpec& spec, const PointEvaluator& evaluator) {
  check_area_spec(spec);
  require_valid_time(t_tilde);
  (void)ModelParams(gamma, 0.0);
  const PointEvaluator eval = evaluator ? evaluator : direct_evaluator(config);
  RefinedGrid grid;
  grid.fields = uniform_grid(0.0, spec.a_max, spec.resolution);
  grid.points = evaluate_many(t_tilde, gamma, grid.fields, config.jobs, eval);
  refine_area(t_tilde, gamma, grid, spec, config.jobs, eval);
  return grid.area;
}

std::vector<TimeSlice> scan_times(double gamma, std::span<const double> time_grid,
                                  const ScanSpec& spec, const PointEvaluator& evaluator) {
  check_area_spec(spec.area);
  require_strictly_increasing(time_grid, "time grid");
  (void)ModelParams(gamma, 0.0);
  const PointEvaluator eval = evaluator ? evaluator : direct_evaluator(spec.pipeline);
  const int jobs = spec.pipeline.jobs;

  std::vector<TimeSlice> slices;
  slices.reserve(time_grid.size());
  for (const double t : time_grid) {
    require_valid_time(t);
    RefinedGrid grid;
    grid.fields = uniform_grid(0.0, spec.area.a_max, spec.area.resolution);
    grid.points = evaluate_many(t, gamma, grid.fields, jobs, eval);

    TimeSlice slice;
    slice.t_tilde = t;
    slice.curve = make_curve(t, gamma, grid.fields, grid.points);
    slice.report = detect_revival(slice.curve, spec.detection);

    refine_area(t, gamma, grid, spec.area, jobs, eval);
    slice.area = grid.area;
    slice.refined_class =
        detect_revival(make_curve(t, gamma, grid.fields, grid.points), spec.detection)
            .classification;
    slices.push_back(std::move(slice));
  }
  return slices;
}

Calibration calibrate_a_min(std::span<const TimeAreaPoint> points) {
  std::optional<Calibration> best;
  for (const auto& p : points) {
    if (!p.revival_detected) continue;
    if (!best || p.area < best->a_min) best = Calibration{p.area, p.t_tilde};
  }
  if (!best) throw NoRevivalInGrid("no time in the grid shows entanglement revival");
  return *best;
}

double scale_factor(double area, double a_min, double m) {
  if (!(m > 0.0)) throw NonpositiveScale("scaling parameter M must be > 0, got " + std::to_string(m));
  return (area - a_min) / m;
}

AreaSeries build_area_series(double gamma, std::span<const AreaEntry> rows,
                             const ScalePolicy& policy) {
  std::vector<TimeAreaPoint> points;
  points.reserve(rows.size());
  for (const auto& r : rows) {
    points.push_back({r.t_tilde, r.area, r.classification == RevivalClass::DeathWithRevival});
  }
  const Calibration cal = calibrate_a_min(points);

  AreaSeries series;
  series.gamma = gamma;
  series.a_min = cal.a_min;
  series.witness_t = cal.witness_t;
  series.m = policy.m.value_or(cal.a_min);
  for (const auto& r : rows) {
    AreaEntry e = r;
    e.revival_detected = r.classification == RevivalClass::DeathWithRevival;
    e.scale_factor = scale_factor(r.area, series.a_min, series.m);
    e.revival_predicted = predict_revival(e.scale_factor);
    series.entries.push_back(e);
  }
  return series;
}

AreaSeries build_area_series(double gamma, std::span<const TimeSlice> slices,
                             const ScalePolicy& policy) {
  std::vector<AreaEntry> rows;
  rows.reserve(slices.size());
  for (const auto& s : slices) {
    AreaEntry e;
    e.t_tilde = s.t_tilde;
    e.area = s.area.area;
    e.classification = s.report.classification;
    rows.push_back(e);
  }
  return build_area_series(gamma, std::span<const AreaEntry>(rows), policy);
}

AgreementReport verify_threshold(const AreaSeries& series) {
  const auto& e = series.entries;
  AgreementReport report;
  report.n_times = static_cast<int>(e.size());
  auto at_boundary = [&](std::size_t i) {
    return (i > 0 && e[i - 1].revival_detected != e[i].revival_detected) ||
           (i + 1 < e.size() && e[i + 1].revival_detected != e[i].revival_detected);
  };
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].classification == RevivalClass::NoDeath) {
      ++report.n_no_death;
      if (e[i].revival_predicted) ++report.n_no_death_predicted;
      continue;
    }
    ++report.n_compared;
    if (e[i].revival_predicted == e[i].revival_detected) {
      ++report.n_agree;
    } else {
      report.disagreements.push_back(e[i].t_tilde);
      if (!at_boundary(i)) report.interior_disagreements.push_back(e[i].t_tilde);
    }
    if (e[i].classification == RevivalClass::DeathNoRevival && e[i].area >= series.a_min) {
      report.monotone_violations.push_back(e[i].t_tilde);
      if (!at_boundary(i)) report.interior_monotone_violations.push_back(e[i].t_tilde);
    }
  }
  report.agreement =
      report.n_compared > 0 ? static_cast<double>(report.n_agree) / report.n_compared : 1.0;
  return report;
}

ThresholdAnalysis analyze_threshold(double gamma, std::span<const double> time_grid,
                                    const ScanSpec& spec, const ScalePolicy& policy,
                                    const PointEvaluator& evaluator) {
  ThresholdAnalysis out;
  out.slices = scan_times(gamma, time_grid, spec, evaluator);
  out.series = build_area_series(gamma, std::span<const TimeSlice>(out.slices), policy);
  out.agreement = verify_threshold(out.series);
  return out;
}

}  // namespace xyq
