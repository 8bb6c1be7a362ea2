#include <doctest.h>

#include <cmath>
#include <string>

#include "xyquench/errors.hpp"
#include "xyquench/kernels.hpp"
#include "xyquench/oracle.hpp"
#include "xyquench/scan.hpp"
#include "xyquench/state.hpp"

using namespace xyq;

namespace {

CorrelationCurve curve_of(const std::vector<double>& ln, double step = 0.01) {
  CorrelationCurve c;
  for (std::size_t i = 0; i < ln.size(); ++i) c.samples.push_back({step * i, ln[i], 0.0, 0.0});
  return c;
}

PointEvaluator constant_qwd(double value) {
  return [value](double, double, double) {
    PointResult r;
    r.qwd = value;
    r.ln = 0.3;
    return r;
  };
}

AreaEntry row(double t, double area, RevivalClass c) {
  AreaEntry e;
  e.t_tilde = t;
  e.area = area;
  e.classification = c;
  return e;
}

constexpr auto DWR = RevivalClass::DeathWithRevival;
constexpr auto DNR = RevivalClass::DeathNoRevival;

}  // namespace

TEST_CASE("detect_revival on constructed curves") {
  CHECK(detect_revival(curve_of(std::vector<double>(201, 0.2))).classification == RevivalClass::NoDeath);

  std::vector<double> ln(201, 0.0);
  for (int i = 0; i < 80; ++i) ln[i] = 0.4 - 0.005 * i;  // reaches 0.005 at i = 79
  const auto death = detect_revival(curve_of(ln));
  CHECK(death.classification == DNR);
  REQUIRE(death.death_field);
  CHECK_FALSE(death.revival_field);
  CHECK(*death.death_field == doctest::Approx(0.79 + 0.01 * (0.005 - 1e-4) / 0.005));

  for (int i = 150; i < 201; ++i) ln[i] = 0.002 * (i - 149);
  const auto revival = detect_revival(curve_of(ln));
  CHECK(revival.classification == DWR);
  REQUIRE(revival.revival_field);
  CHECK(*revival.revival_field > *revival.death_field);
  CHECK(*revival.revival_field == doctest::Approx(1.49 + 0.01 * (1e-4 / 0.002)));
}

TEST_CASE("single-sample dips and flickers are ignored") {
  std::vector<double> ln(201, 0.3);
  ln[100] = 0.0;  // one-point zero
  CHECK(detect_revival(curve_of(ln)).classification == RevivalClass::NoDeath);

  for (int i = 100; i < 201; ++i) ln[i] = 0.0;
  ln[150] = 0.1;  // one-point flicker after death
  CHECK(detect_revival(curve_of(ln)).classification == DNR);
}

TEST_CASE("detect_revival demands fine enough sampling") {
  CHECK_THROWS_AS(detect_revival(curve_of(std::vector<double>(41, 0.2), 0.05)), InsufficientResolution);
  CHECK_NOTHROW(detect_revival(curve_of(std::vector<double>(41, 0.2), 0.05), {1e-4, 0.05}));
}

TEST_CASE("trapezoid areas") {
  const auto x = uniform_grid(0.0, 2.0, 201);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::exp(-x[i]) * (1.0 + std::sin(3 * x[i]));
  const std::span<const double> xs(x), ys(y);
  const double whole = trapezoid_area(xs, ys);
  const double left = trapezoid_area(xs.first(101), ys.first(101));
  const double right = trapezoid_area(xs.subspan(100), ys.subspan(100));
  CHECK(std::abs(whole - (left + right)) < 1e-10);
  CHECK_THROWS_AS(trapezoid_area(xs, ys.first(10)), ParameterError);
}

TEST_CASE("area_qwd of synthetic curves") {
  PipelineConfig cfg;
  const auto zero = area_qwd(1.0, 0.5, cfg, {}, constant_qwd(0.0));
  CHECK(zero.area == 0.0);
  CHECK(zero.converged);
  const auto c = area_qwd(1.0, 0.5, cfg, {}, constant_qwd(0.37));
  CHECK(c.area == doctest::Approx(0.74).epsilon(1e-14));
  CHECK_THROWS_AS(area_qwd(1.0, 0.5, cfg, {100}, constant_qwd(0.0)), ParameterError);
}

TEST_CASE("area_qwd refines until the doubling change is below tolerance") {
  PipelineConfig cfg;
  auto bumpy = [](double, double, double a) {
    PointResult r;
    r.qwd = std::sqrt(std::abs(a - 1.0));
    return r;
  };
  const auto r = area_qwd(0.0, 0.5, cfg, {101, 1e-4, 3201, 2.0}, bumpy);
  CHECK(r.converged);
  CHECK(r.resolution > 101);
  CHECK(r.refinement_change < 1e-4);
  CHECK(std::abs(r.area - 4.0 / 3.0) < 1e-3);
}

TEST_CASE("calibration, scale factor and prediction") {
  const std::vector<TimeAreaPoint> pts{{0.0, 3.0, true}, {0.25, 5.0, true}, {0.5, 1.0, false}};
  const auto cal = calibrate_a_min(pts);
  CHECK(cal.a_min == 3.0);
  CHECK(cal.witness_t == 0.0);
  CHECK_THROWS_AS(calibrate_a_min(std::vector<TimeAreaPoint>{}), NoRevivalInGrid);
  CHECK_THROWS_AS(calibrate_a_min(std::vector<TimeAreaPoint>{{0.0, 2.0, false}}), NoRevivalInGrid);

  CHECK(scale_factor(3.0, 3.0, 3.0) == 0.0);
  CHECK(scale_factor(6.0, 3.0, 3.0) == 1.0);
  CHECK(scale_factor(1.5, 3.0, 3.0) == -0.5);
  CHECK_THROWS_AS(scale_factor(1.0, 1.0, 0.0), NonpositiveScale);
  CHECK_THROWS_AS(scale_factor(1.0, 1.0, -2.0), NonpositiveScale);

  CHECK(predict_revival(0.0));
  CHECK_FALSE(predict_revival(-1e-3));
  CHECK(predict_revival(2.7));
}

TEST_CASE("threshold rule on data that obeys it exactly") {
  const std::vector<AreaEntry> rows{row(0.0, 1.0, DNR), row(0.25, 4.0, DWR), row(0.5, 3.0, DWR),
                                    row(0.75, 2.0, DNR), row(1.0, 5.0, DWR)};
  const auto series = build_area_series(0.5, std::span<const AreaEntry>(rows));
  CHECK(series.a_min == 3.0);
  CHECK(series.m == 3.0);
  CHECK(series.witness_t == 0.5);
  const auto r = verify_threshold(series);
  CHECK(r.agreement == 1.0);
  CHECK(r.n_compared == 5);
  CHECK(r.disagreements.empty());
  CHECK(r.monotone_violations.empty());

  // M only rescales.
  const auto rescaled = build_area_series(0.5, std::span<const AreaEntry>(rows), {0.01});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rescaled.entries[i].revival_predicted == series.entries[i].revival_predicted);
    CHECK(rescaled.entries[i].scale_factor == doctest::Approx(series.entries[i].scale_factor * 300.0));
  }
}

TEST_CASE("threshold rule violations are located") {
  const std::vector<AreaEntry> rows{
      row(0.0, 9.0, RevivalClass::NoDeath), row(0.25, 4.0, DWR), row(0.5, 3.0, DWR),
      row(0.75, 3.5, DNR),  // next to a class change
      row(1.0, 1.0, DNR),   row(1.25, 6.0, DNR),  // interior
      row(1.5, 1.0, DNR)};
  const auto r = verify_threshold(build_area_series(0.5, std::span<const AreaEntry>(rows)));
  CHECK(r.n_times == 7);
  CHECK(r.n_no_death == 1);
  CHECK(r.n_no_death_predicted == 1);
  CHECK(r.n_compared == 6);
  CHECK(r.n_agree == 4);
  CHECK(r.disagreements == std::vector<double>{0.75, 1.25});
  CHECK(r.interior_disagreements == std::vector<double>{1.25});
  CHECK(r.monotone_violations == std::vector<double>{0.75, 1.25});
  CHECK(r.interior_monotone_violations == std::vector<double>{1.25});
}

TEST_CASE("sweep_field preconditions and error context") {
  PipelineConfig cfg;
  const std::vector<double> short_grid{0.0, 0.5, 1.0};
  CHECK_THROWS_AS(sweep_field(0.0, 0.5, short_grid, cfg), ParameterError);
  const std::vector<double> unordered{0.0, 1.0, 0.5, 2.0};
  CHECK_THROWS_AS(sweep_field(0.0, 0.5, unordered, cfg), ParameterError);
  CHECK_THROWS_AS(sweep_field(0.0, 0.0, uniform_grid(0, 2, 11), cfg), ParameterError);

  auto failing = [](double, double, double a) -> PointResult {
    if (a > 1.1) throw QuadratureFailure("synthetic");
    return {};
  };
  try {
    sweep_field(0.5, 0.5, uniform_grid(0, 2, 11), cfg, failing);
    FAIL("expected QuadratureFailure");
  } catch (const QuadratureFailure& e) {
    CHECK(std::string(e.what()).find("a_tilde=1.2") != std::string::npos);
  }
}

TEST_CASE("static curve equals measures of the momentum-sum state") {
  PipelineConfig cfg;
  const auto grid = uniform_grid(0.0, 2.0, 11);
  const auto curve = sweep_field(0.0, 0.5, grid, cfg);
  REQUIRE(curve.samples.size() == 11);
  for (const auto& s : curve.samples) {
    const auto rho = assemble_state(oracle::ring_correlators(0.0, ModelParams(0.5, s.a_tilde)));
    CHECK(std::abs(s.ln - log_negativity(rho)) < 1e-7);
    CHECK(std::abs(s.qwd - work_deficit(rho).value) < 1e-6);
    CHECK(std::abs(s.concurrence - concurrence(rho)) < 1e-6);
    CHECK(s.ln >= 0.0);
  }
}

TEST_CASE("gamma = 0.5 shows both revival regimes") {
  ScanSpec spec;
  const std::vector<double> times{1.25, 2.5};
  const auto slices = scan_times(0.5, times, spec);
  CHECK(slices[0].report.classification == DWR);
  CHECK(slices[1].report.classification == DNR);
}

TEST_CASE("gamma = 0.4: revival time carries the larger work-deficit area") {
  ScanSpec spec;
  const std::vector<double> times{1.25, 3.0};
  const auto slices = scan_times(0.4, times, spec);
  REQUIRE(slices[0].report.classification == DWR);
  REQUIRE(slices[1].report.classification == DNR);
  CHECK(slices[0].area.area > slices[1].area.area);
}

TEST_CASE("witness area regression at gamma = 0.5") {
  // Calibrated minimum revival area on t in [0, 10] step 0.25, first computed by this code.
  PipelineConfig cfg;
  CHECK(area_qwd(4.25, 0.5, cfg).area == doctest::Approx(0.8076086562468089).epsilon(1e-9));
  cfg.variant = DeficitVariant::GlobalDephased;
  CHECK(area_qwd(4.25, 0.5, cfg).area == doctest::Approx(0.15394573761276045).epsilon(1e-9));
}

TEST_CASE("scan results do not depend on the worker count") {
  ScanSpec spec;
  spec.area.resolution = 101;
  spec.detection.max_spacing = 0.02;
  const std::vector<double> times{0.5, 1.0};
  const auto one = scan_times(0.6, times, spec);
  spec.pipeline.jobs = 3;
  const auto three = scan_times(0.6, times, spec);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(one[i].area.area == three[i].area.area);
    CHECK(one[i].report.classification == three[i].report.classification);
  }
}

TEST_CASE("grids") {
  const auto g = stepped_grid(0.0, 10.0, 0.25);
  CHECK(g.size() == 41);
  CHECK(g.back() == 10.0);
  CHECK(uniform_grid(0.0, 2.0, 201)[100] == doctest::Approx(1.0));
  CHECK_THROWS_AS(stepped_grid(0.0, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), ParameterError);
}
