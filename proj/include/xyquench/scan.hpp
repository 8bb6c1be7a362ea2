#pragma once

// Parameter sweeps, entanglement death/revival detection, and the
// cumulative work-deficit threshold rule.

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "xyquench/measures.hpp"
#include "xyquench/model.hpp"

namespace xyq {

struct PipelineConfig {
  QuadratureSpec quad;
  OptimizerSpec opt;
  DeficitVariant variant = DeficitVariant::LocalSum;
  int jobs = 1;
};

/// Everything one pipeline pass (kernels -> state -> measures) produces.
struct PointResult {
  CorrelatorSet correlators;
  double negativity = 0.0;
  double ln = 0.0;           // ebits
  double qwd = 0.0;          // qubits
  double concurrence = 0.0;
};

PointResult evaluate_point(double t_tilde, const ModelParams& params, const PipelineConfig& config);

/// Hook for swapping in a memoizing evaluator: (t_tilde, gamma, a_tilde) -> result.
using PointEvaluator = std::function<PointResult(double, double, double)>;

PointEvaluator direct_evaluator(const PipelineConfig& config);

/// n points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int n);
/// lo, lo + step, ... up to hi (hi included when it lies on the lattice).
std::vector<double> stepped_grid(double lo, double hi, double step);

struct CurveSample {
  double a_tilde = 0.0;
  double ln = 0.0;
  double qwd = 0.0;
  double concurrence = 0.0;
};

struct CorrelationCurve {
  double gamma = 0.0;
  double t_tilde = 0.0;
  std::vector<CurveSample> samples;
};

/// Pipeline over a strictly increasing field grid reaching at least 2.
/// Pipeline errors are rethrown with the offending grid point named.
CorrelationCurve sweep_field(double t_tilde, double gamma, std::span<const double> grid,
                             const PipelineConfig& config, const PointEvaluator& evaluator = {});

enum class RevivalClass { NoDeath, DeathNoRevival, DeathWithRevival };
std::string_view to_string(RevivalClass c);

struct RevivalReport {
  std::optional<double> death_field;
  std::optional<double> revival_field;
  RevivalClass classification = RevivalClass::NoDeath;
};

struct DetectionSpec {
  double eps_ent = 1e-4;      // ebits
  double max_spacing = 0.02;  // largest accepted field step
};

/// Death: first sample at or below eps_ent, preceded by an entangled sample
/// and followed by a second one at or below eps_ent. Revival: a later
/// below -> above transition that also persists for two samples. Crossing
/// fields are linearly interpolated. Throws InsufficientResolution when the
/// field spacing exceeds max_spacing.
RevivalReport detect_revival(const CorrelationCurve& curve, const DetectionSpec& spec = {});

/// Composite trapezoid.
double trapezoid_area(std::span<const double> x, std::span<const double> y);

struct AreaSpec {
  int resolution = 201;      // initial number of field points on [0, a_max]
  double tolerance = 1e-4;   // accepted change under one doubling
  int max_resolution = 3201;
  double a_max = 2.0;
};

struct AreaResult {
  double area = 0.0;
  int resolution = 0;             // points in the finest grid used
  double refinement_change = 0.0; // |A(finest) - A(previous)|
  bool converged = false;
};

/// Area under QWD(a_tilde) on [0, a_max], doubling the grid until the
/// trapezoid changes by less than the tolerance.
AreaResult area_qwd(double t_tilde, double gamma, const PipelineConfig& config,
                    const AreaSpec& spec = {}, const PointEvaluator& evaluator = {});

struct ScanSpec {
  PipelineConfig pipeline;
  DetectionSpec detection;
  AreaSpec area;
};

struct TimeSlice {
  double t_tilde = 0.0;
  CorrelationCurve curve;        // base resolution
  RevivalReport report;          // classification on the base curve
  AreaResult area;
  RevivalClass refined_class = RevivalClass::NoDeath;  // on the finest area grid
};

/// Curves, revival reports and areas over a time grid.
std::vector<TimeSlice> scan_times(double gamma, std::span<const double> time_grid,
                                  const ScanSpec& spec, const PointEvaluator& evaluator = {});

struct TimeAreaPoint {
  double t_tilde = 0.0;
  double area = 0.0;
  bool revival_detected = false;
};

struct Calibration {
  double a_min = 0.0;
  double witness_t = 0.0;
};

/// Smallest area among revival times. Throws NoRevivalInGrid if there is none.
Calibration calibrate_a_min(std::span<const TimeAreaPoint> points);

/// (area - a_min) / m. Throws NonpositiveScale unless m > 0.
double scale_factor(double area, double a_min, double m);

/// Non-negative scale factor predicts revival.
inline bool predict_revival(double scale_factor_value) { return scale_factor_value >= 0.0; }

struct AreaEntry {
  double t_tilde = 0.0;
  double area = 0.0;
  double scale_factor = 0.0;
  RevivalClass classification = RevivalClass::NoDeath;
  bool revival_detected = false;
  bool revival_predicted = false;
};

struct AreaSeries {
  double gamma = 0.0;
  double a_min = 0.0;
  double m = 0.0;
  double witness_t = 0.0;
  std::vector<AreaEntry> entries;
};

/// Scaling parameter M; unset means M = a_min.
struct ScalePolicy {
  std::optional<double> m;
};

/// Calibrates a_min on the slices and fills in scale factors and predictions.
AreaSeries build_area_series(double gamma, std::span<const TimeSlice> slices,
                             const ScalePolicy& policy = {});

/// Same from raw (t, area, classification) rows.
AreaSeries build_area_series(double gamma, std::span<const AreaEntry> rows,
                             const ScalePolicy& policy = {});

struct AgreementReport {
  int n_times = 0;
  int n_compared = 0;          // times where entanglement dies
  int n_agree = 0;
  double agreement = 0.0;      // n_agree / n_compared
  int n_no_death = 0;          // excluded from the comparison
  int n_no_death_predicted = 0;
  std::vector<double> disagreements;
  std::vector<double> interior_disagreements;  // not adjacent to a class change
  std::vector<double> monotone_violations;     // DeathNoRevival with area >= a_min
  std::vector<double> interior_monotone_violations;
};

/// Compares the sign rule against detected revivals. NoDeath times are not
/// scored.
AgreementReport verify_threshold(const AreaSeries& series);

struct ThresholdAnalysis {
  std::vector<TimeSlice> slices;
  AreaSeries series;
  AgreementReport agreement;
};

ThresholdAnalysis analyze_threshold(double gamma, std::span<const double> time_grid,
                                    const ScanSpec& spec, const ScalePolicy& policy = {},
                                    const PointEvaluator& evaluator = {});

}  // namespace xyq
