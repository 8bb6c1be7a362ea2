#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "xyquench/errors.hpp"
#include "xyquench/scan.hpp"

namespace xyq::cli {

enum ExitCode : int {
  kSuccess = 0,
  kParameterError = 2,
  kNumericalFailure = 3,
  kValidationFailure = 4,
};

/// Effective settings for one invocation, after flags, config file and defaults.
struct Options {
  double gamma = 0.5;
  double t = 0.0;
  double t_min = 0.0, t_max = 10.0, t_step = 0.25;
  double a_min = 0.0, a_max = 2.0, a_step = 0.01;
  std::string variant = "local-sum";
  double eps_ent = 1e-4;
  double max_spacing = 0.02;
  int jobs = 1;
  std::string cache_dir;  // empty: XYQ_CACHE_DIR, then ~/.cache/xyquench
  bool no_cache = false;
  std::string out;        // empty: command default

  QuadratureSpec quad;
  OptimizerSpec opt;

  // area / predict
  std::string m = "a_min";  // "a_min" or a positive number
  int area_resolution = 201;
  double area_tolerance = 1e-4;
  std::optional<double> area_min;  // predict: skip calibration

  // validate
  std::string suite = "trivial";
  int samples = 200;
};

nlohmann::json options_to_json(const Options& o);

/// Each command writes its outputs and returns an exit code. Library errors
/// propagate; the caller maps them with exit_code_for.
int cmd_curve(const Options& o, std::ostream& log);
int cmd_heatmap(const Options& o, std::ostream& log);
int cmd_area(const Options& o, std::ostream& log);
int cmd_predict(const Options& o, std::ostream& log);
int cmd_validate(const Options& o, std::ostream& log);

int exit_code_for(ErrorKind kind);

/// Fixed 10-significant-digit scientific notation used in every CSV.
std::string format_value(double v);

std::string curve_csv(const CorrelationCurve& curve);
std::string area_csv(const AreaSeries& series);

/// Path of the manifest written next to an output file: x.csv -> x.manifest.json.
std::string manifest_path_for(const std::string& output);

}  // namespace xyq::cli
