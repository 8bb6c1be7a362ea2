#pragma once

// Oracle comparisons and invariant checks shared by `xyq validate` and the
// acceptance runner.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xyquench/measures.hpp"
#include "xyquench/model.hpp"

namespace xyq::cli {

struct SuiteOptions {
  QuadratureSpec quad;
  OptimizerSpec opt;
  int jobs = 1;
  int samples = 200;             // optimizer suite
  std::uint64_t seed = 20240611;
  int ring_modes = 8192;
};

/// Standard sweep: gamma in {0.2, 0.4, 0.5, 0.6, 0.8, 1.0}, a in 0:0.1:2, t in 0:0.5:10.
struct GridPoint {
  double gamma, a_tilde, t_tilde;
};
std::vector<GridPoint> standard_grid();

const std::vector<std::string>& suite_names();

/// {"suite": name, "pass": bool, "checks": [{"name", "pass", ...}]}.
/// Throws ParameterError for an unknown suite.
nlohmann::json run_suite(std::string_view name, const SuiteOptions& options);

// Individual suites, each returning the same shape as run_suite.
nlohmann::json trivial_suite();
nlohmann::json state_psd_suite(const SuiteOptions& options);
nlohmann::json ring_suite(const SuiteOptions& options);
nlohmann::json ed_suite(const SuiteOptions& options);
nlohmann::json optimizer_suite(const SuiteOptions& options);

}  // namespace xyq::cli
