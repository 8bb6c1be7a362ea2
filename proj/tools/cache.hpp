#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "xyquench/scan.hpp"

namespace xyq::cli {

/// Lowercase hex SHA-256 of `text`.
std::string sha256_hex(const std::string& text);

/// Per-point result records on disk, one JSON file per content hash of the
/// key. A record is trusted only if the key stored inside it equals the
/// requested key; unreadable or mismatching records are deleted.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<PointResult> lookup(const nlohmann::json& key);
  void store(const nlohmann::json& key, const PointResult& result);

  int hits() const { return hits_; }
  int misses() const { return misses_; }
  int evictions() const { return evictions_; }

  std::filesystem::path record_path(const nlohmann::json& key) const;

 private:
  std::filesystem::path dir_;
  std::atomic<int> hits_{0};
  std::atomic<int> misses_{0};
  std::atomic<int> evictions_{0};
};

/// Everything that determines a pipeline value at one (t, gamma, a).
nlohmann::json point_key(double t_tilde, double gamma, double a_tilde, const PipelineConfig& config);

nlohmann::json to_json(const PointResult& r);
PointResult point_result_from_json(const nlohmann::json& j);

/// Pipeline evaluator backed by `cache`; falls through to evaluate_point on a miss.
PointEvaluator caching_evaluator(const PipelineConfig& config, ResultCache& cache);

}  // namespace xyq::cli
