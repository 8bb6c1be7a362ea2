#include "cache.hpp"

#include <openssl/sha.h>

#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <sstream>
#include <system_error>
#include <thread>

namespace xyq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(const std::string& text) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char byte : digest) out += fmt::format("{:02x}", byte);
  return out;
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path ResultCache::record_path(const json& key) const {
  const std::string h = sha256_hex(key.dump());
  return dir_ / h.substr(0, 2) / (h + ".json");
}

std::optional<PointResult> ResultCache::lookup(const json& key) {
  const fs::path path = record_path(key);
  std::ifstream in(path);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    const json record = json::parse(in);
    if (record.at("key") != key) throw std::runtime_error("key mismatch");
    auto result = point_result_from_json(record.at("result"));
    ++hits_;
    return result;
  } catch (const std::exception&) {
    in.close();
    std::error_code ec;
    fs::remove(path, ec);
    ++evictions_;
    ++misses_;
    return std::nullopt;
  }
}

void ResultCache::store(const json& key, const PointResult& result) {
  const fs::path path = record_path(key);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);

  // Write beside the target, then rename.
  std::ostringstream suffix;
  suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  const fs::path tmp = path.string() + suffix.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << json{{"key", key}, {"result", to_json(result)}}.dump() << '\n';
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

json point_key(double t_tilde, double gamma, double a_tilde, const PipelineConfig& config) {
  return {
      {"op", "point"},
      {"version", XYQ_VERSION},
      {"t_tilde", t_tilde},
      {"gamma", gamma},
      {"a_tilde", a_tilde},
      {"variant", std::string(to_string(config.variant))},
      {"quad",
       {{"abs_tol", config.quad.abs_tol},
        {"rel_tol", config.quad.rel_tol},
        {"max_subdivisions", config.quad.max_subdivisions}}},
      {"opt",
       {{"n_theta", config.opt.n_theta},
        {"n_phi", config.opt.n_phi},
        {"x_tol", config.opt.x_tol},
        {"f_tol", config.opt.f_tol},
        {"max_iterations", config.opt.max_iterations}}},
  };
}

json to_json(const PointResult& r) {
  const auto& c = r.correlators;
  return {{"g_minus", c.g_minus}, {"g_plus", c.g_plus}, {"s", c.s},
          {"mz", c.mz},           {"l_zz", c.l_zz},     {"negativity", r.negativity},
          {"ln", r.ln},           {"qwd", r.qwd},       {"concurrence", r.concurrence}};
}

PointResult point_result_from_json(const json& j) {
  PointResult r;
  r.correlators.g_minus = j.at("g_minus").get<double>();
  r.correlators.g_plus = j.at("g_plus").get<double>();
  r.correlators.s = j.at("s").get<double>();
  r.correlators.mz = j.at("mz").get<double>();
  r.correlators.l_zz = j.at("l_zz").get<double>();
  r.negativity = j.at("negativity").get<double>();
  r.ln = j.at("ln").get<double>();
  r.qwd = j.at("qwd").get<double>();
  r.concurrence = j.at("concurrence").get<double>();
  return r;
}

PointEvaluator caching_evaluator(const PipelineConfig& config, ResultCache& cache) {
  return [config, &cache](double t, double gamma, double a) {
    const json key = point_key(t, gamma, a, config);
    if (auto hit = cache.lookup(key)) return *hit;
    PointResult r = evaluate_point(t, ModelParams(gamma, a), config);
    cache.store(key, r);
    return r;
  };
}

}  // namespace xyq::cli
