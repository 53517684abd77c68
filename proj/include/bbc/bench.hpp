#ifndef BBC_BENCH_HPP
#define BBC_BENCH_HPP

#include "bbc/coloring.hpp"
#include "bbc/error.hpp"
#include "bbc/generators.hpp"
#include "bbc/json_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bbc {

enum class Algorithm { Direct, Rby, Best };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Direct: return "direct";
    case Algorithm::Rby: return "rby";
    case Algorithm::Best: return "best";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "direct") return Algorithm::Direct;
  if (s == "rby") return Algorithm::Rby;
  if (s == "best") return Algorithm::Best;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + s + "'");
}

inline BackboneColoring run_algorithm(Algorithm a, const Forest& f, std::int64_t lambda) {
  switch (a) {
    case Algorithm::Direct: return color_direct(f, lambda);
    case Algorithm::Rby: return color_via_decomposition(f, lambda);
    case Algorithm::Best: return color_best(f, lambda);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

/**
 * Bench corpus description. Lambda is either fixed or a fraction of n (rounded
 * down, at least 2).
 */
struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<Algorithm> algorithms{Algorithm::Best};
  std::optional<std::int64_t> lambda;
  double lambda_fraction = 0.5;
  std::optional<std::size_t> max_degree;
  std::uint64_t seed = kDefaultSeed;
  unsigned repeats = 3;
};

inline BenchConfig bench_config_from_json(const Json& j) {
  try {
    BenchConfig c;
    c.sizes = j.value("sizes", std::vector<std::size_t>{});
    if (j.contains("algos")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algos")) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (j.contains("lambda") && !j.at("lambda").is_null()) c.lambda = j.at("lambda").get<std::int64_t>();
    c.lambda_fraction = j.value("lambda_fraction", 0.5);
    if (j.contains("max_degree") && !j.at("max_degree").is_null()) {
      c.max_degree = j.at("max_degree").get<std::size_t>();
    }
    c.seed = j.value("seed", kDefaultSeed);
    c.repeats = j.value("repeats", 3U);
    if (c.repeats == 0) throw Error(ErrorCode::InvalidArgument, "repeats must be positive");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bench config: ") + e.what());
  }
}

struct BenchRecord {
  std::size_t n = 0;
  std::size_t max_degree = 0;
  std::int64_t lambda = 0;
  Algorithm algorithm = Algorithm::Best;
  Color max_color = 0;
  Color lower_bound = 0;
  double seconds = 0;  ///< median over repeats
};

struct BenchReport {
  std::vector<BenchRecord> records;
  /// Least-squares slope of log(seconds) against log(n), per algorithm.
  std::map<std::string, double> slopes;
};

inline std::int64_t bench_lambda(const BenchConfig& c, std::size_t n) {
  if (c.lambda) return *c.lambda;
  auto l = static_cast<std::int64_t>(std::floor(c.lambda_fraction * static_cast<double>(n)));
  return std::max<std::int64_t>(l, 2);
}

inline double log_log_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [n, t] : points) {
    double x = std::log(n);
    double y = std::log(std::max(t, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  const double den = m * sxx - sx * sx;
  return den == 0 ? 0 : (m * sxy - sx * sy) / den;
}

/// Times each algorithm on one random tree per size; every coloring is verified first.
inline BenchReport run_bench(const BenchConfig& config) {
  BenchReport report;
  std::map<std::string, std::vector<std::pair<double, double>>> points;
  for (std::size_t n : config.sizes) {
    Tree t = gen_random_tree(n, config.max_degree, config.seed ^ (0x9E3779B97F4A7C15ULL * n));
    const std::int64_t lambda = bench_lambda(config, n);
    for (Algorithm a : config.algorithms) {
      std::vector<double> times;
      BackboneColoring c;
      for (unsigned r = 0; r < config.repeats; ++r) {
        auto start = std::chrono::steady_clock::now();
        c = run_algorithm(a, t, lambda);
        auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(stop - start).count());
      }
      if (!verify_backbone_coloring(t, lambda, c).ok()) {
        throw Error(ErrorCode::VerificationFailed,
                    std::string(to_string(a)) + " produced an invalid coloring at n=" + std::to_string(n));
      }
      std::sort(times.begin(), times.end());
      BenchRecord rec;
      rec.n = n;
      rec.max_degree = t.max_degree();
      rec.lambda = lambda;
      rec.algorithm = a;
      rec.max_color = c.max_color;
      rec.lower_bound = lower_bound(t, lambda);
      rec.seconds = times[times.size() / 2];
      report.records.push_back(rec);
      points[std::string(to_string(a))].emplace_back(static_cast<double>(n), rec.seconds);
    }
  }
  std::sort(report.records.begin(), report.records.end(), [](const auto& x, const auto& y) {
    return x.n != y.n ? x.n < y.n : x.algorithm < y.algorithm;
  });
  for (const auto& [name, pts] : points) report.slopes[name] = log_log_slope(pts);
  return report;
}

inline Json to_json(const BenchReport& r) {
  Json records = Json::array();
  for (const auto& x : r.records) {
    records.push_back({{"n", x.n},
                       {"max_degree", x.max_degree},
                       {"lambda", x.lambda},
                       {"algo", to_string(x.algorithm)},
                       {"max_color", x.max_color},
                       {"lower_bound", x.lower_bound},
                       {"seconds", x.seconds}});
  }
  Json slopes = Json::object();
  for (const auto& [k, v] : r.slopes) slopes[k] = v;
  return Json{{"records", records}, {"slopes", slopes}};
}

}  // namespace bbc

#endif  // BBC_BENCH_HPP
