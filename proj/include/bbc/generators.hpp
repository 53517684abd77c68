#ifndef BBC_GENERATORS_HPP
#define BBC_GENERATORS_HPP

#include "bbc/error.hpp"
#include "bbc/forest.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bbc {

/// Default seed for every generator and the CLI.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED'0000'2024'0001ULL;

/**
 * SplitMix64 (Steele, Lea, Flood 2014). Constants:
 * increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection of the biased low range.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Linear-time Prüfer decoding. Edges come out as (leaf, neighbor) in removal order.
inline std::vector<Edge> prufer_decode(std::size_t n, const std::vector<Vertex>& code) {
  if (n < 2) return {};
  if (code.size() != n - 2) throw Error(ErrorCode::InvalidArgument, "Prüfer code must have n-2 entries");
  std::vector<std::uint32_t> degree(n, 1);
  for (Vertex v : code) {
    if (v >= n) throw Error(ErrorCode::VertexOutOfRange, "code entry " + std::to_string(v));
    ++degree[v];
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  Vertex ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (Vertex v : code) {
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, static_cast<Vertex>(n - 1));
  return edges;
}

namespace detail {

inline constexpr int kDegreeRejections = 100;

}  // namespace detail

/**
 * @brief Random labeled tree from a uniform Prüfer code.
 *
 * With a degree bound D, up to 100 codes are drawn and rejected if some vertex
 * appears D or more times; after that a code is built entry by entry from the
 * vertices that still have room (not uniform).
 */
inline Tree gen_random_tree(std::size_t n, std::optional<std::size_t> max_degree,
                            std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (max_degree && *max_degree * n < 2 * (n - 1)) {
    throw Error(ErrorCode::InfeasibleDegreeBound,
                "max degree " + std::to_string(*max_degree) + " too small for n=" + std::to_string(n));
  }
  SplitMix64 rng(seed);
  if (n == 1) return build_tree(1, {});
  std::vector<Vertex> code(n - 2);
  auto draw = [&] {
    for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  };
  draw();
  if (max_degree) {
    const std::size_t cap = *max_degree - 1;  // occurrences allowed per vertex
    auto fits = [&] {
      std::vector<std::uint32_t> count(n, 0);
      for (Vertex v : code) {
        if (++count[v] > cap) return false;
      }
      return true;
    };
    int attempts = 1;
    while (!fits() && attempts < detail::kDegreeRejections) {
      draw();
      ++attempts;
    }
    if (!fits()) {
      std::vector<Vertex> open(n);
      std::vector<std::uint32_t> count(n, 0);
      for (Vertex v = 0; v < n; ++v) open[v] = v;
      for (auto& c : code) {
        auto i = static_cast<std::size_t>(rng.below(open.size()));
        c = open[i];
        if (++count[c] == cap) {
          open[i] = open.back();
          open.pop_back();
        }
      }
    }
  }
  return build_tree(n, prufer_decode(n, code));
}

inline constexpr std::size_t kMaxEnumeratedOrder = 7;

/// Calls `visit` for each of the n^(n-2) labeled trees, in lexicographic order of Prüfer codes.
inline void for_each_labeled_tree(std::size_t n, const std::function<void(const Tree&)>& visit) {
  if (n == 0 || n > kMaxEnumeratedOrder) {
    throw Error(ErrorCode::InstanceTooLarge,
                "enumeration limited to 1 <= n <= " + std::to_string(kMaxEnumeratedOrder));
  }
  if (n <= 2) {
    visit(build_tree(n, n == 2 ? std::vector<Edge>{{0, 1}} : std::vector<Edge>{}));
    return;
  }
  std::vector<Vertex> code(n - 2, 0);
  for (;;) {
    visit(build_tree(n, prufer_decode(n, code)));
    std::size_t i = code.size();
    while (i > 0 && code[i - 1] == n - 1) code[--i] = 0;
    if (i == 0) return;
    ++code[i - 1];
  }
}

inline std::vector<Tree> enumerate_trees(std::size_t n) {
  std::vector<Tree> out;
  for_each_labeled_tree(n, [&](const Tree& t) { out.push_back(t); });
  return out;
}

/// Star K_{1,n-1} centered at vertex 0.
inline Tree star_tree(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
  return build_tree(n, std::move(edges));
}

/// Path 0 - 1 - ... - (n-1).
inline Tree path_tree(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return build_tree(n, std::move(edges));
}

}  // namespace bbc

#endif  // BBC_GENERATORS_HPP
