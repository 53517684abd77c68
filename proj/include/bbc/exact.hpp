#ifndef BBC_EXACT_HPP
#define BBC_EXACT_HPP

#include "bbc/coloring.hpp"
#include "bbc/error.hpp"
#include "bbc/forest.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace bbc {

inline constexpr std::size_t kMaxExactVertices = 15;
inline constexpr std::size_t kMaxPermutationVertices = 8;

struct ExactResult {
  Color value = 0;
  BackboneColoring witness;
};

namespace detail {

/// DFS order over components by decreasing size, each started at its highest-degree vertex.
inline RootedOrder search_order(const Forest& f) {
  const std::size_t r = f.component_count();
  std::vector<std::size_t> comp_size(r, 0);
  std::vector<Vertex> start(r, kNoVertex);
  for (Vertex v = 0; v < f.size(); ++v) {
    auto c = f.component_of(v);
    ++comp_size[c];
    if (start[c] == kNoVertex || f.degree(v) > f.degree(start[c])) start[c] = v;
  }
  std::vector<std::uint32_t> comps(r);
  std::iota(comps.begin(), comps.end(), 0U);
  std::stable_sort(comps.begin(), comps.end(),
                   [&](auto a, auto b) { return comp_size[a] > comp_size[b]; });
  RootedOrder out;
  out.parent.assign(f.size(), kNoVertex);
  for (auto c : comps) {
    RootedOrder part = rooted_order(f, start[c]);
    for (Vertex v : part.order) {
      out.order.push_back(v);
      out.parent[v] = part.parent[v];
    }
  }
  return out;
}

class BbcDecider {
 public:
  BbcDecider(const Forest& f, std::int64_t lambda, Color k)
      : f_(f), lambda_(lambda), k_(k), used_(static_cast<std::size_t>(k) + 2, 0),
        color_(f.size(), 0), pending_(f.size(), 0) {
    RootedOrder r = search_order(f);
    order_ = std::move(r.order);
    parent_ = std::move(r.parent);
    for (Vertex v : order_) {
      if (parent_[v] != kNoVertex) ++pending_[parent_[v]];
    }
  }

  std::optional<std::vector<Color>> run() {
    if (order_.empty()) return std::vector<Color>{};
    if (search(0)) return color_;
    return std::nullopt;
  }

 private:
  /// Free colors at distance at least lambda from `c`.
  [[nodiscard]] std::int64_t free_far_from(Color c) const {
    std::int64_t low = std::max<Color>(0, c - lambda_);
    std::int64_t high = std::max<Color>(0, k_ - (c + lambda_) + 1);
    std::int64_t total = low + high;
    for (Vertex w : assigned_) {
      Color d = color_[w] > c ? color_[w] - c : c - color_[w];
      if (d >= lambda_) --total;
    }
    return total;
  }

  bool feasible() const {
    for (Vertex w : assigned_) {
      if (pending_[w] > 0 && free_far_from(color_[w]) < pending_[w]) return false;
    }
    return true;
  }

  bool search(std::size_t i) {
    if (i == order_.size()) return true;
    Vertex v = order_[i];
    Vertex p = parent_[v];
    Color hi = k_;
    if (i == 0) hi = (k_ + 1) / 2;
    for (Color c = 1; c <= hi; ++c) {
      if (used_[static_cast<std::size_t>(c)]) continue;
      if (p != kNoVertex) {
        Color d = c > color_[p] ? c - color_[p] : color_[p] - c;
        if (d < lambda_) continue;
      }
      used_[static_cast<std::size_t>(c)] = 1;
      color_[v] = c;
      assigned_.push_back(v);
      if (p != kNoVertex) --pending_[p];
      if (feasible() && search(i + 1)) return true;
      if (p != kNoVertex) ++pending_[p];
      assigned_.pop_back();
      color_[v] = 0;
      used_[static_cast<std::size_t>(c)] = 0;
    }
    return false;
  }

  const Forest& f_;
  std::int64_t lambda_;
  Color k_;
  std::vector<Vertex> order_;
  std::vector<Vertex> parent_;
  std::vector<std::uint8_t> used_;
  std::vector<Color> color_;
  std::vector<std::int64_t> pending_;
  std::vector<Vertex> assigned_;
};

inline BackboneColoring make_coloring(std::int64_t lambda, std::vector<Color> colors) {
  BackboneColoring c;
  c.lambda = lambda;
  c.colors = std::move(colors);
  c.max_color = c.colors.empty() ? 0 : *std::max_element(c.colors.begin(), c.colors.end());
  return c;
}

}  // namespace detail

/**
 * @brief Decides whether a coloring with all colors in [1, k] exists.
 *
 * Backtracking along a DFS order of the backbone, so each vertex has at most one
 * colored neighbor when it is placed. Colored vertices with uncolored children must
 * keep enough free colors at distance lambda. The first vertex is limited to the
 * lower half of [1, k] since c and k + 1 - c are equivalent.
 */
inline std::optional<BackboneColoring> decide_bbc_le(const Forest& f, std::int64_t lambda, Color k) {
  require_lambda(lambda);
  if (f.size() > kMaxExactVertices) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exact search limited to n <= " + std::to_string(kMaxExactVertices));
  }
  if (k < static_cast<Color>(f.size())) {
    throw Error(ErrorCode::KTooSmall, "k=" + std::to_string(k) + " < n=" + std::to_string(f.size()));
  }
  BackboneColoring direct = color_direct(f, lambda);
  if (direct.max_color <= k) return direct;
  detail::BbcDecider decider(f, lambda, k);
  auto colors = decider.run();
  if (!colors) return std::nullopt;
  return detail::make_coloring(lambda, std::move(*colors));
}

/// Exact BBC number: ascends from the lower bound until the decider succeeds.
inline ExactResult exact_bbc(const Forest& f, std::int64_t lambda) {
  require_lambda(lambda);
  if (f.size() > kMaxExactVertices) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exact search limited to n <= " + std::to_string(kMaxExactVertices));
  }
  if (f.size() == 0) return {0, detail::make_coloring(lambda, {})};
  BackboneColoring best = color_best(f, lambda);
  for (Color k = lower_bound(f, lambda); k < best.max_color; ++k) {
    if (auto c = decide_bbc_le(f, lambda, k)) return {k, std::move(*c)};
  }
  return {best.max_color, std::move(best)};
}

/**
 * Second, independent oracle. Any injective coloring sorts the vertices; for a fixed
 * order the smallest colors are found greedily (each vertex one above its predecessor
 * and lambda above its earlier neighbors). Minimizing over all n! orders is exact.
 */
inline std::optional<BackboneColoring> exact_bbc_permutation(const Forest& f, std::int64_t lambda,
                                                             Color k) {
  require_lambda(lambda);
  if (f.size() > kMaxPermutationVertices) {
    throw Error(ErrorCode::InstanceTooLarge,
                "permutation oracle limited to n <= " + std::to_string(kMaxPermutationVertices));
  }
  const std::size_t n = f.size();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::vector<Color> color(n);
  do {
    Color prev = 0;
    for (Vertex v : perm) color[v] = 0;
    bool fits = true;
    for (Vertex v : perm) {
      Color c = prev + 1;
      for (Vertex w : f.neighbors(v)) {
        if (color[w] != 0) c = std::max(c, color[w] + lambda);
      }
      if (c > k) {
        fits = false;
        break;
      }
      color[v] = c;
      prev = c;
    }
    if (fits) return detail::make_coloring(lambda, color);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace bbc

#endif  // BBC_EXACT_HPP
