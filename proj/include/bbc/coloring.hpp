#ifndef BBC_COLORING_HPP
#define BBC_COLORING_HPP

#include "bbc/buffer.hpp"
#include "bbc/error.hpp"
#include "bbc/forest.hpp"
#include "bbc/rby.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbc {

using Color = std::int64_t;

/// Injective vertex colors in which every backbone edge has gap at least lambda.
struct BackboneColoring {
  std::int64_t lambda = 0;
  std::vector<Color> colors;
  Color max_color = 0;
};

/// Closed color interval [lo, hi]; hi = lo - 1 is the empty interval.
struct ColorInterval {
  Color lo = 1;
  Color hi = 0;
  [[nodiscard]] std::size_t size() const {
    return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
  }
};

inline void require_lambda(std::int64_t lambda) {
  if (lambda < 2) {
    throw Error(ErrorCode::LambdaTooSmall, "lambda=" + std::to_string(lambda) + " < 2");
  }
}

// ---------------------------------------------------------------------------
// Verification.

enum class ColoringViolationKind { WrongLength, NonPositive, NotInjective, GapTooSmall, MaxMismatch };

inline std::string_view to_string(ColoringViolationKind kind) {
  switch (kind) {
    case ColoringViolationKind::WrongLength: return "wrong_length";
    case ColoringViolationKind::NonPositive: return "non_positive";
    case ColoringViolationKind::NotInjective: return "not_injective";
    case ColoringViolationKind::GapTooSmall: return "gap_too_small";
    case ColoringViolationKind::MaxMismatch: return "max_mismatch";
  }
  return "unknown";
}

struct ColoringViolation {
  ColoringViolationKind kind;
  std::vector<Vertex> witness;
  std::string detail;
};

struct ColoringReport {
  std::vector<ColoringViolation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool has(ColoringViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const auto& v) { return v.kind == kind; });
  }
};

/// Checks injectivity (the clique), every backbone gap, and the recorded maximum.
inline ColoringReport verify_backbone_coloring(const Forest& f, std::int64_t lambda,
                                               const BackboneColoring& c) {
  ColoringReport report;
  if (c.colors.size() != f.size()) {
    report.violations.push_back({ColoringViolationKind::WrongLength, {},
                                 std::to_string(c.colors.size()) + " colors for " +
                                     std::to_string(f.size()) + " vertices"});
    return report;
  }
  std::vector<std::pair<Color, Vertex>> by_color;
  by_color.reserve(f.size());
  Color max_color = 0;
  for (Vertex v = 0; v < f.size(); ++v) {
    if (c.colors[v] < 1) {
      report.violations.push_back({ColoringViolationKind::NonPositive, {v},
                                   "color " + std::to_string(c.colors[v])});
    }
    by_color.emplace_back(c.colors[v], v);
    max_color = std::max(max_color, c.colors[v]);
  }
  std::sort(by_color.begin(), by_color.end());
  for (std::size_t i = 1; i < by_color.size(); ++i) {
    if (by_color[i].first == by_color[i - 1].first) {
      report.violations.push_back({ColoringViolationKind::NotInjective,
                                   {by_color[i - 1].second, by_color[i].second},
                                   "shared color " + std::to_string(by_color[i].first)});
    }
  }
  for (const auto& [u, v] : f.edges()) {
    Color gap = c.colors[u] > c.colors[v] ? c.colors[u] - c.colors[v] : c.colors[v] - c.colors[u];
    if (gap < lambda) {
      report.violations.push_back({ColoringViolationKind::GapTooSmall, {u, v},
                                   "gap " + std::to_string(gap) + " < " + std::to_string(lambda)});
    }
  }
  if (max_color != c.max_color) {
    report.violations.push_back({ColoringViolationKind::MaxMismatch, {},
                                 "recorded max " + std::to_string(c.max_color) + ", actual " +
                                     std::to_string(max_color)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Two-interval coloring of a bipartite piece.

namespace detail {

/// Colors the vertices of A (in `ia`) and B (in `ib`) using only the edges between
/// members of A and B. `side` is 1 for A, 2 for B, 0 for vertices outside the piece.
inline void color_two_intervals(const Forest& f, std::span<const std::uint8_t> side,
                                std::span<const Vertex> a, std::span<const Vertex> b,
                                ColorInterval ia, ColorInterval ib, std::vector<Color>& colors) {
  // Degree within the piece among still active vertices; kGone for removed or outside ones.
  constexpr std::uint32_t kGone = std::numeric_limits<std::uint32_t>::max();
  Buffer<std::uint32_t> deg(f.size(), kGone);
  for (Vertex v = 0; v < f.size(); ++v) {
    if (side[v] != 0) deg[v] = 0;
  }
  auto scan = [&](std::span<const Vertex> set) {
    for (Vertex v : set) {
      for (Vertex w : f.neighbors(v)) deg[v] += side[w] != 0 ? 1 : 0;
    }
  };
  scan(a);
  scan(b);
  Buffer<Vertex> queue;
  for (Vertex v = 0; v < f.size(); ++v) {
    if (deg[v] == 1) queue.push_back(v);
  }

  Color a_lo = ia.lo;
  Color a_hi = ia.hi;
  Color b_lo = ib.lo;
  Color b_hi = ib.hi;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    if (deg[v] != 1) continue;
    Vertex u = kNoVertex;
    for (Vertex w : f.neighbors(v)) {
      if (deg[w] != kGone) {
        u = w;
        break;
      }
    }
    if (side[v] == 2) {
      colors[v] = b_lo++;
      colors[u] = a_lo++;
    } else {
      colors[v] = a_hi--;
      colors[u] = b_hi--;
    }
    deg[v] = kGone;
    deg[u] = kGone;
    for (Vertex w : f.neighbors(u)) {
      if (deg[w] != kGone && --deg[w] == 1) queue.push_back(w);
    }
  }
  for (Vertex v = 0; v < f.size(); ++v) {
    if (deg[v] != kGone) colors[v] = side[v] == 1 ? a_lo++ : b_lo++;
  }
}

inline void check_two_interval_preconditions(const Forest& f, std::span<const std::uint8_t> side,
                                             std::size_t na, std::size_t nb, ColorInterval ia,
                                             ColorInterval ib, std::int64_t lambda) {
  for (const auto& [u, v] : f.edges()) {
    if (side[u] != 0 && side[u] == side[v]) {
      throw Error(ErrorCode::NotIndependent, "edge (" + std::to_string(u) + "," +
                                                 std::to_string(v) + ") inside one set");
    }
  }
  if (ia.size() < na || ib.size() < nb) {
    throw Error(ErrorCode::PreconditionViolated, "interval capacity below set size");
  }
  if (ia.lo + lambda > ib.lo || ia.hi + lambda > ib.hi) {
    throw Error(ErrorCode::PreconditionViolated, "intervals not offset by lambda");
  }
}

}  // namespace detail

/**
 * @brief Colors a forest split into independent sets A and B from two intervals.
 *
 * Repeatedly removes a leaf together with its neighbor: a leaf of B takes the lowest
 * free colors of both intervals, a leaf of A the highest. Whatever is left is
 * isolated and filled in ascending id order. Linear time.
 */
inline BackboneColoring color_bipartition_intervals(const Forest& f, const std::vector<Vertex>& a,
                                                    const std::vector<Vertex>& b, ColorInterval ia,
                                                    ColorInterval ib, std::int64_t lambda) {
  require_lambda(lambda);
  std::vector<std::uint8_t> side(f.size(), 0);
  for (auto [set, tag] : {std::pair{&a, std::uint8_t{1}}, std::pair{&b, std::uint8_t{2}}}) {
    for (Vertex v : *set) {
      if (v >= f.size()) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
      if (side[v] != 0) throw Error(ErrorCode::PreconditionViolated, "A and B overlap");
      side[v] = tag;
    }
  }
  if (a.size() + b.size() != f.size()) {
    throw Error(ErrorCode::PreconditionViolated, "A and B do not cover every vertex");
  }
  detail::check_two_interval_preconditions(f, side, a.size(), b.size(), ia, ib, lambda);
  BackboneColoring c;
  c.lambda = lambda;
  c.colors.assign(f.size(), 0);
  detail::color_two_intervals(f, side, a, b, ia, ib, c.colors);
  c.max_color = f.size() == 0 ? 0 : *std::max_element(c.colors.begin(), c.colors.end());
  return c;
}

namespace detail {

inline BackboneColoring sequential_coloring(const Forest& f, std::int64_t lambda) {
  BackboneColoring c;
  c.lambda = lambda;
  c.colors.resize(f.size());
  for (Vertex v = 0; v < f.size(); ++v) c.colors[v] = v + 1;
  c.max_color = static_cast<Color>(f.size());
  return c;
}

}  // namespace detail

/**
 * @brief Two-block coloring: the smaller class on [1, |C2|], the larger on
 * [L + 1, L + |C1|] with L = max(lambda, |C2|).
 *
 * Uses max colour max(lambda + |C1|, n). Component sides are oriented greedily
 * to keep |C1| small. A forest without edges is colored 1..n.
 */
inline BackboneColoring color_direct(const Forest& f, std::int64_t lambda) {
  require_lambda(lambda);
  if (f.edge_count() == 0) return detail::sequential_coloring(f, lambda);
  TwoColoring tc = two_coloring(f, OrientationPolicy::GreedyBalanced);
  std::vector<Vertex> c1;
  std::vector<Vertex> c2;
  for (Vertex v = 0; v < f.size(); ++v) (tc.side[v] == 1 ? c1 : c2).push_back(v);
  const auto n1 = static_cast<Color>(c1.size());
  const auto n2 = static_cast<Color>(c2.size());
  const Color offset = std::max<Color>(lambda, n2);
  return color_bipartition_intervals(f, c2, c1, {1, n2}, {offset + 1, offset + n1}, lambda);
}

/// Sets and constants of the decomposition-based color layout.
struct DecompositionLayout {
  Color L = 0;
  Color D = 0;
  Color M = 0;
  std::vector<Vertex> y1, y2, b1, b2, b_rest, r1, r2, r_rest;
};

namespace detail {

struct DecompositionColoring {
  BackboneColoring coloring;
  DecompositionLayout layout;
  RbyDecomposition decomposition;
};

inline DecompositionColoring color_via_decomposition_detailed(const Forest& f,
                                                              std::int64_t lambda) {
  require_lambda(lambda);
  DecompositionColoring out;
  if (f.edge_count() == 0) {
    out.coloring = sequential_coloring(f, lambda);
    return out;
  }
  const std::size_t n = f.size();
  RbyDecomposition d = rby_decompose_forest(f, 0);
  out.decomposition = d;

  enum : std::uint8_t { Red = 1, Blue = 2, Yellow = 3 };
  Buffer<std::uint8_t> tag(n);
  for (Vertex v : d.red) tag[v] = Red;
  for (Vertex v : d.blue) tag[v] = Blue;
  for (Vertex v : d.yellow) tag[v] = Yellow;

  // Parity of each vertex once red-blue edges are contracted.
  Buffer<std::uint8_t> parity(n, 0);
  {
    Buffer<std::uint8_t> seen(n, 0);
    Buffer<Vertex> stack;
    for (Vertex root : f.component_roots()) {
      seen[root] = 1;
      stack.push_back(root);
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : f.neighbors(v)) {
          if (seen[w]) continue;
          seen[w] = 1;
          bool flip = tag[v] == Yellow || tag[w] == Yellow;
          parity[w] = static_cast<std::uint8_t>(parity[v] ^ (flip ? 1U : 0U));
          stack.push_back(w);
        }
      }
    }
  }
  DecompositionLayout& lay = out.layout;
  for (Vertex v : d.yellow) (parity[v] == 0 ? lay.y1 : lay.y2).push_back(v);
  if (lay.y1.size() < lay.y2.size()) std::swap(lay.y1, lay.y2);

  const auto half = static_cast<Color>(n / 2);
  lay.L = std::max<Color>(half, lambda);
  lay.D = std::max<Color>(static_cast<Color>(f.max_degree()), 1);
  const Color L = lay.L;
  const Color D = lay.D;
  const auto ny1 = static_cast<Color>(lay.y1.size());
  const auto ny2 = static_cast<Color>(lay.y2.size());
  lay.M = 2 * L + D * D * ny1 + D * ny2;

  Buffer<std::uint8_t> group(n, 0);
  enum : std::uint8_t { GY1 = 1, GY2, GB1, GB2, GR1, GR2 };
  for (Vertex v : lay.y1) group[v] = GY1;
  for (Vertex v : lay.y2) group[v] = GY2;
  // Members of `from_tag` adjacent to the group `near_set`, ascending.
  auto collect = [&](std::uint8_t from_tag, const std::vector<Vertex>& near_set,
                     std::uint8_t new_group, std::vector<Vertex>& dest) {
    for (Vertex u : near_set) {
      for (Vertex v : f.neighbors(u)) {
        if (tag[v] != from_tag) continue;
        if (group[v] != 0 && group[v] != new_group) {
          throw std::logic_error("layout: vertex " + std::to_string(v) + " in two groups");
        }
        if (group[v] == 0) {
          group[v] = new_group;
          dest.push_back(v);
        }
      }
    }
    std::sort(dest.begin(), dest.end());
  };
  collect(Blue, lay.y1, GB1, lay.b1);
  collect(Red, lay.b1, GR1, lay.r1);
  collect(Red, lay.y2, GR2, lay.r2);
  collect(Blue, lay.r2, GB2, lay.b2);
  for (Vertex v = 0; v < n; ++v) {
    if (group[v] == 0) (tag[v] == Blue ? lay.b_rest : lay.r_rest).push_back(v);
  }

  std::vector<Color> color(n, 0);
  for (std::size_t i = 0; i < lay.y1.size(); ++i) color[lay.y1[i]] = static_cast<Color>(i + 1);

  // Orders `set` by the extreme color among neighbors in `near`, then assigns colors
  // downward from `top` (descending keys) or upward from `bottom` (ascending keys).
  auto place = [&](std::vector<Vertex>& set, std::uint8_t near, bool from_top, Color anchor) {
    std::vector<std::pair<Color, Vertex>> keyed;
    keyed.reserve(set.size());
    for (Vertex v : set) {
      Color key = from_top ? 0 : std::numeric_limits<Color>::max();
      for (Vertex w : f.neighbors(v)) {
        if (group[w] != near) continue;
        key = from_top ? std::max(key, color[w]) : std::min(key, color[w]);
      }
      keyed.emplace_back(key, v);
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return from_top ? x.first > y.first : x.first < y.first;
      return x.second < y.second;
    });
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      auto step = static_cast<Color>(i);
      color[keyed[i].second] = from_top ? anchor - step : anchor + step;
    }
  };
  place(lay.b1, GY1, true, L + D * ny1);
  place(lay.r1, GB1, true, 2 * L + D * D * ny1);
  for (std::size_t i = 0; i < lay.y2.size(); ++i) {
    color[lay.y2[i]] = lay.M - ny2 + 1 + static_cast<Color>(i);
  }
  place(lay.r2, GY2, false, L + D * D * ny1 + 1);
  place(lay.b2, GR2, false, D * ny1 + 1);

  ColorInterval ib{D * ny1 + 1 + static_cast<Color>(lay.b2.size()),
                   L + D * ny1 - static_cast<Color>(lay.b1.size())};
  ColorInterval ir{L + D * D * ny1 + 1 + static_cast<Color>(lay.r2.size()),
                   2 * L + D * D * ny1 - static_cast<Color>(lay.r1.size())};
  Buffer<std::uint8_t> side(n, 0);
  for (Vertex v : lay.b_rest) side[v] = 1;
  for (Vertex v : lay.r_rest) side[v] = 2;
  check_two_interval_preconditions(f, side, lay.b_rest.size(), lay.r_rest.size(), ib, ir, lambda);
  color_two_intervals(f, side, lay.b_rest, lay.r_rest, ib, ir, color);

  out.coloring.lambda = lambda;
  out.coloring.colors = std::move(color);
  out.coloring.max_color = *std::max_element(out.coloring.colors.begin(), out.coloring.colors.end());
  if (out.coloring.max_color > lay.M) {
    throw std::logic_error("layout: max color " + std::to_string(out.coloring.max_color) +
                           " exceeds " + std::to_string(lay.M));
  }
  return out;
}

}  // namespace detail

/**
 * @brief Coloring built on a (0, ceil(log2 n)) red-blue-yellow decomposition.
 *
 * Max colour at most max(n, 2 lambda) + D^2 ceil(log2 n) with D the maximum degree.
 * A forest without edges is colored 1..n.
 */
inline BackboneColoring color_via_decomposition(const Forest& f, std::int64_t lambda) {
  return detail::color_via_decomposition_detailed(f, lambda).coloring;
}

/**
 * Joins the components of a forest into one tree by linking a leaf (or isolated
 * vertex) of each component to one of the next. The maximum degree is unchanged.
 */
inline Tree augment_forest_to_tree(const Forest& f) {
  if (f.size() == 0) throw Error(ErrorCode::NotATree, "empty forest");
  if (f.connected()) return Tree::from(f);
  if (f.max_degree() < 2) {
    throw Error(ErrorCode::DegreeTooSmall, "max degree " + std::to_string(f.max_degree()) + " < 2");
  }
  const std::size_t r = f.component_count();
  std::vector<Vertex> first(r, kNoVertex);
  std::vector<Vertex> last(r, kNoVertex);
  for (Vertex v = 0; v < f.size(); ++v) {
    if (f.degree(v) > 1) continue;
    auto c = f.component_of(v);
    if (first[c] == kNoVertex) first[c] = v;
    last[c] = v;
  }
  std::vector<Edge> edges = f.edges();
  for (std::size_t c = 0; c + 1 < r; ++c) edges.emplace_back(last[c], first[c + 1]);
  return build_tree(f.size(), std::move(edges));
}

/// The better of the direct and the decomposition colorings; ties go to the direct one.
inline BackboneColoring color_best(const Forest& f, std::int64_t lambda) {
  BackboneColoring best = color_direct(f, lambda);
  auto consider = [&](BackboneColoring c) {
    if (c.max_color < best.max_color) best = std::move(c);
  };
  consider(color_via_decomposition(f, lambda));
  if (!f.connected() && f.size() > 0 && f.max_degree() >= 2) {
    Tree t = augment_forest_to_tree(f);
    consider(color_direct(t, lambda));
    consider(color_via_decomposition(t, lambda));
  }
  return best;
}

/**
 * Smallest possible larger class over all 2-colorings of the forest without its
 * isolated vertices (subset sum over component imbalances).
 */
inline std::size_t min_larger_class(const Forest& f) {
  ComponentBipartition cb = component_bipartition(f);
  std::size_t base = 0;
  std::vector<std::size_t> weights;
  for (std::uint32_t c = 0; c < f.component_count(); ++c) {
    if (cb.root_side[c] + cb.other_side[c] < 2) continue;
    base += std::min(cb.root_side[c], cb.other_side[c]);
    weights.push_back(cb.imbalance(c));
  }
  std::size_t total = 0;
  std::map<std::size_t, std::size_t> multiplicity;
  for (auto w : weights) {
    total += w;
    if (w > 0) ++multiplicity[w];
  }
  boost::dynamic_bitset<> reach(total + 1);
  reach.set(0);
  for (auto [w, m] : multiplicity) {
    // Binary splitting: chunks 1, 2, 4, ... and a remainder cover every count in [0, m].
    for (std::size_t chunk = 1; m > 0; chunk *= 2) {
      std::size_t take = std::min(chunk, m);
      reach |= reach << (w * take);
      m -= take;
    }
  }
  std::size_t best = total;
  for (std::size_t s = (total + 1) / 2; s <= total; ++s) {
    if (reach.test(s)) {
      best = s;
      break;
    }
  }
  return base + best;
}

/// max{n, min{lambda + |C1|, 2 lambda + 1}}, with |C1| the smallest achievable larger class.
inline Color lower_bound(const Forest& f, std::int64_t lambda) {
  require_lambda(lambda);
  const auto n = static_cast<Color>(f.size());
  if (f.edge_count() == 0) return n;
  const auto c1 = static_cast<Color>(min_larger_class(f));
  return std::max(n, std::min(lambda + c1, 2 * lambda + 1));
}

}  // namespace bbc

#endif  // BBC_COLORING_HPP
