#ifndef BBC_RBY_HPP
#define BBC_RBY_HPP

#include "bbc/error.hpp"
#include "bbc/fibonacci.hpp"
#include "bbc/forest.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbc {

/**
 * @brief A partition (R, B, Y) of the vertices with R and B independent.
 *
 * `k` records |R| - |B| and `l` the declared budget on |Y|. Vertex lists are
 * sorted ascending.
 */
struct RbyDecomposition {
  std::vector<Vertex> red;
  std::vector<Vertex> blue;
  std::vector<Vertex> yellow;
  std::int64_t k = 0;
  std::int64_t l = 0;
};

/// Yellow budget used throughout: ceil(log2 n).
inline std::size_t yellow_budget(std::size_t n) { return ceil_log2(n); }

namespace detail {

/**
 * Incremental state of the decomposition. Two labels hold the red/blue vertices;
 * which label is currently called "red" flips whenever the blue side overtakes it.
 * The k padding vertices are never materialized, only counted in label 0.
 */
class RbyBuilder {
 public:
  static constexpr std::uint8_t kUnassigned = 0xFF;
  static constexpr std::uint8_t kYellow = 2;

  RbyBuilder(const Forest& f, std::size_t pad)
      : f_(f), pad_(pad), label_(f.size(), kUnassigned) {
    count_[0] = pad;
  }

  [[nodiscard]] std::size_t diff() const { return count_[red_] - count_[1 - red_]; }

  void assign(Vertex v, std::uint8_t label) {
    label_[v] = label;
    if (label == kYellow) return;
    ++count_[label];
    min_id_[label] = std::min(min_id_[label], v);
  }

  /// Re-establishes red as the larger label (ties: the label holding the smallest id).
  void normalize() {
    auto blue = 1 - red_;
    if (count_[blue] > count_[red_] ||
        (count_[blue] == count_[red_] && min_id_[blue] < min_id_[red_])) {
      red_ = static_cast<std::uint8_t>(blue);
    }
  }

  /// Folds a whole component: its larger side joins blue, its smaller side joins red.
  template <typename Range, typename LargerSide>
  void fold(const Range& vertices, LargerSide in_larger_side) {
    const auto red = red_;
    const auto blue = static_cast<std::uint8_t>(1 - red_);
    for (Vertex v : vertices) assign(v, in_larger_side(v) ? blue : red);
    normalize();
  }

  /// Runs the halving iteration on the unassigned tree containing `start`.
  void iterate(Vertex start) {
    for (Vertex s = start; s != kNoVertex;) s = step(s);
  }

  [[nodiscard]] RbyDecomposition result(std::int64_t k, std::int64_t l) const {
    std::array<std::size_t, 2> real{count_[0] - pad_, count_[1]};
    std::uint8_t red = real[0] > real[1] ? 0 : 1;
    if (real[0] == real[1]) red = min_id_[0] < min_id_[1] ? 0 : 1;
    RbyDecomposition d;
    for (Vertex v = 0; v < f_.size(); ++v) {
      if (label_[v] == kYellow) {
        d.yellow.push_back(v);
      } else if (label_[v] == red) {
        d.red.push_back(v);
      } else if (label_[v] == 1 - red) {
        d.blue.push_back(v);
      } else {
        throw std::logic_error("rby: vertex " + std::to_string(v) + " left unassigned");
      }
    }
    d.k = static_cast<std::int64_t>(d.red.size()) - static_cast<std::int64_t>(d.blue.size());
    d.l = l;
    if (d.k != k) {
      throw std::logic_error("rby: produced |R|-|B|=" + std::to_string(d.k) + ", wanted " +
                             std::to_string(k));
    }
    return d;
  }

 private:
  struct Piece {
    std::size_t imbalance;
    Vertex root;
    std::uint32_t at;   // preorder position of the root
    std::size_t zeros;  // vertices with parity 0 relative to the current start
    std::size_t ones;
    bool upward;        // the piece containing the parent of the separator
  };

  /// Folds the positions [lo, hi) of the current traversal.
  void fold_positions(std::uint32_t lo, std::uint32_t hi, std::uint8_t larger) {
    const auto red = red_;
    const auto blue = static_cast<std::uint8_t>(1 - red_);
    for (std::uint32_t i = lo; i < hi; ++i) assign(order_[i], parity_[i] == larger ? blue : red);
  }

  /// One iteration; returns the start vertex of the next tree or kNoVertex when done.
  /// Subtree data is indexed by preorder position.
  Vertex step(Vertex s) {
    order_.clear();
    up_.clear();
    parity_.clear();
    stack_.clear();
    stack_.push_back({s, kNoVertex});
    while (!stack_.empty()) {
      auto [v, up] = stack_.back();
      stack_.pop_back();
      const auto pos = static_cast<std::uint32_t>(order_.size());
      const Vertex parent = up == kNoVertex ? kNoVertex : order_[up];
      const std::uint8_t parity = up == kNoVertex ? 0 : static_cast<std::uint8_t>(parity_[up] ^ 1U);
      order_.push_back(v);
      up_.push_back(up);
      parity_.push_back(parity);
      for (Vertex w : f_.neighbors(v)) {
        if (w != parent && label_[w] == kUnassigned) {
          f_.prefetch(w);
          stack_.push_back({w, pos});
        }
      }
    }
    const auto m = static_cast<std::uint32_t>(order_.size());
    size_.assign(m, 1);
    ones_.assign(parity_.begin(), parity_.end());
    for (std::uint32_t i = m; i-- > 1;) {
      size_[up_[i]] += size_[i];
      ones_[up_[i]] += ones_[i];
    }
    const std::size_t total_ones = ones_[0];
    const std::size_t total_zeros = m - total_ones;
    const std::size_t tree_imbalance =
        total_zeros > total_ones ? total_zeros - total_ones : total_ones - total_zeros;

    if (diff() == tree_imbalance) {
      // Color the whole remaining tree by its bipartition; the larger side joins blue.
      fold_positions(0, m, total_zeros >= total_ones ? 0 : 1);
      normalize();
      return kNoVertex;
    }

    // Children of position i sit at i + 1, then after each child's subtree.
    std::uint32_t pv = 0;
    for (;;) {
      std::uint32_t heavy = kNoVertex;
      for (std::uint32_t j = pv + 1; j < pv + size_[pv]; j += size_[j]) {
        if (2 * std::size_t{size_[j]} > m) {
          heavy = j;
          break;
        }
      }
      if (heavy == kNoVertex) break;
      pv = heavy;
    }

    const Vertex v = order_[pv];
    pieces_.clear();
    if (pv != 0) {
      Piece p{};
      p.root = order_[up_[pv]];
      p.at = up_[pv];
      p.upward = true;
      p.ones = total_ones - ones_[pv];
      p.zeros = (m - size_[pv]) - p.ones;
      pieces_.push_back(p);
    }
    for (std::uint32_t j = pv + 1; j < pv + size_[pv]; j += size_[j]) {
      Piece p{};
      p.root = order_[j];
      p.at = j;
      p.upward = false;
      p.ones = ones_[j];
      p.zeros = size_[j] - p.ones;
      pieces_.push_back(p);
    }
    for (Piece& p : pieces_) p.imbalance = p.zeros > p.ones ? p.zeros - p.ones : p.ones - p.zeros;
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
      return a.imbalance != b.imbalance ? a.imbalance < b.imbalance : a.root < b.root;
    });

    assign(v, kYellow);
    if (pieces_.empty()) return kNoVertex;

    for (std::size_t j = 0; j + 1 < pieces_.size(); ++j) {
      const Piece& p = pieces_[j];
      // Larger side of the piece; on a tie, the side of the piece root.
      std::uint8_t larger = p.zeros > p.ones ? 0 : (p.ones > p.zeros ? 1 : parity_[p.at]);
      if (p.upward) {
        fold_positions(0, pv, larger);
        fold_positions(pv + size_[pv], m, larger);
      } else {
        fold_positions(p.at, p.at + size_[p.at], larger);
      }
      normalize();
    }
    return pieces_.back().root;
  }

  const Forest& f_;
  std::size_t pad_;
  Buffer<std::uint8_t> label_;
  std::array<std::size_t, 2> count_{0, 0};
  std::array<Vertex, 2> min_id_{kNoVertex, kNoVertex};
  std::uint8_t red_ = 0;

  Buffer<Vertex> order_;
  Buffer<std::pair<Vertex, std::uint32_t>> stack_;
  Buffer<std::uint32_t> up_;
  Buffer<std::uint8_t> parity_;
  Buffer<std::uint32_t> size_;
  Buffer<std::uint32_t> ones_;
  std::vector<Piece> pieces_;
};

}  // namespace detail

/**
 * @brief Red-blue-yellow (k, ceil(log2 n))-decomposition of a forest.
 *
 * Components are sorted by imbalance; all but the last are folded whole into the
 * red/blue sides, the last is split by repeated balanced separators, each of which
 * turns yellow. Linear time apart from sorting the pieces around each separator.
 * A single vertex with k = 0 is rejected: its budget is zero.
 */
inline RbyDecomposition rby_decompose_forest(const Forest& f, std::int64_t k) {
  const std::size_t r = f.component_count();
  // A tree with k = 0 needs neither the range check nor the component sides.
  ComponentBipartition cb;
  if (k != 0 || r > 1) {
    cb = component_bipartition(f);
    std::size_t total = 0;
    for (std::uint32_t c = 0; c < r; ++c) total += cb.imbalance(c);
    if (k < 0 || static_cast<std::size_t>(k) > total) {
      throw Error(ErrorCode::KOutOfRange,
                  "k=" + std::to_string(k) + " outside [0, " + std::to_string(total) + "]");
    }
  }
  if (f.size() == 1 && k == 0) {
    throw Error(ErrorCode::KOutOfRange, "a single vertex has no (0, 0)-decomposition");
  }
  const auto budget = static_cast<std::int64_t>(yellow_budget(f.size()));
  detail::RbyBuilder builder(f, static_cast<std::size_t>(k));
  if (r == 0) return builder.result(k, budget);

  std::vector<std::uint32_t> comps(r);
  std::iota(comps.begin(), comps.end(), 0U);
  std::stable_sort(comps.begin(), comps.end(),
                   [&](auto a, auto b) { return cb.imbalance(a) < cb.imbalance(b); });

  // Bucket vertices by component.
  std::vector<std::size_t> start(r + 1, 0);
  for (Vertex v = 0; v < f.size(); ++v) ++start[f.component_of(v) + 1];
  for (std::size_t c = 0; c < r; ++c) start[c + 1] += start[c];
  std::vector<Vertex> members(f.size());
  {
    auto fill = start;
    for (Vertex v = 0; v < f.size(); ++v) members[fill[f.component_of(v)]++] = v;
  }

  for (std::size_t i = 0; i + 1 < r; ++i) {
    auto c = comps[i];
    std::span<const Vertex> vs(members.data() + start[c], start[c + 1] - start[c]);
    std::uint8_t larger = cb.root_side[c] >= cb.other_side[c] ? 0 : 1;
    builder.fold(vs, [&](Vertex v) { return cb.parity[v] == larger; });
  }
  builder.iterate(f.component_roots()[comps.back()]);
  return builder.result(k, budget);
}

inline RbyDecomposition rby_decompose_tree(const Tree& t, std::int64_t k) {
  return rby_decompose_forest(t, k);
}

// ---------------------------------------------------------------------------

enum class RbyViolationKind {
  VertexOutOfRange,
  NotAPartition,
  RedNotIndependent,
  BlueNotIndependent,
  DifferenceMismatch,
  NegativeDifference,
  YellowBudgetExceeded,
};

inline std::string_view to_string(RbyViolationKind kind) {
  switch (kind) {
    case RbyViolationKind::VertexOutOfRange: return "vertex_out_of_range";
    case RbyViolationKind::NotAPartition: return "not_a_partition";
    case RbyViolationKind::RedNotIndependent: return "red_not_independent";
    case RbyViolationKind::BlueNotIndependent: return "blue_not_independent";
    case RbyViolationKind::DifferenceMismatch: return "difference_mismatch";
    case RbyViolationKind::NegativeDifference: return "negative_difference";
    case RbyViolationKind::YellowBudgetExceeded: return "yellow_budget_exceeded";
  }
  return "unknown";
}

struct RbyViolation {
  RbyViolationKind kind;
  std::vector<Vertex> witness;
  std::string detail;
};

struct RbyReport {
  std::vector<RbyViolation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool has(RbyViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const auto& v) { return v.kind == kind; });
  }
};

/// Checks partition, independence of R and B, |R| - |B| = k >= 0 and |Y| <= l.
inline RbyReport validate_rby(const Forest& f, const RbyDecomposition& d, std::int64_t k,
                              std::int64_t l) {
  RbyReport report;
  const std::size_t n = f.size();
  std::vector<std::uint8_t> where(n, 0);  // 0 none, 1 red, 2 blue, 3 yellow
  auto place = [&](const std::vector<Vertex>& set, std::uint8_t tag) {
    for (Vertex v : set) {
      if (v >= n) {
        report.violations.push_back({RbyViolationKind::VertexOutOfRange, {v}, "no such vertex"});
        continue;
      }
      if (where[v] != 0) {
        report.violations.push_back({RbyViolationKind::NotAPartition, {v}, "vertex listed twice"});
        continue;
      }
      where[v] = tag;
    }
  };
  place(d.red, 1);
  place(d.blue, 2);
  place(d.yellow, 3);
  for (Vertex v = 0; v < n; ++v) {
    if (where[v] == 0) {
      report.violations.push_back({RbyViolationKind::NotAPartition, {v}, "vertex unassigned"});
    }
  }
  for (const auto& [u, v] : f.edges()) {
    if (where[u] == 1 && where[v] == 1) {
      report.violations.push_back({RbyViolationKind::RedNotIndependent, {u, v}, "edge inside R"});
    }
    if (where[u] == 2 && where[v] == 2) {
      report.violations.push_back({RbyViolationKind::BlueNotIndependent, {u, v}, "edge inside B"});
    }
  }
  const auto actual =
      static_cast<std::int64_t>(d.red.size()) - static_cast<std::int64_t>(d.blue.size());
  if (actual != k) {
    report.violations.push_back({RbyViolationKind::DifferenceMismatch, {},
                                 "|R|-|B|=" + std::to_string(actual) + ", expected " +
                                     std::to_string(k)});
  }
  if (k < 0) {
    report.violations.push_back({RbyViolationKind::NegativeDifference, {},
                                 "k=" + std::to_string(k) + " is negative"});
  }
  if (static_cast<std::int64_t>(d.yellow.size()) > l) {
    report.violations.push_back({RbyViolationKind::YellowBudgetExceeded, d.yellow,
                                 "|Y|=" + std::to_string(d.yellow.size()) + " > l=" +
                                     std::to_string(l)});
  }
  return report;
}

inline constexpr std::size_t kMaxExhaustiveRby = 20;

/**
 * Enumerates assignments V -> {R, B, Y} (vertex 0 first, R < B < Y) and returns the
 * lexicographically smallest valid (k, l)-decomposition, if any.
 */
inline std::optional<RbyDecomposition> exhaustive_rby_search(const Forest& f, std::int64_t k,
                                                             std::int64_t l) {
  const std::size_t n = f.size();
  if (n > kMaxExhaustiveRby) {
    throw Error(ErrorCode::InstanceTooLarge,
                "exhaustive search limited to n <= " + std::to_string(kMaxExhaustiveRby));
  }
  if (l < 0) return std::nullopt;
  std::vector<std::uint8_t> side(n, 0);  // 0 red, 1 blue, 2 yellow
  std::int64_t yellow = 0;
  std::int64_t diff = 0;

  auto search = [&](auto&& self, std::size_t i) -> bool {
    const auto remaining = static_cast<std::int64_t>(n - i);
    if (std::abs(k - diff) > remaining) return false;
    if (i == n) return diff == k;
    const auto v = static_cast<Vertex>(i);
    for (std::uint8_t s = 0; s < 3; ++s) {
      if (s == 2) {
        if (yellow == l) continue;
      } else {
        bool clash = false;
        for (Vertex w : f.neighbors(v)) {
          if (w < v && side[w] == s) {
            clash = true;
            break;
          }
        }
        if (clash) continue;
      }
      side[v] = s;
      std::int64_t delta = s == 0 ? 1 : (s == 1 ? -1 : 0);
      diff += delta;
      yellow += s == 2 ? 1 : 0;
      if (self(self, i + 1)) return true;
      diff -= delta;
      yellow -= s == 2 ? 1 : 0;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  RbyDecomposition d;
  for (Vertex v = 0; v < n; ++v) {
    (side[v] == 0 ? d.red : side[v] == 1 ? d.blue : d.yellow).push_back(v);
  }
  d.k = k;
  d.l = l;
  return d;
}

/**
 * @brief Moves yellow off the Fibonacci-subtree roots of a Fibonacci tree.
 *
 * C1 is the class of the root. Every yellow vertex's C2 neighbors below it become
 * yellow instead; yellow C1 vertices take the color opposite to their parent, or
 * red when the parent is yellow too (or absent). The result has Y' inside C2,
 * |Y'| <= |Y| and 0 <= k' <= k + 2l after swapping R' and B' if needed.
 */
inline RbyDecomposition pushdown_yellow(const Tree& t, const RbyDecomposition& d) {
  auto rec = recognize_fib_tree(t);
  if (!rec) throw Error(ErrorCode::NotFibonacciTree, "backbone is not a Fibonacci tree");
  if (!validate_rby(t, d, d.k, d.l).ok()) {
    throw Error(ErrorCode::InvalidDecomposition, "input is not a valid (k, l)-decomposition");
  }
  const std::size_t n = t.size();
  RootedOrder r = rooted_order(t, rec->root);
  std::vector<std::uint8_t> depth_odd(n, 0);
  for (Vertex v : r.order) {
    if (r.parent[v] != kNoVertex) depth_odd[v] = static_cast<std::uint8_t>(depth_odd[r.parent[v]] ^ 1U);
  }
  enum Side : std::uint8_t { Red, Blue, Yellow };
  std::vector<std::uint8_t> before(n);
  for (Vertex v : d.red) before[v] = Red;
  for (Vertex v : d.blue) before[v] = Blue;
  for (Vertex v : d.yellow) before[v] = Yellow;
  auto parent_yellow = [&](Vertex v) {
    return r.parent[v] != kNoVertex && before[r.parent[v]] == Yellow;
  };

  std::vector<std::uint8_t> after(n);
  for (Vertex v = 0; v < n; ++v) {
    const bool in_c1 = depth_odd[v] == 0;
    if (!in_c1) {
      after[v] = (before[v] == Yellow || parent_yellow(v)) ? std::uint8_t{Yellow} : before[v];
    } else if (before[v] != Yellow) {
      after[v] = before[v];
    } else if (r.parent[v] != kNoVertex && !parent_yellow(v)) {
      after[v] = before[r.parent[v]] == Red ? Blue : Red;
    } else {
      // The parent (if any) and every child end up yellow.
      after[v] = Red;
    }
  }
  RbyDecomposition out;
  for (Vertex v = 0; v < n; ++v) {
    (after[v] == Red ? out.red : after[v] == Blue ? out.blue : out.yellow).push_back(v);
  }
  if (out.red.size() < out.blue.size()) std::swap(out.red, out.blue);
  out.k = static_cast<std::int64_t>(out.red.size()) - static_cast<std::int64_t>(out.blue.size());
  out.l = d.l;
  return out;
}

}  // namespace bbc

#endif  // BBC_RBY_HPP
