#ifndef BBC_FOREST_HPP
#define BBC_FOREST_HPP

#include "bbc/buffer.hpp"
#include "bbc/error.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bbc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/**
 * @brief An undirected simple acyclic graph on the vertices 0..n-1.
 *
 * Adjacency is stored in compressed form with each neighbor list sorted by
 * vertex id. Connected components are numbered in order of their smallest
 * vertex. Instances are immutable once built.
 */
class Forest {
 public:
  Forest() = default;

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  /// Hints that the neighbor list of `v` will be read soon.
  void prefetch(Vertex v) const {
#if defined(__GNUC__) || defined(__clang__)
    __builtin_prefetch(offsets_.data() + v);
#else
    (void)v;
#endif
  }
  [[nodiscard]] std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  [[nodiscard]] std::size_t max_degree() const noexcept { return max_degree_; }

  [[nodiscard]] std::size_t component_count() const noexcept { return component_count_; }
  [[nodiscard]] std::uint32_t component_of(Vertex v) const { return component_of_[v]; }
  /// Smallest vertex of each component, indexed by component id.
  [[nodiscard]] const std::vector<Vertex>& component_roots() const noexcept {
    return component_roots_;
  }

  [[nodiscard]] bool connected() const noexcept { return component_count_ == 1; }
  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  friend Forest build_forest(std::size_t n, std::vector<Edge> edges);

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  Buffer<std::uint32_t> offsets_{0};
  Buffer<Vertex> adj_;
  std::size_t max_degree_ = 0;
  std::size_t component_count_ = 0;
  std::vector<std::uint32_t> component_of_;
  std::vector<Vertex> component_roots_;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace detail

/// Validates and builds a forest. Edge order is preserved for serialization.
inline Forest build_forest(std::size_t n, std::vector<Edge> edges) {
  if (n > kNoVertex / 2) throw Error(ErrorCode::InstanceTooLarge, "vertex count exceeds id range");
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorCode::VertexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with n=" +
                      std::to_string(n));
    }
    if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(u));
  }
  {
    std::vector<Edge> sorted;
    sorted.reserve(edges.size());
    for (auto [u, v] : edges) sorted.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw Error(ErrorCode::DuplicateEdge, "edge (" + std::to_string(dup->first) + "," +
                                                std::to_string(dup->second) + ") repeated");
    }
  }
  detail::DisjointSets sets(n);
  for (const auto& [u, v] : edges) {
    if (!sets.unite(u, v)) {
      throw Error(ErrorCode::CycleDetected,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") closes a cycle");
    }
  }

  Forest f;
  f.n_ = n;
  f.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++f.offsets_[u + 1];
    ++f.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    f.max_degree_ = std::max<std::size_t>(f.max_degree_, f.offsets_[i + 1]);
    f.offsets_[i + 1] += f.offsets_[i];
  }
  f.adj_.resize(2 * edges.size());
  std::vector<std::uint32_t> fill(f.offsets_.begin(), f.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    f.adj_[fill[u]++] = v;
    f.adj_[fill[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(f.adj_.begin() + static_cast<std::ptrdiff_t>(f.offsets_[i]),
              f.adj_.begin() + static_cast<std::ptrdiff_t>(f.offsets_[i + 1]));
  }

  f.component_of_.assign(n, 0);
  std::vector<std::uint32_t> id_of_rep(n, std::numeric_limits<std::uint32_t>::max());
  for (Vertex v = 0; v < n; ++v) {
    Vertex rep = sets.find(v);
    if (id_of_rep[rep] == std::numeric_limits<std::uint32_t>::max()) {
      id_of_rep[rep] = static_cast<std::uint32_t>(f.component_count_++);
      f.component_roots_.push_back(v);
    }
    f.component_of_[v] = id_of_rep[rep];
  }
  f.edges_ = std::move(edges);
  return f;
}

/// A connected forest, optionally carrying a designated root.
class Tree : public Forest {
 public:
  Tree() = default;

  static Tree from(Forest f, std::optional<Vertex> root = std::nullopt) {
    if (f.size() == 0 || !f.connected()) {
      throw Error(ErrorCode::NotATree, "graph on " + std::to_string(f.size()) + " vertices with " +
                                           std::to_string(f.component_count()) + " components");
    }
    if (root && *root >= f.size()) {
      throw Error(ErrorCode::VertexOutOfRange, "root " + std::to_string(*root));
    }
    Tree t;
    static_cast<Forest&>(t) = std::move(f);
    t.root_ = root;
    return t;
  }

  [[nodiscard]] std::optional<Vertex> root() const noexcept { return root_; }

 private:
  std::optional<Vertex> root_;
};

inline Tree build_tree(std::size_t n, std::vector<Edge> edges,
                       std::optional<Vertex> root = std::nullopt) {
  return Tree::from(build_forest(n, std::move(edges)), root);
}

// ---------------------------------------------------------------------------
// Text format: "n m" header, then m lines "u v". '#' lines and blank lines are
// skipped.

inline Forest parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_payload = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
  };

  std::string payload;
  if (!next_payload(payload)) fail("missing header");
  long long n = -1;
  long long m = -1;
  {
    std::istringstream hs(payload);
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0) fail("expected header 'n m'");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_payload(payload)) fail("expected " + std::to_string(m) + " edges");
    std::istringstream es(payload);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(es >> u >> v) || (es >> extra)) fail("expected edge 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::VertexOutOfRange, "line " + std::to_string(line_no) + ": edge (" +
                                                   std::to_string(u) + "," + std::to_string(v) +
                                                   ")");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_payload(payload)) fail("unexpected content after edge list");
  return build_forest(static_cast<std::size_t>(n), std::move(edges));
}

inline Forest parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Forest& f) {
  out << f.size() << ' ' << f.edge_count() << '\n';
  for (const auto& [u, v] : f.edges()) out << u << ' ' << v << '\n';
}

inline std::string format_graph(const Forest& f) {
  std::ostringstream out;
  write_graph(out, f);
  return out.str();
}

// ---------------------------------------------------------------------------
// Traversals.

/// Pre-order of the component containing `root`, with parent links.
struct RootedOrder {
  std::vector<Vertex> order;
  std::vector<Vertex> parent;
};

inline RootedOrder rooted_order(const Forest& f, Vertex root) {
  if (root >= f.size()) throw Error(ErrorCode::VertexOutOfRange, "root " + std::to_string(root));
  RootedOrder r;
  r.parent.assign(f.size(), kNoVertex);
  r.order.reserve(f.size());
  std::vector<Vertex> stack{root};
  r.parent[root] = root;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    r.order.push_back(v);
    auto nb = f.neighbors(v);
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      if (r.parent[*it] == kNoVertex) {
        r.parent[*it] = v;
        stack.push_back(*it);
      }
    }
  }
  r.parent[root] = kNoVertex;
  return r;
}

/// Size of the subtree below each vertex when `t` is rooted at `root`.
inline std::vector<std::size_t> subtree_sizes(const Tree& t, Vertex root) {
  RootedOrder r = rooted_order(t, root);
  std::vector<std::size_t> size(t.size(), 1);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    if (r.parent[*it] != kNoVertex) size[r.parent[*it]] += size[*it];
  }
  return size;
}

/**
 * @brief Finds a vertex whose removal leaves components of at most n/2 vertices.
 *
 * Roots the tree at vertex 0 and walks toward the unique child whose subtree
 * holds more than half of the vertices until no such child exists.
 */
inline Vertex find_balanced_separator(const Tree& t) {
  const std::size_t n = t.size();
  RootedOrder r = rooted_order(t, 0);
  std::vector<std::size_t> size(n, 1);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    if (r.parent[*it] != kNoVertex) size[r.parent[*it]] += size[*it];
  }
  Vertex v = 0;
  for (;;) {
    Vertex heavy = kNoVertex;
    for (Vertex c : t.neighbors(v)) {
      if (c != r.parent[v] && 2 * size[c] > n) {
        heavy = c;
        break;
      }
    }
    if (heavy == kNoVertex) return v;
    v = heavy;
  }
}

// ---------------------------------------------------------------------------
// Two-colorings.

/// Per-component bipartition relative to each component's smallest vertex.
struct ComponentBipartition {
  /// 0 if the vertex lies on the same side as its component root, else 1.
  std::vector<std::uint8_t> parity;
  /// Number of vertices on the root side / the other side of each component.
  std::vector<std::size_t> root_side;
  std::vector<std::size_t> other_side;

  [[nodiscard]] std::size_t imbalance(std::uint32_t component) const {
    auto a = root_side[component];
    auto b = other_side[component];
    return a > b ? a - b : b - a;
  }
};

inline ComponentBipartition component_bipartition(const Forest& f) {
  ComponentBipartition cb;
  constexpr std::uint8_t kUnseen = 2;
  cb.parity.assign(f.size(), kUnseen);
  cb.root_side.assign(f.component_count(), 0);
  cb.other_side.assign(f.component_count(), 0);
  std::vector<Vertex> stack;
  for (Vertex root : f.component_roots()) {
    auto comp = f.component_of(root);
    cb.parity[root] = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      (cb.parity[v] == 0 ? cb.root_side : cb.other_side)[comp] += 1;
      for (Vertex w : f.neighbors(v)) {
        if (cb.parity[w] == kUnseen) {
          cb.parity[w] = static_cast<std::uint8_t>(cb.parity[v] ^ 1U);
          stack.push_back(w);
        }
      }
    }
  }
  return cb;
}

/// How each component of a forest orients its bipartition onto the two global classes.
enum class OrientationPolicy {
  /// Component root in class 1; classes swapped globally if needed so |C1| >= |C2|.
  Canonical,
  /// Components by non-increasing imbalance; each larger side joins the currently smaller class.
  GreedyBalanced,
  /// Subset-sum over component imbalances minimizing |C1|. Quadratic; for small inputs.
  ExactBalanced,
};

struct TwoColoring {
  /// Class 1 or 2 per vertex.
  std::vector<std::uint8_t> side;
  std::size_t class1 = 0;
  std::size_t class2 = 0;

  [[nodiscard]] std::size_t imbalance() const { return class1 - class2; }
};

namespace detail {

/// Which components get their root side mapped onto class 1 (true) for the given policy.
inline std::vector<bool> orient_components(const ComponentBipartition& cb, OrientationPolicy policy) {
  const std::size_t r = cb.root_side.size();
  std::vector<bool> root_in_one(r, true);
  if (policy == OrientationPolicy::Canonical) return root_in_one;

  auto larger_is_root = [&](std::size_t c) { return cb.root_side[c] >= cb.other_side[c]; };

  if (policy == OrientationPolicy::GreedyBalanced) {
    std::vector<std::uint32_t> ids(r);
    std::iota(ids.begin(), ids.end(), 0U);
    std::stable_sort(ids.begin(), ids.end(), [&](auto a, auto b) {
      return cb.imbalance(a) > cb.imbalance(b);
    });
    std::size_t one = 0;
    std::size_t two = 0;
    for (auto c : ids) {
      std::size_t big = std::max(cb.root_side[c], cb.other_side[c]);
      std::size_t small = std::min(cb.root_side[c], cb.other_side[c]);
      // The larger side goes to whichever class is currently smaller.
      bool big_to_one = one <= two;
      if (big_to_one) {
        one += big;
        two += small;
      } else {
        one += small;
        two += big;
      }
      root_in_one[c] = (big_to_one == larger_is_root(c));
    }
    return root_in_one;
  }

  // Exact: choose signs for imbalances so that the sum is as close to zero as possible.
  std::size_t total = 0;
  for (std::size_t c = 0; c < r; ++c) total += cb.imbalance(static_cast<std::uint32_t>(c));
  // reach[c][s]: after the first c components, the "larger sides onto class 1" imbalance
  // sum s is reachable.
  std::vector<std::vector<bool>> reach(r + 1, std::vector<bool>(total + 1, false));
  reach[0][0] = true;
  for (std::size_t c = 0; c < r; ++c) {
    auto w = cb.imbalance(static_cast<std::uint32_t>(c));
    for (std::size_t s = 0; s <= total; ++s) {
      if (!reach[c][s]) continue;
      reach[c + 1][s] = true;
      if (s + w <= total) reach[c + 1][s + w] = true;
    }
  }
  // Pick subset sum s closest to total/2 from above (class 1 takes that many extra).
  std::size_t best = total;
  for (std::size_t s = 0; s <= total; ++s) {
    if (reach[r][s] && 2 * s >= total && s < best) best = s;
  }
  std::size_t s = best;
  for (std::size_t c = r; c-- > 0;) {
    auto w = cb.imbalance(static_cast<std::uint32_t>(c));
    // take: the larger side goes to class 1.
    bool take = !reach[c][s];
    if (take) s -= w;
    root_in_one[c] = (take == larger_is_root(c));
  }
  return root_in_one;
}

}  // namespace detail

/// Proper 2-coloring of a forest, labeled so that |C1| >= |C2|.
inline TwoColoring two_coloring(const Forest& f,
                                OrientationPolicy policy = OrientationPolicy::Canonical) {
  ComponentBipartition cb = component_bipartition(f);
  std::vector<bool> root_in_one = detail::orient_components(cb, policy);
  TwoColoring tc;
  tc.side.resize(f.size());
  for (Vertex v = 0; v < f.size(); ++v) {
    bool on_root_side = cb.parity[v] == 0;
    bool in_one = on_root_side == root_in_one[f.component_of(v)];
    tc.side[v] = in_one ? 1 : 2;
    ++(in_one ? tc.class1 : tc.class2);
  }
  if (tc.class1 < tc.class2) {
    for (auto& s : tc.side) s = static_cast<std::uint8_t>(3 - s);
    std::swap(tc.class1, tc.class2);
  }
  return tc;
}

/// |C1| - |C2| of the unique bipartition of a tree.
inline std::size_t imbalance(const Tree& t) { return two_coloring(t).imbalance(); }

/// Sum of the component imbalances of a forest.
inline std::size_t total_imbalance(const Forest& f) {
  ComponentBipartition cb = component_bipartition(f);
  std::size_t s = 0;
  for (std::uint32_t c = 0; c < f.component_count(); ++c) s += cb.imbalance(c);
  return s;
}

/// Smallest l with 2^l >= n (0 for n <= 1).
inline std::size_t ceil_log2(std::size_t n) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

}  // namespace bbc

#endif  // BBC_FOREST_HPP
