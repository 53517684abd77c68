#ifndef BBC_FIBONACCI_HPP
#define BBC_FIBONACCI_HPP

#include "bbc/error.hpp"
#include "bbc/forest.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace bbc {

using BigInt = boost::multiprecision::cpp_int;

/// F_0 .. F_n with F_1 = F_2 = 1.
inline std::vector<BigInt> fib_table(unsigned n) {
  std::vector<BigInt> f(n + 1);
  f[0] = 0;
  if (n >= 1) f[1] = 1;
  for (unsigned i = 2; i <= n; ++i) f[i] = f[i - 1] + f[i - 2];
  return f;
}

inline BigInt fib(unsigned n) {
  BigInt a = 0;
  BigInt b = 1;
  for (unsigned i = 0; i < n; ++i) {
    BigInt next = a + b;
    a = std::move(b);
    b = std::move(next);
  }
  return a;
}

/// Vertex count 3 F_N - 2 of the N-th Fibonacci tree; exact for N <= 90.
inline std::uint64_t fib_tree_size(unsigned order) {
  std::uint64_t a = 0;
  std::uint64_t b = 1;
  for (unsigned i = 0; i < order; ++i) {
    std::uint64_t next = a + b;
    a = b;
    b = next;
  }
  return 3 * a - 2;
}

inline constexpr unsigned kMaxFibTreeOrder = 30;

struct FibTree {
  unsigned order = 0;
  /// Rooted at vertex 0; vertices numbered in pre-order.
  Tree tree;
};

/**
 * @brief Builds the N-th Fibonacci tree.
 *
 * Orders 1 and 2 are a single vertex. For N >= 3 the root has one child whose two
 * subtrees are the (N-1)-th and (N-2)-th Fibonacci trees, emitted in that order.
 */
inline FibTree fib_tree(unsigned order) {
  if (order < 1 || order > kMaxFibTreeOrder) {
    throw Error(ErrorCode::OrderOutOfRange,
                "order " + std::to_string(order) + " outside [1, " +
                    std::to_string(kMaxFibTreeOrder) + "]");
  }
  const std::uint64_t n = fib_tree_size(order);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  auto build = [&](auto&& self, unsigned k, Vertex root) -> Vertex {
    if (k <= 2) return root + 1;
    Vertex child = root + 1;
    edges.emplace_back(root, child);
    Vertex first = root + 2;
    edges.emplace_back(child, first);
    Vertex second = self(self, k - 1, first);
    edges.emplace_back(child, second);
    return self(self, k - 2, second);
  };
  build(build, order, 0);
  return {order, build_tree(n, std::move(edges), Vertex{0})};
}

struct FibOrder {
  unsigned order = 0;          ///< N recovered from n = 3 F_N - 2 by integer search
  unsigned floor_log_phi = 0;  ///< floor(log_phi n), floating-point diagnostic
  bool in_regime = false;      ///< n >= 10, where the two are claimed to agree
  [[nodiscard]] bool consistent() const { return order == floor_log_phi; }
};

inline FibOrder fib_order_from_size(std::uint64_t n) {
  FibOrder out;
  bool found = false;
  for (unsigned k = 1; k <= 90; ++k) {
    auto s = fib_tree_size(k);
    if (s == n) {
      out.order = k;
      found = true;
      break;
    }
    if (s > n) break;
  }
  if (!found) {
    throw Error(ErrorCode::NotAFibTreeSize, std::to_string(n) + " is not of the form 3F_N - 2");
  }
  out.floor_log_phi = static_cast<unsigned>(
      std::floor(std::log(static_cast<double>(n)) / std::log(std::numbers::phi)));
  out.in_regime = n >= 10;
  return out;
}

struct FibRecognition {
  unsigned order = 0;
  Vertex root = 0;
};

namespace detail {

inline bool matches_fib_shape(const Forest& t, Vertex root, unsigned order) {
  RootedOrder r = rooted_order(t, root);
  std::vector<std::uint64_t> size(t.size(), 1);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    if (r.parent[*it] != kNoVertex) size[r.parent[*it]] += size[*it];
  }
  auto child_count = [&](Vertex v) { return t.degree(v) - (r.parent[v] == kNoVertex ? 0 : 1); };
  auto children = [&](Vertex v) {
    std::vector<Vertex> out;
    for (Vertex w : t.neighbors(v)) {
      if (w != r.parent[v]) out.push_back(w);
    }
    return out;
  };
  std::vector<std::pair<Vertex, unsigned>> stack{{root, order}};
  while (!stack.empty()) {
    auto [v, k] = stack.back();
    stack.pop_back();
    if (size[v] != fib_tree_size(k)) return false;
    if (k <= 2) {
      if (child_count(v) != 0) return false;
      continue;
    }
    if (child_count(v) != 1) return false;
    Vertex u = children(v).front();
    if (child_count(u) != 2) return false;
    auto sub = children(u);
    Vertex a = sub[0];
    Vertex b = sub[1];
    if (size[a] != fib_tree_size(k - 1)) std::swap(a, b);
    stack.emplace_back(a, k - 1);
    stack.emplace_back(b, k - 2);
  }
  return true;
}

}  // namespace detail

/**
 * @brief Decides whether an unrooted tree is a Fibonacci tree and locates its root.
 *
 * The root's only neighbor u splits T - u into pieces of sizes 1, |T_{N-1}| and
 * |T_{N-2}|. Every vertex with that split pattern is tried as the parent of the root.
 */
inline std::optional<FibRecognition> recognize_fib_tree(const Tree& t) {
  const std::uint64_t n = t.size();
  unsigned order = 0;
  for (unsigned k = 1; k <= 90; ++k) {
    if (fib_tree_size(k) == n) {
      order = k;
      break;
    }
    if (fib_tree_size(k) > n) break;
  }
  if (order == 0) return std::nullopt;
  if (order <= 2) return FibRecognition{1, 0};

  RootedOrder r = rooted_order(t, 0);
  std::vector<std::uint64_t> size(n, 1);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    if (r.parent[*it] != kNoVertex) size[r.parent[*it]] += size[*it];
  }
  const std::uint64_t big = fib_tree_size(order - 1);
  const std::uint64_t small = fib_tree_size(order - 2);
  for (Vertex u = 0; u < n; ++u) {
    if (t.degree(u) != 3) continue;
    std::vector<std::uint64_t> parts;
    Vertex leaf = kNoVertex;
    for (Vertex w : t.neighbors(u)) {
      std::uint64_t part = (w == r.parent[u]) ? n - size[u] : size[w];
      parts.push_back(part);
      if (part == 1 && t.degree(w) == 1 && leaf == kNoVertex) leaf = w;
    }
    std::sort(parts.begin(), parts.end());
    std::vector<std::uint64_t> want{1, big, small};
    std::sort(want.begin(), want.end());
    if (parts != want || leaf == kNoVertex) continue;
    if (detail::matches_fib_shape(t, leaf, order)) return FibRecognition{order, leaf};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Zeckendorf representations. Position j (1-based) stands for F_j; since
// F_1 = F_2 = 1, a unit term may sit at either position 1 or 2.

class ZeckendorfRep {
 public:
  ZeckendorfRep() = default;
  /// bits[0] is position 1. Trailing zeros are trimmed.
  explicit ZeckendorfRep(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    while (!bits_.empty() && bits_.back() == 0) bits_.pop_back();
  }

  [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  [[nodiscard]] bool at(std::size_t position) const {
    return position >= 1 && position <= bits_.size() && bits_[position - 1] != 0;
  }
  [[nodiscard]] std::vector<unsigned> ones() const {
    std::vector<unsigned> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) out.push_back(static_cast<unsigned>(i + 1));
    }
    return out;
  }
  [[nodiscard]] std::size_t weight() const { return ones().size(); }
  [[nodiscard]] bool has_adjacent_ones() const {
    for (std::size_t i = 1; i < bits_.size(); ++i) {
      if (bits_[i] && bits_[i - 1]) return true;
    }
    return false;
  }

  friend bool operator==(const ZeckendorfRep&, const ZeckendorfRep&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Where the greedy places a trailing unit term.
enum class UnitPosition { First, Second };

/// Greedy Zeckendorf representation: repeatedly subtract the largest Fibonacci number.
inline ZeckendorfRep zeckendorf(const BigInt& value, UnitPosition unit = UnitPosition::First) {
  if (value < 0) throw Error(ErrorCode::InvalidArgument, "negative value");
  if (value == 0) return {};
  std::vector<BigInt> f{0, 1, 1};
  while (f.back() <= value) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  // f.back() > value; positions up to f.size() - 2 may be used.
  std::vector<std::uint8_t> bits(f.size() - 2, 0);
  BigInt rest = value;
  for (std::size_t j = f.size() - 2; j >= 3 && rest > 0; --j) {
    if (f[j] <= rest) {
      bits[j - 1] = 1;
      rest -= f[j];
      --j;
    }
  }
  if (rest == 1) bits[unit == UnitPosition::First ? 0 : 1] = 1;
  return ZeckendorfRep(std::move(bits));
}

inline BigInt zeckendorf_value(const ZeckendorfRep& z) {
  if (z.has_adjacent_ones()) throw Error(ErrorCode::AdjacentOnes, "consecutive ones in representation");
  BigInt a = 0;
  BigInt b = 1;
  BigInt sum = 0;
  for (auto bit : z.bits()) {
    // b is F_j for the current position j.
    if (bit) sum += b;
    BigInt next = a + b;
    a = std::move(b);
    b = std::move(next);
  }
  return sum;
}

/// Equality of represented values' digit patterns with position 2 folded onto position 1.
inline bool same_up_to_unit_alias(const ZeckendorfRep& a, const ZeckendorfRep& b) {
  auto fold = [](const ZeckendorfRep& z) {
    auto bits = z.bits();
    if (bits.size() >= 2 && bits[1]) {
      bits[1] = 0;
      bits[0] = 1;
    }
    return ZeckendorfRep(bits);
  };
  return fold(a) == fold(b);
}

}  // namespace bbc

#endif  // BBC_FIBONACCI_HPP
