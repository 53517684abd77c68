#ifndef BBC_FIB_BOUNDS_HPP
#define BBC_FIB_BOUNDS_HPP

#include "bbc/coloring.hpp"
#include "bbc/error.hpp"
#include "bbc/exact.hpp"
#include "bbc/fibonacci.hpp"
#include "bbc/forest.hpp"
#include "bbc/rby.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace bbc {

// ---------------------------------------------------------------------------
// Signed Fibonacci representations of (F_N - k + l) / 2.

struct RepresentationQuery {
  unsigned order = 0;  ///< N
  BigInt k = 0;
  unsigned l = 1;
};

struct SignedTerm {
  unsigned position = 0;  ///< j, standing for F_j
  int sign = 1;
};

struct RepresentationWitness {
  unsigned y = 0;
  std::vector<SignedTerm> terms;  ///< increasing positions
};

enum class RepresentationOutcome { Found, Parity, Exhausted };

inline std::string_view to_string(RepresentationOutcome o) {
  switch (o) {
    case RepresentationOutcome::Found: return "found";
    case RepresentationOutcome::Parity: return "parity";
    case RepresentationOutcome::Exhausted: return "exhausted";
  }
  return "unknown";
}

struct RepresentationResult {
  RepresentationOutcome outcome = RepresentationOutcome::Exhausted;
  std::optional<BigInt> target;  ///< absent when F_N - k + l is odd
  std::optional<RepresentationWitness> witness;
  [[nodiscard]] bool found() const { return outcome == RepresentationOutcome::Found; }
};

inline constexpr unsigned kMaxRepresentationOrder = 200;
inline constexpr double kMaxRepresentationWork = 1e9;

/// C(N, 2l+1) * 2^(2l+1) * (l+1), the size of the enumerated space.
inline double representation_work(unsigned order, unsigned l) {
  const unsigned s = 2 * l + 1;
  if (s > order) return std::pow(2.0, order) * std::pow(2.0, s) * (l + 1);
  double c = 1;
  for (unsigned i = 0; i < s; ++i) c = c * (order - i) / (i + 1);
  return c * std::pow(2.0, s) * (l + 1);
}

/**
 * @brief Searches y in [0, l] and at most 2l+1 signed Fibonacci terms summing to the target.
 *
 * Order: y ascending, then support size, then positions lexicographically, then signs
 * with + before -. The last term is looked up rather than enumerated.
 */
inline RepresentationResult representation_search(const RepresentationQuery& q) {
  if (q.order < 1 || q.order > kMaxRepresentationOrder) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "N=" + std::to_string(q.order) + " outside [1, " +
                    std::to_string(kMaxRepresentationOrder) + "]");
  }
  if (q.l < 1 || q.k < 0) throw Error(ErrorCode::InvalidArgument, "need l >= 1 and k >= 0");
  if (representation_work(q.order, q.l) > kMaxRepresentationWork) {
    throw Error(ErrorCode::SearchSpaceTooLarge, "enumeration exceeds the work guard");
  }
  const unsigned N = q.order;
  const std::vector<BigInt> f = fib_table(N);
  RepresentationResult result;
  BigInt twice = f[N] - q.k + q.l;
  if (twice % 2 != 0) {
    result.outcome = RepresentationOutcome::Parity;
    return result;
  }
  const BigInt target = twice / 2;
  result.target = target;

  std::map<BigInt, unsigned> largest_index;  // value -> largest j with F_j = value
  for (unsigned j = 1; j <= N; ++j) largest_index[f[j]] = j;
  // Smallest j > after with F_j == value (F_1 = F_2 is the only repeat).
  auto position_of = [&](const BigInt& value, unsigned after) -> unsigned {
    auto it = largest_index.find(value);
    if (it == largest_index.end()) return 0;
    unsigned j = it->second;
    if (j == 2 && after == 0) return 1;
    return j > after ? j : 0;
  };

  const unsigned max_support = 2 * q.l + 1;
  std::vector<unsigned> pos;
  for (unsigned y = 0; y <= q.l; ++y) {
    const BigInt rest = target - y;
    if (rest == 0) {
      result.outcome = RepresentationOutcome::Found;
      result.witness = RepresentationWitness{y, {}};
      return result;
    }
    for (unsigned s = 1; s <= max_support && s <= N; ++s) {
      // Prefix positions p_1 < ... < p_{s-1}; the last term is looked up.
      pos.assign(s - 1, 0);
      for (unsigned i = 0; i + 1 < s; ++i) pos[i] = i + 1;
      for (;;) {
        const unsigned after = s == 1 ? 0 : pos.back();
        if (after < N) {
          unsigned best_j = 0;
          std::uint64_t best_mask = 0;
          int best_sign = 0;
          const std::uint64_t patterns = std::uint64_t{1} << (s - 1);
          for (std::uint64_t mask = 0; mask < patterns; ++mask) {
            // Bit i (from the most significant prefix term) set means minus.
            BigInt partial = 0;
            for (unsigned i = 0; i + 1 < s; ++i) {
              bool minus = (mask >> (s - 2 - i)) & 1U;
              partial += minus ? BigInt(-f[pos[i]]) : f[pos[i]];
            }
            BigInt last = rest - partial;
            if (last == 0) continue;
            int sign = last > 0 ? 1 : -1;
            unsigned j = position_of(sign > 0 ? last : BigInt(-last), after);
            if (j == 0) continue;
            bool better = best_j == 0 || j < best_j ||
                          (j == best_j && (mask < best_mask || (mask == best_mask && sign > best_sign)));
            if (better) {
              best_j = j;
              best_mask = mask;
              best_sign = sign;
            }
          }
          if (best_j != 0) {
            RepresentationWitness w;
            w.y = y;
            for (unsigned i = 0; i + 1 < s; ++i) {
              bool minus = (best_mask >> (s - 2 - i)) & 1U;
              w.terms.push_back({pos[i], minus ? -1 : 1});
            }
            w.terms.push_back({best_j, best_sign});
            result.outcome = RepresentationOutcome::Found;
            result.witness = std::move(w);
            return result;
          }
        }
        // Next prefix in lexicographic order, leaving room for the last term.
        if (s == 1) break;
        int i = static_cast<int>(s) - 2;
        const unsigned m = s - 1;
        while (i >= 0 && pos[static_cast<unsigned>(i)] == N - 1 - (m - 1 - static_cast<unsigned>(i))) --i;
        if (i < 0) break;
        ++pos[static_cast<unsigned>(i)];
        for (unsigned t = static_cast<unsigned>(i) + 1; t < m; ++t) pos[t] = pos[t - 1] + 1;
      }
    }
  }
  result.outcome = RepresentationOutcome::Exhausted;
  return result;
}

/// y + sum of the signed terms, for checking witnesses.
inline BigInt representation_value(const RepresentationWitness& w) {
  BigInt sum = w.y;
  for (const auto& t : w.terms) sum += t.sign > 0 ? fib(t.position) : BigInt(-fib(t.position));
  return sum;
}

// ---------------------------------------------------------------------------
// Impossibility premise.

struct KRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  [[nodiscard]] bool empty() const { return hi < lo; }
};

/// [0, min{lambda - 1, 2 lambda - n + l}]; requires 2 lambda + l >= n.
inline KRange impossibility_k_range(std::int64_t n, std::int64_t lambda, std::int64_t l) {
  if (2 * lambda + l < n) {
    throw Error(ErrorCode::HypothesisViolated,
                "2*lambda + l = " + std::to_string(2 * lambda + l) + " < n = " + std::to_string(n));
  }
  return {0, std::min(lambda - 1, 2 * lambda - n + l)};
}

enum class ImpossibilityVerdict { PremiseFails, Confirmed, Contradicted };

inline std::string_view to_string(ImpossibilityVerdict v) {
  switch (v) {
    case ImpossibilityVerdict::PremiseFails: return "premise_fails";
    case ImpossibilityVerdict::Confirmed: return "confirmed";
    case ImpossibilityVerdict::Contradicted: return "contradicted";
  }
  return "unknown";
}

struct ImpossibilityReport {
  std::int64_t n = 0;
  std::int64_t lambda = 0;
  std::int64_t l = 0;
  KRange range;
  /// k values for which a (k, l)-decomposition exists.
  std::vector<std::int64_t> decomposable;
  bool premise_holds = false;
  /// Whether a coloring within 2 lambda + l exists (only searched when the premise holds).
  std::optional<bool> fits_within_bound;
  std::optional<Color> exact_value;
  ImpossibilityVerdict verdict = ImpossibilityVerdict::PremiseFails;
  [[nodiscard]] bool consistent() const { return verdict != ImpossibilityVerdict::Contradicted; }
};

/**
 * Runs the exhaustive decomposition search over the whole k-range and, when no
 * decomposition exists, checks that no coloring fits into [1, 2 lambda + l].
 * With `with_exact` the exact BBC number is attached as well.
 */
inline ImpossibilityReport impossibility_check(const Tree& t, std::int64_t lambda, std::int64_t l,
                                               bool with_exact = false) {
  require_lambda(lambda);
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "l must be positive");
  if (t.size() > kMaxExactVertices) {
    throw Error(ErrorCode::InstanceTooLarge,
                "impossibility check limited to n <= " + std::to_string(kMaxExactVertices));
  }
  ImpossibilityReport rep;
  rep.n = static_cast<std::int64_t>(t.size());
  rep.lambda = lambda;
  rep.l = l;
  rep.range = impossibility_k_range(rep.n, lambda, l);
  for (std::int64_t k = rep.range.lo; k <= rep.range.hi; ++k) {
    if (exhaustive_rby_search(t, k, l)) rep.decomposable.push_back(k);
  }
  rep.premise_holds = rep.decomposable.empty();
  if (rep.premise_holds) {
    bool fits = decide_bbc_le(t, lambda, 2 * lambda + l).has_value();
    rep.fits_within_bound = fits;
    rep.verdict = fits ? ImpossibilityVerdict::Contradicted : ImpossibilityVerdict::Confirmed;
  }
  if (with_exact) {
    rep.exact_value = exact_bbc(t, lambda).value;
    if (rep.premise_holds && *rep.exact_value <= 2 * lambda + l) {
      rep.verdict = ImpossibilityVerdict::Contradicted;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Certificate for the large-order lower bound.

struct CertificateGate {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct CertificateSearch {
  BigInt k;
  RepresentationResult result;
};

struct CertificateReport {
  unsigned order = 0;
  BigInt n;
  BigInt lambda;
  bool in_regime = false;
  std::int64_t l = 0;
  unsigned k_fib_index = 0;  ///< floor(N/2) - 1
  BigInt k_max;              ///< F at that index
  std::vector<CertificateGate> gates;
  std::vector<CertificateSearch> searches;
  std::optional<ImpossibilityReport> small_scale;
  std::vector<std::string> notes;
  /// max{n, 2 lambda} + log_phi(n)/48 - 3, as a floating-point diagnostic.
  double claimed_bound = 0;

  [[nodiscard]] bool all_hold() const {
    for (const auto& g : gates) {
      if (!g.holds) return false;
    }
    for (const auto& s : searches) {
      if (s.result.found()) return false;
    }
    return !small_scale || small_scale->consistent();
  }
};

inline CertificateReport lower_bound_certificate(unsigned order,
                                                 std::optional<BigInt> lambda = std::nullopt) {
  if (order < 1 || order > kMaxRepresentationOrder) {
    throw Error(ErrorCode::OrderOutOfRange, "order " + std::to_string(order));
  }
  CertificateReport rep;
  rep.order = order;
  const BigInt fn = fib(order);
  rep.n = 3 * fn - 2;
  rep.lambda = lambda ? *lambda : BigInt(rep.n / 2);
  rep.in_regime = order >= 96;
  rep.l = static_cast<std::int64_t>(order / 48) - 1;
  rep.k_fib_index = order / 2 >= 1 ? order / 2 - 1 : 0;
  rep.k_max = fib(rep.k_fib_index);
  if (order % 48 != 0) rep.notes.push_back("l uses floor(N/48) - 1");
  if (order % 2 != 0) rep.notes.push_back("k range uses F at floor(N/2) - 1");
  {
    using Float = boost::multiprecision::cpp_bin_float_50;
    Float nn(rep.n);
    Float two_lambda(2 * rep.lambda);
    Float base = nn > two_lambda ? nn : two_lambda;
    Float lg = boost::multiprecision::log(nn) / boost::multiprecision::log(Float(std::numbers::phi));
    rep.claimed_bound = static_cast<double>(base + lg / 48 - 3);
  }

  if (!rep.in_regime) {
    rep.notes.push_back("outside theorem regime (N < 96)");
    if (rep.n <= kMaxExactVertices && rep.lambda >= 2 && 2 * rep.lambda + 1 >= rep.n) {
      auto t = fib_tree(order).tree;
      rep.small_scale = impossibility_check(t, static_cast<std::int64_t>(rep.lambda), 1);
    } else {
      rep.notes.push_back("small-scale impossibility check not applicable");
    }
    return rep;
  }

  const BigInt l(rep.l);
  const BigInt upper = 2 * rep.lambda - rep.n + l;  // top of the k-range
  auto gate = [&](std::string name, bool holds, std::string detail) {
    rep.gates.push_back({std::move(name), holds, std::move(detail)});
  };
  gate("l_positive", rep.l >= 1, "l = " + std::to_string(rep.l));
  gate("hypothesis", 2 * rep.lambda + l >= rep.n, "2 lambda + l >= n");
  gate("range_top", upper <= rep.lambda - 1, "2 lambda - n + l <= lambda - 1");
  {
    // F - N/24 + 2 > 2 lambda - n + l, scaled by 24.
    BigInt lhs = 24 * rep.k_max - order + 48;
    BigInt rhs = 24 * upper;
    gate("range_inclusion", lhs > rhs,
         "24 F_" + std::to_string(rep.k_fib_index) + " - N + 48 = " + lhs.str() + " > " + rhs.str());
  }
  gate("pushdown_inclusion", upper + 2 * l <= rep.k_max, "2 lambda - n + 3l <= F");
  gate("budget_below_k", l < rep.k_max, "l < F");

  if (rep.l == 1) {
    std::vector<BigInt> ks;
    for (int i = 0; i <= 8; ++i) ks.emplace_back(i);
    for (int i = 4; i >= 0; --i) ks.push_back(rep.k_max - i);
    for (const auto& k : ks) {
      if (k < 0) continue;
      if ((fn - k + l) % 2 != 0) continue;
      RepresentationQuery q{order, k, static_cast<unsigned>(rep.l)};
      rep.searches.push_back({k, representation_search(q)});
    }
  } else {
    rep.notes.push_back("representation search skipped: only feasible for l = 1");
  }
  return rep;
}

}  // namespace bbc

#endif  // BBC_FIB_BOUNDS_HPP
