#include "bbc/coloring.hpp"
#include "bbc/exact.hpp"
#include "bbc/fibonacci.hpp"
#include "bbc/generators.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace bbc;

namespace {

/// Verifier-independent validity check.
bool valid(const Forest& f, std::int64_t lambda, const BackboneColoring& c) {
  if (c.colors.size() != f.size()) return false;
  std::set<Color> seen;
  for (Color x : c.colors) {
    if (x < 1 || !seen.insert(x).second) return false;
  }
  for (auto [u, v] : f.edges()) {
    if (std::abs(c.colors[u] - c.colors[v]) < lambda) return false;
  }
  return f.size() == 0 || c.max_color == *seen.rbegin();
}

Color decomposition_bound(const Forest& f, std::int64_t lambda) {
  auto n = static_cast<Color>(f.size());
  auto d = static_cast<Color>(f.max_degree());
  return std::max(n, 2 * lambda) + d * d * static_cast<Color>(ceil_log2(f.size()));
}

Color direct_value(const Forest& f, std::int64_t lambda) {
  TwoColoring tc = two_coloring(f, OrientationPolicy::GreedyBalanced);
  return std::max<Color>(lambda + static_cast<Color>(tc.class1), static_cast<Color>(f.size()));
}

Forest random_forest(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Tree t = gen_random_tree(n, std::nullopt, rng.next());
  std::vector<Edge> kept;
  for (auto e : t.edges()) {
    if (rng.below(4) != 0) kept.push_back(e);
  }
  return build_forest(n, kept);
}

}  // namespace

TEST(Intervals, ForcedSingletons) {
  auto c = color_bipartition_intervals(path_tree(2), {0}, {1}, {1, 1}, {3, 3}, 2);
  EXPECT_EQ(c.colors, (std::vector<Color>{1, 3}));
}

TEST(Intervals, PathOfFour) {
  Tree p = path_tree(4);
  auto c = color_bipartition_intervals(p, {0, 2}, {1, 3}, {1, 2}, {4, 5}, 3);
  EXPECT_TRUE(valid(p, 3, c));
  for (Vertex v : {0U, 2U}) EXPECT_LE(c.colors[v], 2);
  for (Vertex v : {1U, 3U}) EXPECT_GE(c.colors[v], 4);
}

TEST(Intervals, Empty) {
  auto c = color_bipartition_intervals(build_forest(0, {}), {}, {}, {1, 0}, {3, 2}, 2);
  EXPECT_TRUE(c.colors.empty());
}

TEST(Intervals, PreconditionErrors) {
  Tree p = path_tree(2);
  auto code = [&](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code([&] { color_bipartition_intervals(p, {0, 1}, {}, {1, 2}, {4, 3}, 2); }),
            ErrorCode::NotIndependent);
  EXPECT_EQ(code([&] { color_bipartition_intervals(p, {0}, {1}, {1, 1}, {2, 2}, 2); }),
            ErrorCode::PreconditionViolated);
  EXPECT_EQ(code([&] { color_bipartition_intervals(p, {0}, {1}, {1, 0}, {3, 3}, 2); }),
            ErrorCode::PreconditionViolated);
}

TEST(Intervals, TightIntervalsOnRandomForests) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::size_t n = 1 + seed % 40;
    Forest f = random_forest(n, seed);
    TwoColoring tc = two_coloring(f);
    std::vector<Vertex> a, b;
    for (Vertex v = 0; v < n; ++v) (tc.side[v] == 1 ? a : b).push_back(v);
    std::int64_t lambda = 2 + static_cast<std::int64_t>(seed % 7);
    auto na = static_cast<Color>(a.size());
    auto nb = static_cast<Color>(b.size());
    // Each interval exactly as large as its set; B starts lambda after A's start.
    ColorInterval ia{1, na};
    Color start = std::max<Color>(1 + lambda, std::max<Color>(na, 1) + lambda - nb + 1);
    start = std::max(start, na + 1);
    ColorInterval ib{start, start + nb - 1};
    if (ia.lo + lambda > ib.lo || ia.hi + lambda > ib.hi) continue;
    auto c = color_bipartition_intervals(f, a, b, ia, ib, lambda);
    ASSERT_TRUE(valid(f, lambda, c)) << seed;
  }
}

TEST(Direct, Examples) {
  EXPECT_EQ(color_direct(star_tree(4), 2).max_color, 5);
  EXPECT_EQ(color_direct(path_tree(4), 3).max_color, 5);
  auto single = color_direct(build_tree(1, {}), 2);
  EXPECT_EQ(single.colors, (std::vector<Color>{1}));
  EXPECT_THROW(color_direct(path_tree(2), 1), Error);
}

TEST(Direct, ExactValueOnForests) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::size_t n = 1 + seed % 60;
    Forest f = random_forest(n, seed);
    for (std::int64_t lambda : {2, 5, 31}) {
      auto c = color_direct(f, lambda);
      ASSERT_TRUE(valid(f, lambda, c));
      if (f.edge_count() > 0) {
        EXPECT_EQ(c.max_color, direct_value(f, lambda));
      } else {
        EXPECT_EQ(c.max_color, static_cast<Color>(n));
      }
    }
  }
}

TEST(Decomposition, Examples) {
  Tree p = path_tree(4);
  auto c = color_via_decomposition(p, 3);
  EXPECT_TRUE(valid(p, 3, c));
  EXPECT_LE(c.max_color, 14);

  Tree f5 = fib_tree(5).tree;
  auto d = color_via_decomposition(f5, 6);
  EXPECT_TRUE(valid(f5, 6, d));
  EXPECT_LE(d.max_color, 49);

  auto e = detail::color_via_decomposition_detailed(path_tree(2), 2);
  EXPECT_TRUE(e.layout.y1.empty());
  EXPECT_TRUE(e.layout.y2.empty());
  EXPECT_LE(e.coloring.max_color, 2 * e.layout.L);
}

TEST(Decomposition, LayoutInvariants) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::size_t n = 2 + seed % 200;
    Forest f = seed % 3 == 0 ? Forest(random_forest(n, seed)) : Forest(gen_random_tree(n, std::nullopt, seed));
    std::int64_t lambda = 2 + static_cast<std::int64_t>(seed % static_cast<std::uint64_t>(n));
    auto out = detail::color_via_decomposition_detailed(f, lambda);
    ASSERT_TRUE(valid(f, lambda, out.coloring));
    if (f.edge_count() == 0) continue;
    const auto& L = out.layout;
    EXPECT_GE(L.y1.size(), L.y2.size());
    auto disjoint = [](std::vector<Vertex> x, std::vector<Vertex> y) {
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      std::vector<Vertex> both;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
      return both.empty();
    };
    EXPECT_TRUE(disjoint(L.b1, L.b2));
    EXPECT_TRUE(disjoint(L.r1, L.r2));
    EXPECT_EQ(L.y1.size() + L.y2.size(), out.decomposition.yellow.size());
    EXPECT_EQ(L.b1.size() + L.b2.size() + L.b_rest.size(), out.decomposition.blue.size());
    EXPECT_EQ(L.r1.size() + L.r2.size() + L.r_rest.size(), out.decomposition.red.size());
    EXPECT_LE(out.coloring.max_color, L.M);
    // B1 is exactly the blue neighborhood of Y1.
    std::set<Vertex> y1(L.y1.begin(), L.y1.end());
    std::set<Vertex> blue(out.decomposition.blue.begin(), out.decomposition.blue.end());
    std::set<Vertex> expect_b1;
    for (Vertex v : blue) {
      for (Vertex w : f.neighbors(v)) {
        if (y1.count(w)) expect_b1.insert(v);
      }
    }
    EXPECT_EQ(std::set<Vertex>(L.b1.begin(), L.b1.end()), expect_b1);
  }
}

TEST(Decomposition, BoundOnRandomTrees) {
  for (std::size_t n : {50U, 500U, 5000U}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Tree t = gen_random_tree(n, std::nullopt, seed + n);
      for (std::int64_t lambda : {std::int64_t{2}, static_cast<std::int64_t>(n / 4),
                                  static_cast<std::int64_t>(n / 2), static_cast<std::int64_t>(n)}) {
        auto c = color_via_decomposition(t, lambda);
        ASSERT_TRUE(verify_backbone_coloring(t, lambda, c).ok());
        EXPECT_LE(c.max_color, decomposition_bound(t, lambda));
      }
    }
  }
}

TEST(Decomposition, EdgelessForest) {
  auto c = color_via_decomposition(build_forest(5, {}), 3);
  EXPECT_EQ(c.max_color, 5);
}

TEST(Best, Examples) {
  EXPECT_EQ(color_best(star_tree(4), 2).max_color, 5);
  EXPECT_EQ(color_best(path_tree(4), 3).max_color, 5);
  auto c = color_best(path_tree(2), 5);
  EXPECT_EQ(c.max_color, 6);
  EXPECT_FALSE(oracle::naive_coloring(path_tree(2), 5, 5));
  EXPECT_TRUE(oracle::naive_coloring(path_tree(2), 5, 6));
}

TEST(Best, TiesGoToDirect) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Tree t = gen_random_tree(20, std::nullopt, seed);
    auto best = color_best(t, 4);
    auto direct = color_direct(t, 4);
    if (best.max_color == direct.max_color) {
      EXPECT_EQ(best.colors, direct.colors);
    }
  }
}

TEST(Soundness, AllSmallTreesAllAlgorithms) {
  for (std::size_t n = 1; n <= 7; ++n) {
    for_each_labeled_tree(n, [&](const Tree& t) {
      for (std::int64_t lambda = 2; lambda <= 8; ++lambda) {
        auto d = color_direct(t, lambda);
        auto r = color_via_decomposition(t, lambda);
        auto b = color_best(t, lambda);
        ASSERT_TRUE(valid(t, lambda, d) && valid(t, lambda, r) && valid(t, lambda, b));
        ASSERT_EQ(d.max_color, n == 1 ? 1 : direct_value(t, lambda));
        ASSERT_LE(r.max_color, decomposition_bound(t, lambda));
        ASSERT_EQ(b.max_color, std::min(d.max_color, r.max_color));
      }
    });
  }
}

TEST(Sandwich, SmallTreesAgainstExactValue) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for_each_labeled_tree(n, [&](const Tree& t) {
      for (std::int64_t lambda = 2; lambda <= 5; ++lambda) {
        Color opt = exact_bbc(t, lambda).value;
        ASSERT_LE(lower_bound(t, lambda), opt);
        auto d = static_cast<Color>(t.max_degree());
        ASSERT_LE(color_best(t, lambda).max_color, opt + d * d * static_cast<Color>(ceil_log2(n)));
      }
    });
  }
}

TEST(Sandwich, SmallForestsAgainstNaiveOracle) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::size_t n = 2 + seed % 5;
    Forest f = random_forest(n, seed);
    for (std::int64_t lambda = 2; lambda <= 4; ++lambda) {
      Color lb = lower_bound(f, lambda);
      Color best = color_best(f, lambda).max_color;
      ASSERT_LE(lb, best);
      if (lb > static_cast<Color>(n)) {
        EXPECT_FALSE(oracle::naive_coloring(f, lambda, lb - 1)) << seed;
      }
    }
  }
}

TEST(Augment, Examples) {
  Forest two_paths = build_forest(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  Tree t = augment_forest_to_tree(two_paths);
  EXPECT_EQ(t.edge_count(), 5U);
  EXPECT_EQ(t.max_degree(), 2U);

  Forest stars = build_forest(8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}});
  Tree s = augment_forest_to_tree(stars);
  EXPECT_EQ(s.max_degree(), 3U);
  EXPECT_EQ(s.edge_count(), 7U);

  Tree p = path_tree(5);
  EXPECT_EQ(augment_forest_to_tree(p).edges(), p.edges());

  try {
    augment_forest_to_tree(build_forest(4, {{0, 1}, {2, 3}}));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeTooSmall);
  }
}

TEST(Augment, PreservesEdgesAndDegree) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Forest f = random_forest(3 + seed % 50, seed);
    if (f.max_degree() < 2) continue;
    Tree t = augment_forest_to_tree(f);
    EXPECT_EQ(t.max_degree(), f.max_degree());
    for (auto [u, v] : f.edges()) EXPECT_TRUE(t.has_edge(u, v));
  }
}

TEST(LowerBound, Examples) {
  EXPECT_EQ(lower_bound(star_tree(4), 2), 5);
  EXPECT_EQ(lower_bound(path_tree(4), 3), 5);
  EXPECT_EQ(lower_bound(path_tree(2), 2), 3);
  EXPECT_EQ(lower_bound(build_forest(4, {}), 2), 4);
}

TEST(LowerBound, MinLargerClassMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Forest f = random_forest(2 + seed % 16, seed);
    ComponentBipartition cb = component_bipartition(f);
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    for (std::uint32_t c = 0; c < f.component_count(); ++c) {
      if (cb.root_side[c] + cb.other_side[c] >= 2) parts.emplace_back(cb.root_side[c], cb.other_side[c]);
    }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t mask = 0; mask < (std::size_t{1} << parts.size()); ++mask) {
      std::size_t a = 0, b = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        bool flip = (mask >> i) & 1U;
        a += flip ? parts[i].second : parts[i].first;
        b += flip ? parts[i].first : parts[i].second;
      }
      best = std::min(best, std::max(a, b));
    }
    if (parts.empty()) best = 0;
    EXPECT_EQ(min_larger_class(f), best) << seed;
  }
}

TEST(Verify, Examples) {
  Tree p = path_tree(2);
  EXPECT_TRUE(verify_backbone_coloring(p, 3, {3, {1, 4}, 4}).ok());
  auto gap = verify_backbone_coloring(p, 3, {3, {1, 3}, 3});
  EXPECT_TRUE(gap.has(ColoringViolationKind::GapTooSmall));
  EXPECT_EQ(gap.violations.front().witness, (std::vector<Vertex>{0, 1}));
  auto dup = verify_backbone_coloring(star_tree(4), 2, {2, {1, 3, 3, 5}, 5});
  EXPECT_TRUE(dup.has(ColoringViolationKind::NotInjective));
}

TEST(Verify, OtherViolations) {
  Tree p = path_tree(3);
  EXPECT_TRUE(verify_backbone_coloring(p, 2, {2, {1, 3}, 3}).has(ColoringViolationKind::WrongLength));
  EXPECT_TRUE(verify_backbone_coloring(p, 2, {2, {0, 3, 1}, 3}).has(ColoringViolationKind::NonPositive));
  EXPECT_TRUE(verify_backbone_coloring(p, 2, {2, {1, 5, 3}, 9}).has(ColoringViolationKind::MaxMismatch));
}

TEST(Verify, AgreesWithIndependentCheck) {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    std::size_t n = 1 + rng.below(6);
    Tree t = gen_random_tree(n, std::nullopt, rng.next());
    BackboneColoring c;
    c.lambda = 2 + static_cast<std::int64_t>(rng.below(3));
    for (std::size_t i = 0; i < n; ++i) c.colors.push_back(1 + static_cast<Color>(rng.below(2 * n)));
    c.max_color = *std::max_element(c.colors.begin(), c.colors.end());
    EXPECT_EQ(verify_backbone_coloring(t, c.lambda, c).ok(), valid(t, c.lambda, c));
  }
}
