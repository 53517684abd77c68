#include "bbc/fibonacci.hpp"
#include "bbc/generators.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace bbc;

TEST(Fib, SmallValues) {
  EXPECT_EQ(fib(1), 1);
  EXPECT_EQ(fib(2), 1);
  EXPECT_EQ(fib(5), 5);
  EXPECT_EQ(fib(10), 55);
}

TEST(Fib, BeyondSixtyFourBits) {
  EXPECT_EQ(fib(96), BigInt("51680708854858323072"));
  EXPECT_EQ(fib(96), fib(95) + fib(94));
  EXPECT_GT(fib(96), BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(Fib, TableMatchesIndependentRecurrence) {
  auto ref = oracle::fib64(90);
  auto table = fib_table(90);
  for (unsigned i = 0; i <= 90; ++i) EXPECT_EQ(table[i], BigInt(ref[i])) << i;
}

TEST(FibTree, Shapes) {
  EXPECT_EQ(fib_tree(1).tree.size(), 1U);
  EXPECT_EQ(fib_tree(2).tree.size(), 1U);
  Tree t3 = fib_tree(3).tree;
  ASSERT_EQ(t3.size(), 4U);
  EXPECT_EQ(t3.degree(0), 1U);
  EXPECT_EQ(t3.degree(1), 3U);
  EXPECT_EQ(fib_tree(5).tree.size(), 13U);
  EXPECT_EQ(fib_tree(5).tree.root(), std::optional<Vertex>(0));
}

TEST(FibTree, SizeImbalanceDegreeFormulas) {
  for (unsigned N = 1; N <= 25; ++N) {
    Tree t = fib_tree(N).tree;
    auto f = oracle::fib64(N)[N];
    EXPECT_EQ(t.size(), 3 * f - 2) << N;
    EXPECT_EQ(oracle::tree_imbalance(t), f) << N;
    if (N >= 4) {
      EXPECT_EQ(t.max_degree(), 3U) << N;
    }
  }
}

TEST(FibTree, OrderGuard) {
  EXPECT_THROW(fib_tree(0), Error);
  EXPECT_THROW(fib_tree(kMaxFibTreeOrder + 1), Error);
}

TEST(FibOrder, Examples) {
  EXPECT_EQ(fib_order_from_size(100).order, 9U);
  auto r = fib_order_from_size(13);
  EXPECT_EQ(r.order, 5U);
  EXPECT_TRUE(r.consistent());
  EXPECT_EQ(fib_order_from_size(22).order, 6U);
}

TEST(FibOrder, RejectsNonSizes) {
  for (std::uint64_t n : {31ULL, 10ULL, 5ULL, 99ULL}) {
    try {
      fib_order_from_size(n);
      ADD_FAILURE() << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotAFibTreeSize);
    }
  }
}

TEST(FibOrder, FloorFormulaAgreesInRegime) {
  for (unsigned N = 3; N <= 80; ++N) {
    auto r = fib_order_from_size(fib_tree_size(N));
    EXPECT_EQ(r.order, N);
    if (r.in_regime) {
      EXPECT_TRUE(r.consistent()) << N;
    }
  }
}

TEST(Recognize, RoundTrip) {
  for (unsigned N = 3; N <= 14; ++N) {
    auto rec = recognize_fib_tree(fib_tree(N).tree);
    ASSERT_TRUE(rec) << N;
    EXPECT_EQ(rec->order, N);
    EXPECT_EQ(rec->root, 0U);
  }
}

TEST(Recognize, RelabeledTree) {
  Tree t = fib_tree(7).tree;
  const std::size_t n = t.size();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::reverse(perm.begin(), perm.end());
  std::vector<Edge> edges;
  for (auto [u, v] : t.edges()) edges.emplace_back(perm[u], perm[v]);
  auto rec = recognize_fib_tree(build_tree(n, edges));
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->order, 7U);
  EXPECT_EQ(rec->root, perm[0]);
}

TEST(Recognize, StarIsOrderThreeAndPathIsNot) {
  // The four-vertex tree with a root, one child and two leaves is K_{1,3}.
  auto star = recognize_fib_tree(star_tree(4));
  ASSERT_TRUE(star);
  EXPECT_EQ(star->order, 3U);
  EXPECT_FALSE(recognize_fib_tree(path_tree(4)));
}

TEST(Recognize, NoFalsePositivesAmongSmallTrees) {
  // Every labeled tree on 4 vertices with the right shape is a star.
  for_each_labeled_tree(4, [](const Tree& t) {
    EXPECT_EQ(recognize_fib_tree(t).has_value(), t.max_degree() == 3);
  });
}

TEST(Zeckendorf, LiteralVectors) {
  EXPECT_EQ(zeckendorf(3).bits(), (std::vector<std::uint8_t>{0, 0, 0, 1}));
  EXPECT_EQ(zeckendorf(6, UnitPosition::Second).bits(), (std::vector<std::uint8_t>{0, 1, 0, 0, 1}));
  EXPECT_TRUE(same_up_to_unit_alias(zeckendorf(6), zeckendorf(6, UnitPosition::Second)));
  EXPECT_EQ(zeckendorf(4).ones(), (std::vector<unsigned>{1, 4}));
}

TEST(Zeckendorf, Values) {
  EXPECT_EQ(zeckendorf_value(ZeckendorfRep({0, 0, 0, 1})), 3);
  EXPECT_EQ(zeckendorf_value(ZeckendorfRep()), 0);
  EXPECT_EQ(zeckendorf_value(ZeckendorfRep({1, 0, 0, 1})), 4);
  EXPECT_EQ(zeckendorf_value(ZeckendorfRep({0, 1, 0, 0, 1})), 6);
  try {
    zeckendorf_value(ZeckendorfRep({1, 1}));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AdjacentOnes);
  }
}

TEST(Zeckendorf, RoundTripAndNoAdjacentOnes) {
  for (unsigned v = 0; v <= 200000; ++v) {
    auto z = zeckendorf(v);
    ASSERT_FALSE(z.has_adjacent_ones()) << v;
    ASSERT_FALSE(z.at(2)) << v;
    ASSERT_EQ(zeckendorf_value(z), v);
  }
}

TEST(Zeckendorf, RandomBigIntegers) {
  SplitMix64 rng(7);
  const BigInt limit = fib(120);
  for (int i = 0; i < 1000; ++i) {
    BigInt v = 0;
    for (int w = 0; w < 2; ++w) v = (v << 64) + rng.next();
    v %= limit;
    auto z = zeckendorf(v);
    EXPECT_FALSE(z.has_adjacent_ones());
    EXPECT_EQ(zeckendorf_value(z), v);
  }
}

TEST(Zeckendorf, GreedyHasMinimalSupport) {
  const unsigned limit = 10000;
  auto best = oracle::min_fib_terms(limit);
  for (unsigned v = 1; v <= limit; ++v) ASSERT_EQ(zeckendorf(v).weight(), best[v]) << v;
}

TEST(Zeckendorf, HalfFibonacciPattern) {
  for (unsigned N = 6; N <= 60; N += 3) {
    auto ones = zeckendorf(fib(N) / 2).ones();
    std::vector<unsigned> expected;
    for (int j = static_cast<int>(N) - 2; j >= 1; j -= 3) expected.push_back(static_cast<unsigned>(j));
    std::reverse(expected.begin(), expected.end());
    EXPECT_EQ(ones, expected) << N;
  }
}

TEST(Zeckendorf, HalfFibonacciSandwich) {
  for (unsigned N = 6; N <= 60; N += 3) {
    BigInt half = fib(N) / 2;
    EXPECT_EQ(fib(N) % 2, 0);
    EXPECT_LT(fib(N - 2), half);
    EXPECT_LT(half, fib(N - 1));
  }
}
