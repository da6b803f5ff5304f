#include "oracles.hpp"

#include <sdim/covering.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace sdim;

TEST(IntSet, NormalizesAndRecordsTranslation) {
  IntSet e({5, 3, 9, 3});
  EXPECT_EQ(e.elements(), (std::vector<long>{0, 2, 6}));
  EXPECT_EQ(e.translation(), 3);
  EXPECT_EQ(e.span(), 6);
  EXPECT_THROW(IntSet({}), std::invalid_argument);
}

TEST(Reflect, Examples) {
  EXPECT_EQ(reflect(IntSet({0, 1, 3})), IntSet({0, 2, 3}));
  EXPECT_EQ(reflect(IntSet({0})), IntSet({0}));
  EXPECT_EQ(reflect(IntSet({0, 5})), IntSet({0, 5}));
}

TEST(TauInterval, Examples) {
  EXPECT_EQ(tau_interval(IntSet({0}), 5), 5);
  EXPECT_EQ(tau_interval(IntSet({0, 1}), 5), 3);
  EXPECT_EQ(tau_interval(IntSet({0, 2}), 4), 2);
}

TEST(TauInterval, AgainstBruteForce) {
  for (std::uint32_t mask = 1; mask < (1u << 6); mask += 2) {
    std::vector<long> e;
    for (long k = 0; k < 6; ++k)
      if (mask >> k & 1) e.push_back(k);
    IntSet s(e);
    for (long i = 1; i + s.span() <= 16; ++i) EXPECT_EQ(tau_interval(s, i), oracle::tau_brute(e, i)) << s.str();
  }
}

TEST(TauInterval, MonotoneAndSubadditive) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long> e{0};
    for (int k = 0; k < 3; ++k) e.push_back(std::uniform_int_distribution<long>(0, 9)(rng));
    IntSet s(e);
    std::vector<long> t(41);
    for (long i = 1; i <= 40; ++i) t[i] = tau_interval(s, i);
    for (long i = 1; i < 40; ++i) EXPECT_LE(t[i], t[i + 1]);
    for (long a = 1; a <= 20; ++a)
      for (long b = 1; a + b <= 40; ++b) EXPECT_LE(t[a + b], t[a] + t[b]);
  }
}

TEST(CoveringDensity, Examples) {
  EXPECT_EQ(covering_density(IntSet({0})), Rational(1));
  EXPECT_EQ(covering_density(IntSet({0, 1})), Rational(1, 2));
  for (long m = 1; m <= 8; ++m) {
    std::vector<long> e;
    for (long k = 0; k <= m; ++k) e.push_back(k);
    EXPECT_EQ(covering_density(IntSet(e)), Rational(1, m + 1));
  }
}

TEST(CoveringDensity, ZeroTwoThreeFromTauConvergence) {
  IntSet e({0, 2, 3});
  Rational c = covering_density(e);
  for (long i : {50L, 100L, 300L}) {
    Rational ratio(tau_interval(e, i), i);
    EXPECT_LE(c, ratio);
    EXPECT_LE(ratio - c, Rational(e.span() + 1, i));
  }
  EXPECT_EQ(c, Rational(2, 5));
}

// Every set inside {0..6}: exact value equals the best short-period complement.
TEST(CoveringDensity, MatchesPeriodicSearch) {
  for (std::uint32_t mask = 1; mask < (1u << 7); mask += 2) {
    std::vector<long> e;
    for (long k = 0; k < 7; ++k)
      if (mask >> k & 1) e.push_back(k);
    IntSet s(e);
    Rational c = covering_density(s);
    EXPECT_EQ(c, oracle::periodic_density(e, 14)) << s.str();
  }
}

TEST(CoveringDensity, TranslationAndReflectionInvariant) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long> e;
    int sz = std::uniform_int_distribution<>(1, 5)(rng);
    for (int k = 0; k < sz; ++k) e.push_back(std::uniform_int_distribution<long>(-5, 8)(rng));
    IntSet s(e);
    std::vector<long> moved;
    for (long x : e) moved.push_back(x + 17);
    EXPECT_EQ(covering_density(s), covering_density(IntSet(moved)));
    EXPECT_EQ(covering_density(s), covering_density(reflect(s)));
  }
}

TEST(OptimalComplement, Examples) {
  auto c0 = optimal_complement(IntSet({0}));
  EXPECT_EQ(c0.period, 1);
  EXPECT_EQ(c0.offsets, (std::vector<long>{0}));
  auto c1 = optimal_complement(IntSet({0, 1}));
  EXPECT_EQ(c1.period, 2);
  EXPECT_EQ(c1.offsets, (std::vector<long>{0}));
  for (long m = 1; m <= 6; ++m) {
    std::vector<long> e;
    for (long k = 0; k <= m; ++k) e.push_back(k);
    auto c = optimal_complement(IntSet(e));
    EXPECT_EQ(c.period, m + 1);
    EXPECT_EQ(c.offsets, (std::vector<long>{0}));
  }
}

TEST(OptimalComplement, CoversAndRealizesDensity) {
  for (std::uint32_t mask = 1; mask < (1u << 9); mask += 2) {
    std::vector<long> e;
    for (long k = 0; k < 9; ++k)
      if (mask >> k & 1) e.push_back(k);
    IntSet s(e);
    auto c = optimal_complement(s);
    EXPECT_TRUE(covers_integers(s, c)) << s.str();
    EXPECT_EQ(c.density(), covering_density(s)) << s.str();
  }
}

TEST(CoveringDensity, SpanCap) {
  EXPECT_THROW(covering_density(IntSet({0, kMaxCoveringSpan + 1})), CapExceeded);
  EXPECT_NO_THROW(covering_density(IntSet({0, 7, kMaxCoveringSpan})));
}
