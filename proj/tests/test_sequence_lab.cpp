#include "oracles.hpp"

#include <sdim/parse.hpp>
#include <sdim/sequence_lab.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace sdim;

namespace {

DifferencePolynomial P(const std::string& s, int n = 1) { return parse_polynomial(s, n); }

std::vector<std::vector<std::uint32_t>> points(const TruncatedSolutionSet& s) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t k = 0; k < s.size(); ++k) out.emplace_back(s.point(k).begin(), s.point(k).end());
  return out;
}

std::vector<Cell> cells_of_mask(std::uint32_t mask, int n, int cells) {
  std::vector<Cell> t;
  for (int id = 0; id < cells; ++id)
    if (mask >> id & 1) t.push_back(cell_of(id, n));
  return t;
}

}  // namespace

TEST(Enumerate, Examples) {
  auto a = enumerate_truncated_solutions({P("y1*s(y1)")}, 2, 1);
  EXPECT_EQ(points(a), (std::vector<std::vector<std::uint32_t>>{{0, 0}, {0, 1}, {1, 0}}));
  auto b = enumerate_truncated_solutions({P("s(y1) - y1")}, 2, 2);
  EXPECT_EQ(points(b), (std::vector<std::vector<std::uint32_t>>{{0, 0, 0}, {1, 1, 1}}));
}

// y0*y1 = 0 leaves 5 pairs; z0*(y0 - z1) = 0 leaves 5 choices of (z0, z1) for each.
TEST(Enumerate, CoupledSystemOverF3) {
  std::vector<DifferencePolynomial> f{P("y1*s(y1)", 2), P("y1*y2 - y2*s(y2)", 2)};
  auto s = enumerate_truncated_solutions(f, 3, 1);
  EXPECT_EQ(s.size(), 25u);
  EXPECT_EQ(points(s), oracle::solutions_brute(f, 3, 1, 2));
}

TEST(Enumerate, MatchesBruteForce) {
  std::mt19937 rng(41);
  const std::vector<std::string> pool{"y1*s(y1)", "s(y1) - y1 - 1", "y1^2 - y2", "y1*y2 - s(y2)", "s(y2)^2 + 2*y1",
                                      "y1*s(y2) - 3", "y2^3 - y2"};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<DifferencePolynomial> f;
    int k = std::uniform_int_distribution<>(1, 3)(rng);
    for (int q = 0; q < k; ++q) f.push_back(P(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)], 2));
    std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5}[std::uniform_int_distribution<>(0, 2)(rng)];
    int i = std::uniform_int_distribution<>(0, p == 5 ? 1 : 2)(rng);
    EXPECT_EQ(points(enumerate_truncated_solutions(f, p, i)), oracle::solutions_brute(f, p, i, 2));
  }
}

TEST(Enumerate, Errors) {
  EXPECT_THROW(enumerate_truncated_solutions({P("y1")}, 9, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_truncated_solutions({P("y1")}, 3, 5, 100), CapExceeded);
  EXPECT_THROW(enumerate_truncated_solutions({P("y1 - 1/3")}, 3, 0), std::domain_error);
  EXPECT_EQ(enumerate_truncated_solutions({P("y1 - 1/2")}, 3, 0).size(), 1u);
}

TEST(ProjectionCount, Examples) {
  auto s = enumerate_truncated_solutions({P("y1*s(y1)")}, 3, 1);
  EXPECT_EQ(projection_count(s, {{0, 1}}), 3u);
  EXPECT_EQ(projection_count(s, {{0, 1}, {1, 1}}), 5u);
  auto z = enumerate_truncated_solutions({P("y1")}, 5, 2);
  EXPECT_EQ(projection_count(z, {{0, 1}}), 1u);
  EXPECT_EQ(projection_count(z, {{0, 1}, {2, 1}}), 1u);
  EXPECT_THROW(projection_count(s, {{2, 1}}), std::invalid_argument);
}

TEST(EmpiricalFreeCheck, Examples) {
  EXPECT_EQ(empirical_free_check({P("y1*s(y1)")}, 3, 1, {{0, 1}}), Rational(1));
  EXPECT_EQ(empirical_free_check({P("y1*s(y1)")}, 3, 1, {{0, 1}, {1, 1}}), Rational(5, 9));
  EXPECT_EQ(empirical_free_check({DifferencePolynomial(2)}, 3, 1, {{0, 1}, {1, 2}}), Rational(1));
}

// For squarefree monomial systems the finite-field test is faithful.
TEST(EmpiricalFreeCheck, AgreesWithIsFreeOnMonomialSystems) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = std::uniform_int_distribution<>(1, 2)(rng);
    const int i = n == 1 ? std::uniform_int_distribution<>(1, 7)(rng) : std::uniform_int_distribution<>(1, 3)(rng);
    std::vector<std::vector<Cell>> ms;
    int k = std::uniform_int_distribution<>(1, 2)(rng);
    for (int q = 0; q < k; ++q) {
      std::vector<Cell> c;
      int sz = std::uniform_int_distribution<>(1, 2)(rng);
      for (int r = 0; r < sz; ++r) c.push_back({std::uniform_int_distribution<>(0, 2)(rng), std::uniform_int_distribution<>(1, n)(rng)});
      ms.push_back(c);
    }
    auto fam = SigmaFamily::from_cells(n, ms);
    std::vector<DifferencePolynomial> f;
    for (const auto& m : fam.members()) {
      std::vector<SigmaMonomial::Factor> fs;
      for (const auto& [s, j] : m.cells()) fs.push_back({{s, j}, 1});
      f.push_back(DifferencePolynomial::monomial(n, SigmaMonomial(fs)));
    }
    const int cells = n * (i + 1);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      if (std::pow(static_cast<double>(p), cells) > 1e6) continue;
      auto sols = enumerate_truncated_solutions(f, p, i);
      for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
        auto t = cells_of_mask(mask, n, cells);
        mpz_class pt = 1;
        for (std::size_t q = 0; q < t.size(); ++q) pt *= p;
        bool saturated = mpz_class(projection_count(sols, t)) == pt;
        EXPECT_EQ(saturated, is_free(t, fam)) << fam.str() << " p=" << p << " mask=" << mask;
      }
    }
  }
}

// Fibers of pi_{T'} over pi_T have at most p^|T' \ T| points.
TEST(ProjectionCount, FiberBounds) {
  std::vector<DifferencePolynomial> f{P("y1*s(y1)", 2), P("y1*y2 - y2*s(y2)", 2)};
  for (std::uint32_t p : {2u, 3u}) {
    auto s = enumerate_truncated_solutions(f, p, 1);
    for (std::uint32_t a = 0; a < 16; ++a)
      for (std::uint32_t b = 0; b < 16; ++b) {
        if ((a & b) != a) continue;
        auto ta = cells_of_mask(a, 2, 4), tb = cells_of_mask(b, 2, 4);
        std::size_t ca = projection_count(s, ta), cb = projection_count(s, tb);
        std::size_t scale = 1;
        for (std::size_t q = ta.size(); q < tb.size(); ++q) scale *= p;
        EXPECT_LE(cb, ca * scale);
        EXPECT_GE(cb, ca);
        EXPECT_GE(ca, (cb + scale - 1) / scale);
      }
  }
}
