#include "oracles.hpp"

#include <sdim/engine.hpp>
#include <sdim/parse.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace sdim;

namespace {

DifferencePolynomial P(const std::string& s, int n = 1) { return parse_polynomial(s, n); }
SigmaMonomial M(const std::string& s, int n = 1) { return P(s, n).leading_monomial(); }

SigmaFamily F(int n, std::vector<std::vector<Cell>> members) { return SigmaFamily::from_cells(n, members); }

const SigmaFamily kProduct = SigmaFamily::from_cells(1, {{{0, 1}, {1, 1}}});

std::vector<DifferencePolynomial> coupled() { return {P("y1*s(y1)", 2), P("y1*y2 - y2*s(y2)", 2)}; }

SigmaMonomial shifts_monomial(const std::vector<long>& e, int exponent = 1) {
  std::vector<SigmaMonomial::Factor> fs;
  for (long s : e) fs.push_back({{static_cast<int>(s), 1}, exponent});
  return SigmaMonomial(fs);
}

std::vector<int> values(const DimensionReport& r) {
  std::vector<int> out;
  for (const auto& e : r.sequence) out.push_back(e.d.value());
  return out;
}

DimensionReport report_of(const std::vector<int>& d) {
  DimensionReport r;
  for (std::size_t i = 0; i < d.size(); ++i) r.sequence.push_back({static_cast<int>(i), KrullDim(d[i]), true});
  return r;
}

SigmaFamily random_family(std::mt19937& rng, int n, int max_order, int max_members) {
  std::vector<std::vector<Cell>> ms;
  int k = std::uniform_int_distribution<>(1, max_members)(rng);
  for (int q = 0; q < k; ++q) {
    std::vector<Cell> cells;
    int sz = std::uniform_int_distribution<>(1, 3)(rng);
    for (int r = 0; r < sz; ++r)
      cells.push_back({std::uniform_int_distribution<>(0, max_order)(rng), std::uniform_int_distribution<>(1, n)(rng)});
    ms.push_back(cells);
  }
  return SigmaFamily::from_cells(n, ms);
}

std::vector<std::vector<Cell>> cells_of(const SigmaFamily& fam, int index_offset = 0) {
  std::vector<std::vector<Cell>> out;
  for (const auto& m : fam.members()) {
    auto c = m.cells();
    for (auto& [s, j] : c) j += index_offset;
    out.push_back(c);
  }
  return out;
}

std::vector<DifferencePolynomial> monomials_of(const SigmaFamily& fam, int exponent = 1) {
  std::vector<DifferencePolynomial> out;
  for (const auto& m : fam.members()) {
    std::vector<SigmaMonomial::Factor> fs;
    for (const auto& [s, j] : m.cells()) fs.push_back({{s, j}, exponent});
    out.push_back(DifferencePolynomial::monomial(fam.n(), SigmaMonomial(fs)));
  }
  return out;
}

}  // namespace

TEST(UnivariateMonomial, Examples) {
  EXPECT_EQ(sigma_dim_univariate_monomial(M("y1*s(y1)")), Rational(1, 2));
  EXPECT_EQ(sigma_dim_univariate_monomial(M("y1*s(y1)*s^2(y1)")), Rational(2, 3));
  EXPECT_EQ(sigma_dim_univariate_monomial(M("s^3(y1)^5")), Rational(0));
  EXPECT_THROW(sigma_dim_univariate_monomial(SigmaMonomial()), std::invalid_argument);
  EXPECT_THROW(sigma_dim_univariate_monomial(M("y1*y2", 2)), std::invalid_argument);
}

TEST(FamilyPath, Examples) {
  EXPECT_EQ(sigma_dim_family(kProduct), Rational(1, 2));
  EXPECT_EQ(sigma_dim_family(F(2, {{{0, 1}, {0, 2}}})), Rational(1));
  EXPECT_EQ(sigma_dim_family(F(2, {{{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}})), Rational(1));
  EXPECT_EQ(sigma_dim_family(SigmaFamily(3)), Rational(3));
}

// Two independent routes: covering density of E against the column automaton.
TEST(FamilyPath, AgreesWithCoveringOnAllShiftSets) {
  for (std::uint32_t mask = 1; mask < (1u << 9); mask += 2) {
    std::vector<long> e;
    for (long k = 0; k < 9; ++k)
      if (mask >> k & 1) e.push_back(k);
    auto m = shifts_monomial(e);
    auto fam = family_from_monomials({m}, 1);
    EXPECT_EQ(sigma_dim_univariate_monomial(m), sigma_dim_family(fam)) << m.str();
    if (e.back() > 6) continue;
    EXPECT_EQ(sigma_dim_family(fam), Rational(1) - oracle::periodic_density(e, 14)) << m.str();
  }
}

TEST(FamilyPath, StaysWithinRange) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    int n = std::uniform_int_distribution<>(1, 3)(rng);
    auto fam = random_family(rng, n, 3, 4);
    Rational v = sigma_dim_family(fam);
    EXPECT_LE(Rational(0), v);
    EXPECT_LE(v, Rational(n));
  }
}

TEST(FamilyPath, TensorAdditivity) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    int n1 = std::uniform_int_distribution<>(1, 2)(rng), n2 = std::uniform_int_distribution<>(1, 2)(rng);
    auto a = random_family(rng, n1, 3, 3), b = random_family(rng, n2, 3, 3);
    auto joined = cells_of(a);
    for (auto& c : cells_of(b, n1)) joined.push_back(c);
    auto u = SigmaFamily::from_cells(n1 + n2, joined);
    EXPECT_EQ(sigma_dim_family(u), sigma_dim_family(a) + sigma_dim_family(b)) << a.str() << "--\n" << b.str();
  }
}

TEST(FamilyPath, AddingMemberNeverIncreases) {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    int n = std::uniform_int_distribution<>(1, 3)(rng);
    auto fam = random_family(rng, n, 3, 3);
    auto extra = random_family(rng, n, 3, 1);
    auto grown = cells_of(fam);
    grown.push_back(cells_of(extra).front());
    EXPECT_LE(sigma_dim_family(SigmaFamily::from_cells(n, grown)), sigma_dim_family(fam));
  }
}

TEST(FamilyPath, WindowFormulaForUnivariateMonomials) {
  for (std::uint32_t mask = 1; mask < (1u << 7); mask += 2) {
    std::vector<long> e;
    for (long k = 0; k < 7; ++k)
      if (mask >> k & 1) e.push_back(k);
    IntSet s(e);
    auto fam = family_from_monomials({shifts_monomial(e)}, 1);
    for (long i = s.span(); i <= 30; ++i)
      EXPECT_EQ(window_dim(fam, static_cast<int>(i)), i + 1 - tau_interval(reflect(s), i - s.span() + 1)) << s.str();
  }
}

TEST(TruncatedDimSequence, LinearRecurrence) {
  auto r = truncated_dim_sequence({P("s^2(y1) - y1")}, 5);
  EXPECT_EQ(values(r), (std::vector<int>{1, 2, 2, 2, 2, 2}));
  EXPECT_EQ(r.certified_kind, CertifiedKind::upper_bound);
  EXPECT_EQ(*r.certified_value, Rational(1, 3));
  for (const auto& e : r.sequence) EXPECT_FALSE(e.exact);
  auto tail = detect_eventual_linear(r);
  ASSERT_TRUE(tail);
  EXPECT_EQ(tail->d, 0);
  EXPECT_EQ(tail->e, 2);
}

TEST(TruncatedDimSequence, CoupledSystem) {
  auto r = truncated_dim_sequence(coupled(), 6);
  // Nothing is imposed at order 0, so both initial values are free.
  EXPECT_EQ(r.sequence[0].d, KrullDim(2));
  for (int i = 1; i <= 6; ++i) EXPECT_EQ(r.sequence[i].d, KrullDim(i + 1)) << i;
  EXPECT_EQ(*r.certified_value, Rational(1));
}

TEST(TruncatedDimSequence, OrderZeroIsExact) {
  auto r = truncated_dim_sequence({P("y1*y2", 2)}, 4);
  for (int i = 0; i <= 4; ++i) {
    EXPECT_EQ(r.sequence[i].d, KrullDim(i + 1));
    EXPECT_TRUE(r.sequence[i].exact);
  }
  EXPECT_EQ(r.certified_kind, CertifiedKind::exact);
  EXPECT_EQ(*r.certified_value, Rational(1));
}

TEST(TruncatedDimSequence, Errors) {
  EXPECT_THROW(truncated_dim_sequence({}, 3), std::invalid_argument);
  EXPECT_THROW(truncated_dim_sequence({P("s^3(y1)")}, 2), std::invalid_argument);
  auto u = truncated_dim_sequence({P("y1"), P("y1 - 1")}, 2);
  EXPECT_TRUE(u.sequence[0].d.is_empty());
  EXPECT_FALSE(u.certified_value.has_value());
}

// Monomial truncations are exact, so Groebner and combinatorics must agree term by term.
TEST(TruncatedDimSequence, MonomialSystemsMatchWindowDim) {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 25; ++trial) {
    int n = std::uniform_int_distribution<>(1, 2)(rng);
    auto fam = random_family(rng, n, 2, 3);
    auto r = truncated_dim_sequence(monomials_of(fam, 2), 4);
    Rational exact = sigma_dim_family(fam);
    for (const auto& e : r.sequence) {
      EXPECT_TRUE(e.exact);
      EXPECT_EQ(e.d.value(), window_dim(fam, e.i)) << fam.str() << " i=" << e.i;
      EXPECT_GE(Rational(e.d.value(), e.i + 1), exact);
    }
  }
}

TEST(Monomialize, Examples) {
  EXPECT_EQ(monomialize({P("y1*s(y1)")}, 1).family, kProduct);
  auto mz = monomialize(coupled(), 4);
  EXPECT_EQ(mz.depth, 4);
  const auto& ms = mz.family.members();
  for (const auto& want : {SupportSet({{0, 1}, {1, 1}}), SupportSet({{0, 2}, {1, 2}})})
    EXPECT_NE(std::find(ms.begin(), ms.end(), want), ms.end()) << want.str();
  EXPECT_EQ(sigma_dim_family(mz.family), Rational(1));
}

TEST(Monomialize, NonConstructibleExample) {
  std::vector<DifferencePolynomial> f{P("s(y1) - y1 - 1", 2), P("y1*y2 - 1", 2)};
  auto mz = monomialize(f, 3);
  // lm(s(y1) - y1 - 1) = s(y1), so y1 is absorbed after shift-normalization.
  EXPECT_EQ(mz.family.members().front(), SupportSet({{0, 1}}));
  Rational v = sigma_dim_family(mz.family);
  EXPECT_LE(v, Rational(1, 4));
  EXPECT_THROW(monomialize({P("y1"), P("y1 - 1")}, 0), UnitIdeal);
}

TEST(NotFreeCertificate, Examples) {
  std::vector<DifferencePolynomial> f{P("s(y1) - y1 - 1", 2), P("y1*y2 - 1", 2)};
  auto c = not_free_certificate(f, {{0, 1}, {1, 1}}, 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, P("s(y1) - y1 - 1", 2));
  EXPECT_FALSE(not_free_certificate({P("y1*s(y1)")}, {{0, 1}, {2, 1}}, 4));
  auto z = not_free_certificate({P("y1")}, {{3, 1}}, 3);
  ASSERT_TRUE(z);
  EXPECT_EQ(*z, P("s^3(y1)"));
}

TEST(NotFreeCertificate, CertificateLiesInKeptVariables) {
  auto c = not_free_certificate(coupled(), {{0, 1}, {1, 1}}, 2);
  ASSERT_TRUE(c);
  for (const auto& v : c->variables()) EXPECT_EQ(v.index, 1);
  EXPECT_FALSE(not_free_certificate(coupled(), {{0, 1}, {2, 1}, {1, 2}}, 3));
}

TEST(DetectEventualLinear, Examples) {
  std::vector<int> affine, cst(8, 5), half;
  for (int i = 0; i < 8; ++i) {
    affine.push_back(2 * (i + 1) + 1);
    half.push_back((i + 2) / 2);
  }
  auto a = detect_eventual_linear(report_of(affine));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->d, 2);
  EXPECT_EQ(a->e, 1);
  EXPECT_EQ(a->onset, 0);
  EXPECT_FALSE(detect_eventual_linear(report_of(half)));
  auto c = detect_eventual_linear(report_of(cst));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->d, 0);
  EXPECT_EQ(c->e, 5);
  EXPECT_FALSE(detect_eventual_linear(report_of({1, 2, 3})));
  auto late = detect_eventual_linear(report_of({0, 4, 5, 6}));
  ASSERT_TRUE(late);
  EXPECT_EQ(late->onset, 1);
  EXPECT_EQ(late->d, 1);
  EXPECT_EQ(late->e, 2);
  EXPECT_FALSE(detect_eventual_linear(report_of({0, 4, 5, 9})));
}

TEST(SigmaDim, UnivariateMonomialUsesBothPaths) {
  auto r = sigma_dim({P("y1*s(y1)")}, 1);
  EXPECT_EQ(r.method, Method::covering);
  EXPECT_EQ(r.certified_kind, CertifiedKind::exact);
  EXPECT_EQ(*r.certified_value, Rational(1, 2));
  EXPECT_EQ(*r.cross_check, Rational(1, 2));
  auto r2 = sigma_dim({P("y1*s(y1)", 2)}, 2);
  EXPECT_EQ(*r2.certified_value, Rational(3, 2));
}

TEST(SigmaDim, CoupledSystem) {
  auto r = sigma_dim(coupled(), 2, {.i_max = 6});
  EXPECT_EQ(r.method, Method::truncation);
  EXPECT_EQ(r.certified_kind, CertifiedKind::upper_bound);
  ASSERT_TRUE(r.family_value);
  EXPECT_EQ(*r.family_value, Rational(1));
  EXPECT_EQ(*r.certified_value, Rational(1));
}

TEST(SigmaDim, ZeroAndMonomialSystems) {
  auto z = sigma_dim({DifferencePolynomial(3)}, 3);
  EXPECT_EQ(*z.certified_value, Rational(3));
  EXPECT_EQ(z.certified_kind, CertifiedKind::exact);
  auto m = sigma_dim({P("y1*y2", 2), P("s(y2)*s^2(y2)", 2)}, 2);
  EXPECT_EQ(m.method, Method::family);
  EXPECT_EQ(*m.certified_value, Rational(1));
  for (const auto& e : m.sequence) EXPECT_FALSE(e.exact);
  EXPECT_THROW(sigma_dim({P("y1 - y1 + 2")}, 1), UnitIdeal);
}

TEST(SigmaDim, ExponentsDoNotMatter) {
  std::mt19937 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    int n = std::uniform_int_distribution<>(1, 2)(rng);
    auto fam = random_family(rng, n, 3, 3);
    auto a = sigma_dim(monomials_of(fam, 1), n, {.i_max = 8});
    auto b = sigma_dim(monomials_of(fam, 3), n, {.i_max = 8});
    EXPECT_EQ(*a.certified_value, *b.certified_value);
    EXPECT_EQ(values(a), values(b));
  }
}

TEST(SigmaDim, OrderZeroMatchesKrullDimension) {
  std::mt19937 rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = std::uniform_int_distribution<>(1, 3)(rng);
    std::vector<std::vector<int>> supports;
    std::vector<std::vector<Cell>> cells;
    int k = std::uniform_int_distribution<>(1, 3)(rng);
    for (int q = 0; q < k; ++q) {
      std::set<int> s;
      int sz = std::uniform_int_distribution<>(1, n)(rng);
      for (int r = 0; r < sz; ++r) s.insert(std::uniform_int_distribution<>(0, n - 1)(rng));
      supports.emplace_back(s.begin(), s.end());
      std::vector<Cell> c;
      for (int x : s) c.push_back({0, x + 1});
      cells.push_back(c);
    }
    Rational want(*oracle::krull_dim_brute(supports, n));
    EXPECT_EQ(sigma_dim_family(SigmaFamily::from_cells(n, cells)), want);
  }
}
