#include <sdim/errors.hpp>
#include <sdim/parse.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace sdim;

TEST(Parse, Examples) {
  auto f = parse_polynomial("y1*s(y1) - 1", 1);
  EXPECT_EQ(f, DifferencePolynomial::variable(1, {0, 1}) * DifferencePolynomial::variable(1, {1, 1}) -
                   DifferencePolynomial::constant(1, 1));
  auto g = parse_polynomial("s^2(y3)^5", 3);
  EXPECT_EQ(g, DifferencePolynomial::variable(3, {2, 3}).pow(5));
  auto h = parse_polynomial("y1*y2 - y2*s(y2)", 2);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.order(), 1);
}

TEST(Parse, ShiftDistributesOverExpressions) {
  EXPECT_EQ(parse_polynomial("s(y1*y2 - 1)", 2), parse_polynomial("s(y1)*s(y2) - 1", 2));
  EXPECT_EQ(parse_polynomial("s^2(s(y1))", 1), parse_polynomial("s^3(y1)", 1));
}

TEST(Parse, PrecedenceAndRationals) {
  EXPECT_EQ(parse_polynomial("2*y1^2 + 1/3", 1).str(), "2*y1^2 + 1/3");
  EXPECT_EQ(parse_polynomial("-(y1 - 1)^2", 1), parse_polynomial("-y1^2 + 2*y1 - 1", 1));
  EXPECT_EQ(parse_polynomial("y1 - y1", 1).str(), "0");
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_polynomial("y1 + * y2", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 5u);
  }
  EXPECT_THROW(parse_polynomial("y3", 2), ParseError);
  EXPECT_THROW(parse_polynomial("y0", 2), ParseError);
  EXPECT_THROW(parse_polynomial("s(y1", 1), ParseError);
  EXPECT_THROW(parse_polynomial("1/0", 1), ParseError);
  EXPECT_THROW(parse_polynomial("", 1), ParseError);
  EXPECT_THROW(parse_polynomial("y1 y2", 2), ParseError);
}

TEST(Parse, Cells) {
  auto c = parse_cells("{(0,1), (2,1)}");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1], (Cell{2, 1}));
  EXPECT_TRUE(parse_cells("{}").empty());
  EXPECT_EQ(cells_to_string(c), "{(0,1),(2,1)}");
  EXPECT_THROW(parse_cells("{(0,1)"), ParseError);
}

TEST(Parse, MaxVariableIndex) {
  EXPECT_EQ(max_variable_index("y1*s(y12) - y3"), 12);
  EXPECT_EQ(max_variable_index("5"), 0);
}

// Printing then reparsing is the identity on random polynomials.
TEST(Parse, RoundTripRandom) {
  std::mt19937 rng(7);
  const int n = 3;
  for (int trial = 0; trial < 300; ++trial) {
    DifferencePolynomial::TermMap terms;
    int nt = std::uniform_int_distribution<>(0, 5)(rng);
    for (int t = 0; t < nt; ++t) {
      std::vector<SigmaMonomial::Factor> fs;
      int nf = std::uniform_int_distribution<>(0, 3)(rng);
      for (int k = 0; k < nf; ++k)
        fs.push_back({{std::uniform_int_distribution<>(0, 3)(rng), std::uniform_int_distribution<>(1, n)(rng)},
                      std::uniform_int_distribution<>(1, 4)(rng)});
      long num = std::uniform_int_distribution<long>(-9, 9)(rng);
      long den = std::uniform_int_distribution<long>(1, 5)(rng);
      terms[SigmaMonomial(fs)] = Rational(num, den);
    }
    DifferencePolynomial f(n, terms);
    EXPECT_EQ(parse_polynomial(f.str(), n), f) << f.str();
  }
}
