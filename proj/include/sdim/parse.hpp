#pragma once

// Text front end for difference polynomials and cell sets.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INT)?
//   primary := INT ('/' INT)? | 'y' INT | 's' ('^' INT)? '(' expr ')' | '(' expr ')'
//
// s(...) applies the shift to the whole bracketed expression.

#include <sdim/errors.hpp>
#include <sdim/poly.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdim {

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, int n) : s_(text), n_(n) {}

  DifferencePolynomial parse() {
    skip();
    if (pos_ == s_.size()) fail("empty input");
    DifferencePolynomial f = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::string(s_.substr(start, pos_ - start));
  }
  int small_int() {
    std::size_t at = pos_;
    std::string d = digits();
    if (d.size() > 6) {
      pos_ = at;
      fail("integer too large");
    }
    return std::stoi(d);
  }

  DifferencePolynomial expr() {
    DifferencePolynomial acc = term();
    while (true) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }
  DifferencePolynomial term() {
    DifferencePolynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }
  DifferencePolynomial unary() {
    if (accept('-')) return -unary();
    return power();
  }
  DifferencePolynomial power() {
    DifferencePolynomial base = primary();
    if (accept('^')) return base.pow(small_int());
    return base;
  }
  DifferencePolynomial primary() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits());
      if (accept('/')) {
        std::size_t at = pos_;
        mpz_class den(digits());
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        return DifferencePolynomial::constant(n_, Rational(num, den));
      }
      return DifferencePolynomial::constant(n_, Rational(num));
    }
    if (c == 'y') {
      std::size_t at = pos_++;
      int idx = small_int();
      if (idx < 1 || idx > n_) {
        pos_ = at;
        fail("variable y" + std::to_string(idx) + " outside y1..y" + std::to_string(n_));
      }
      return DifferencePolynomial::variable(n_, SigmaVariable{0, idx});
    }
    if (c == 's') {
      ++pos_;
      int k = 1;
      if (accept('^')) k = small_int();
      expect('(');
      DifferencePolynomial inner = expr();
      expect(')');
      return shift(inner, k);
    }
    if (c == '(') {
      ++pos_;
      DifferencePolynomial inner = expr();
      expect(')');
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline DifferencePolynomial parse_polynomial(std::string_view text, int n) {
  return detail::PolyParser(text, n).parse();
}

// Largest y-index mentioned in the text; used to infer n when none is given.
inline int max_variable_index(std::string_view text) {
  int best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'y') continue;
    std::size_t j = i + 1;
    int v = 0;
    bool any = false;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && j - i < 8) {
      v = v * 10 + (text[j] - '0');
      ++j;
      any = true;
    }
    if (any) best = std::max(best, v);
  }
  return best;
}

using Cell = std::pair<int, int>;  // (shift, index)

// "{(0,1),(2,1)}" -> cells; "{}" is the empty set.
inline std::vector<Cell> parse_cells(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  };
  auto number = [&] {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || pos - start > 6) throw ParseError("expected non-negative integer", start);
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  std::vector<Cell> cells;
  expect('{');
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    while (true) {
      expect('(');
      int i = number();
      expect(',');
      std::size_t at = pos;
      int j = number();
      if (j < 1) throw ParseError("variable index must be >= 1", at);
      expect(')');
      cells.emplace_back(i, j);
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect('}');
      break;
    }
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing characters", pos);
  return cells;
}

inline std::string cells_to_string(const std::vector<Cell>& cells) {
  std::string out = "{";
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ",";
    out += "(" + std::to_string(cells[k].first) + "," + std::to_string(cells[k].second) + ")";
  }
  return out + "}";
}

}  // namespace sdim
