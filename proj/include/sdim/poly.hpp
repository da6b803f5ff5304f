#pragma once

// Difference polynomials over Q with sigma acting trivially on coefficients.

#include <sdim/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdim {

// sigma^shift(y_index). Index 0 is reserved for the homogenizing variable.
struct SigmaVariable {
  int shift = 0;
  int index = 1;

  friend constexpr auto operator<=>(const SigmaVariable&, const SigmaVariable&) = default;
};

inline std::string to_string(const SigmaVariable& v) {
  std::string base = "y" + std::to_string(v.index);
  if (v.shift == 0) return base;
  if (v.shift == 1) return "s(" + base + ")";
  return "s^" + std::to_string(v.shift) + "(" + base + ")";
}

// Element of N[sigma]: coefficient at i is the total degree in block sigma^i(y_0..y_n).
class SigmaDegree {
 public:
  SigmaDegree() = default;
  explicit SigmaDegree(std::map<int, int> coeffs) : c_(std::move(coeffs)) {
    std::erase_if(c_, [](const auto& kv) { return kv.second == 0; });
  }

  int at(int shift) const {
    auto it = c_.find(shift);
    return it == c_.end() ? 0 : it->second;
  }
  const std::map<int, int>& coefficients() const { return c_; }

  friend SigmaDegree operator+(const SigmaDegree& a, const SigmaDegree& b) {
    std::map<int, int> out = a.c_;
    for (auto [s, d] : b.c_) out[s] += d;
    return SigmaDegree(std::move(out));
  }
  friend bool operator==(const SigmaDegree&, const SigmaDegree&) = default;

  // "2 + 3s^3" style, with "0" for the zero degree.
  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (auto [s, d] : c_) {
      if (!out.empty()) out += " + ";
      std::string coef = std::to_string(d);
      if (s == 0) out += coef;
      else if (s == 1) out += (d == 1 ? "" : coef) + "s";
      else out += (d == 1 ? "" : coef) + "s^" + std::to_string(s);
    }
    return out;
  }

 private:
  std::map<int, int> c_;
};

// Product of sigma-variables with positive exponents, kept sorted by variable.
class SigmaMonomial {
 public:
  using Factor = std::pair<SigmaVariable, int>;

  SigmaMonomial() = default;
  explicit SigmaMonomial(std::vector<Factor> factors) : f_(std::move(factors)) { normalize(); }
  static SigmaMonomial variable(SigmaVariable v, int exp = 1) { return SigmaMonomial({{v, exp}}); }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int exponent(SigmaVariable v) const {
    auto it = std::lower_bound(f_.begin(), f_.end(), v,
                               [](const Factor& a, const SigmaVariable& b) { return a.first < b; });
    return (it != f_.end() && it->first == v) ? it->second : 0;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [v, e] : f_) d += e;
    return d;
  }
  std::optional<int> order() const {
    if (f_.empty()) return std::nullopt;
    int m = 0;
    for (const auto& [v, e] : f_) m = std::max(m, v.shift);
    return m;
  }
  std::optional<int> min_shift() const {
    if (f_.empty()) return std::nullopt;
    int m = f_.front().first.shift;
    for (const auto& [v, e] : f_) m = std::min(m, v.shift);
    return m;
  }

  std::vector<SigmaVariable> support() const {
    std::vector<SigmaVariable> s;
    s.reserve(f_.size());
    for (const auto& [v, e] : f_) s.push_back(v);
    return s;
  }
  SigmaMonomial squarefree_part() const {
    std::vector<Factor> g = f_;
    for (auto& [v, e] : g) e = 1;
    return SigmaMonomial(std::move(g));
  }
  SigmaMonomial shifted(int by) const {
    std::vector<Factor> g = f_;
    for (auto& [v, e] : g) v.shift += by;
    return SigmaMonomial(std::move(g));
  }
  bool divides(const SigmaMonomial& other) const {
    for (const auto& [v, e] : f_)
      if (other.exponent(v) < e) return false;
    return true;
  }

  friend SigmaMonomial operator*(const SigmaMonomial& a, const SigmaMonomial& b) {
    std::vector<Factor> g = a.f_;
    g.insert(g.end(), b.f_.begin(), b.f_.end());
    return SigmaMonomial(std::move(g));
  }

  friend bool operator==(const SigmaMonomial&, const SigmaMonomial&) = default;

  // Lex order with y_1 < ... < y_n < s(y_1) < ...: compare from the highest variable down.
  friend std::strong_ordering operator<=>(const SigmaMonomial& a, const SigmaMonomial& b) {
    auto ia = a.f_.rbegin(), ib = b.f_.rbegin();
    for (; ia != a.f_.rend() && ib != b.f_.rend(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first <=> ib->first;
      if (ia->second != ib->second) return ia->second <=> ib->second;
    }
    if (ia != a.f_.rend()) return std::strong_ordering::greater;
    if (ib != b.f_.rend()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (f_.empty()) return "1";
    std::string out;
    for (const auto& [v, e] : f_) {
      if (!out.empty()) out += "*";
      out += to_string(v);
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  void normalize() {
    std::sort(f_.begin(), f_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
    std::vector<Factor> merged;
    for (const auto& [v, e] : f_) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      if (!merged.empty() && merged.back().first == v) merged.back().second += e;
      else merged.emplace_back(v, e);
    }
    std::erase_if(merged, [](const Factor& x) { return x.second == 0; });
    for (const auto& [v, e] : merged)
      if (v.shift < 0 || v.index < 0) throw std::invalid_argument("negative shift or index");
    f_ = std::move(merged);
  }

  std::vector<Factor> f_;
};

inline SigmaDegree sigma_degree(const SigmaMonomial& m) {
  std::map<int, int> c;
  for (const auto& [v, e] : m.factors()) c[v.shift] += e;
  return SigmaDegree(std::move(c));
}

// Linear combination of sigma-monomials in y_1..y_n (plus y_0 after homogenization).
// Terms are kept in descending lex order, so the first term is the leading one.
class DifferencePolynomial {
 public:
  using TermMap = std::map<SigmaMonomial, Rational, std::greater<>>;

  explicit DifferencePolynomial(int num_vars = 1) : n_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
  }
  DifferencePolynomial(int num_vars, TermMap terms) : n_(num_vars), t_(std::move(terms)) {
    std::erase_if(t_, [](const auto& kv) { return kv.second.is_zero(); });
    for (const auto& [m, c] : t_)
      for (const auto& [v, e] : m.factors())
        if (v.index > n_) throw std::invalid_argument("variable index exceeds num_vars");
  }
  static DifferencePolynomial constant(int num_vars, const Rational& c) {
    return DifferencePolynomial(num_vars, TermMap{{SigmaMonomial(), c}});
  }
  static DifferencePolynomial monomial(int num_vars, const SigmaMonomial& m, const Rational& c = 1) {
    return DifferencePolynomial(num_vars, TermMap{{m, c}});
  }
  static DifferencePolynomial variable(int num_vars, SigmaVariable v) {
    return monomial(num_vars, SigmaMonomial::variable(v));
  }

  int num_vars() const { return n_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
  bool is_monomial() const { return t_.size() == 1; }
  std::size_t size() const { return t_.size(); }

  const SigmaMonomial& leading_monomial() const {
    if (t_.empty()) throw std::logic_error("zero polynomial has no leading monomial");
    return t_.begin()->first;
  }
  const Rational& leading_coefficient() const {
    if (t_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return t_.begin()->second;
  }

  // Largest shift; nullopt for constants.
  std::optional<int> order() const {
    std::optional<int> o;
    for (const auto& [m, c] : t_)
      if (auto mo = m.order()) o = std::max(o.value_or(0), *mo);
    return o;
  }

  std::vector<SigmaVariable> variables() const {
    std::vector<SigmaVariable> vs;
    for (const auto& [m, c] : t_)
      for (const auto& [v, e] : m.factors()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  DifferencePolynomial operator-() const {
    TermMap t = t_;
    for (auto& [m, c] : t) c = -c;
    return DifferencePolynomial(n_, std::move(t));
  }
  friend DifferencePolynomial operator+(const DifferencePolynomial& a, const DifferencePolynomial& b) {
    check_same_ring(a, b);
    TermMap t = a.t_;
    for (const auto& [m, c] : b.t_) t[m] += c;
    return DifferencePolynomial(a.n_, std::move(t));
  }
  friend DifferencePolynomial operator-(const DifferencePolynomial& a, const DifferencePolynomial& b) {
    check_same_ring(a, b);
    TermMap t = a.t_;
    for (const auto& [m, c] : b.t_) t[m] -= c;
    return DifferencePolynomial(a.n_, std::move(t));
  }
  friend DifferencePolynomial operator*(const DifferencePolynomial& a, const DifferencePolynomial& b) {
    check_same_ring(a, b);
    TermMap t;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) t[ma * mb] += ca * cb;
    return DifferencePolynomial(a.n_, std::move(t));
  }
  DifferencePolynomial scaled(const Rational& c) const {
    TermMap t = t_;
    for (auto& [m, x] : t) x *= c;
    return DifferencePolynomial(n_, std::move(t));
  }
  DifferencePolynomial pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power");
    DifferencePolynomial r = constant(n_, 1), base = *this;
    while (e) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  friend bool operator==(const DifferencePolynomial& a, const DifferencePolynomial& b) {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : t_) {
      bool neg = c.sign() < 0;
      Rational a = neg ? -c : c;
      if (first) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      first = false;
      if (m.is_one()) out += a.str();
      else if (a.is_one()) out += m.str();
      else out += a.str() + "*" + m.str();
    }
    return out;
  }

 private:
  static void check_same_ring(const DifferencePolynomial& a, const DifferencePolynomial& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("polynomials live in rings with different num_vars");
  }

  int n_;
  TermMap t_;
};

enum class ArithOp { add, sub, mul };

inline DifferencePolynomial poly_arith(const DifferencePolynomial& f, const DifferencePolynomial& g, ArithOp op) {
  switch (op) {
    case ArithOp::add: return f + g;
    case ArithOp::sub: return f - g;
    case ArithOp::mul: return f * g;
  }
  throw std::logic_error("unreachable");
}

// Replaces every sigma^i(y_j) by sigma^(i+by)(y_j); coefficients are fixed.
inline DifferencePolynomial shift(const DifferencePolynomial& f, int by) {
  if (by < 0) throw std::invalid_argument("negative shift");
  if (by == 0) return f;
  DifferencePolynomial::TermMap t;
  for (const auto& [m, c] : f.terms()) t.emplace(m.shifted(by), c);
  return DifferencePolynomial(f.num_vars(), std::move(t));
}

// Per-shift-block homogenization with y_0; substituting s^i(y_0) = 1 gives back f.
inline DifferencePolynomial homogenize(const DifferencePolynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot homogenize the zero polynomial");
  std::map<int, int> block_max;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors())
      if (v.index == 0) throw std::invalid_argument("input already uses y0");
    const SigmaDegree deg = sigma_degree(m);
    for (auto [s, d] : deg.coefficients()) block_max[s] = std::max(block_max[s], d);
  }
  DifferencePolynomial::TermMap t;
  for (const auto& [m, c] : f.terms()) {
    SigmaDegree deg = sigma_degree(m);
    std::vector<SigmaMonomial::Factor> pad;
    for (auto [s, d] : block_max)
      if (int gap = d - deg.at(s); gap > 0) pad.emplace_back(SigmaVariable{s, 0}, gap);
    t.emplace(m * SigmaMonomial(std::move(pad)), c);
  }
  return DifferencePolynomial(f.num_vars(), std::move(t));
}

// All terms share one sigma-degree.
inline bool is_sigma_homogeneous(const DifferencePolynomial& f) {
  if (f.is_zero()) return true;
  SigmaDegree d = sigma_degree(f.terms().begin()->first);
  for (const auto& [m, c] : f.terms())
    if (!(sigma_degree(m) == d)) return false;
  return true;
}

// Substitutes s^i(y_0) := 1.
inline DifferencePolynomial dehomogenize(const DifferencePolynomial& f) {
  DifferencePolynomial::TermMap t;
  for (const auto& [m, c] : f.terms()) {
    std::vector<SigmaMonomial::Factor> kept;
    for (const auto& fac : m.factors())
      if (fac.first.index != 0) kept.push_back(fac);
    t[SigmaMonomial(std::move(kept))] += c;
  }
  return DifferencePolynomial(f.num_vars(), std::move(t));
}

}  // namespace sdim
