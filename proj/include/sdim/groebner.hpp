#pragma once

// Buchberger's algorithm for ordinary polynomial ideals in finitely many
// sigma-variables under a lex order, plus leading-monomial ideals,
// elimination and Krull dimension.
//
// The standard order ranks y_1 < ... < y_n < s(y_1) < ... < s(y_n) < s^2(y_1) < ...;
// it is multiplicative, shift-compatible and order-respecting, so leading
// monomials of a truncation give the truncation of the leading-monomial sigma-ideal.

#include <sdim/monomial_sigma.hpp>
#include <sdim/poly.hpp>
#include <sdim/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdim {

// Lex order given by a ranking of finitely many variables, lowest first.
class MonomialOrder {
 public:
  MonomialOrder() = default;

  static MonomialOrder lex(std::vector<SigmaVariable> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return MonomialOrder(std::move(vars));
  }
  // Variables outside keep rank above every kept variable.
  static MonomialOrder elimination(std::vector<SigmaVariable> vars, std::vector<SigmaVariable> keep) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<SigmaVariable> ranking;
    for (const auto& v : keep) {
      if (!std::binary_search(vars.begin(), vars.end(), v))
        throw std::invalid_argument("kept variable " + to_string(v) + " is not among the ring variables");
      ranking.push_back(v);
    }
    for (const auto& v : vars)
      if (!std::binary_search(keep.begin(), keep.end(), v)) ranking.push_back(v);
    MonomialOrder o(std::move(ranking));
    o.kept_ = static_cast<int>(keep.size());
    return o;
  }

  const std::vector<SigmaVariable>& ranking() const { return ranking_; }
  std::size_t size() const { return ranking_.size(); }
  // Number of lowest-ranked variables forming the kept block (elimination orders).
  int kept() const { return kept_; }

  int rank(const SigmaVariable& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw std::invalid_argument("variable " + to_string(v) + " outside the ring");
    return it->second;
  }
  bool contains(const SigmaVariable& v) const { return index_.count(v) != 0; }

  std::strong_ordering compare(const SigmaMonomial& a, const SigmaMonomial& b) const {
    auto ea = exponents(a), eb = exponents(b);
    for (std::size_t k = ea.size(); k-- > 0;)
      if (ea[k] != eb[k]) return ea[k] <=> eb[k];
    return std::strong_ordering::equal;
  }

  std::vector<std::uint32_t> exponents(const SigmaMonomial& m) const {
    std::vector<std::uint32_t> e(ranking_.size(), 0);
    for (const auto& [v, x] : m.factors()) e[rank(v)] = static_cast<std::uint32_t>(x);
    return e;
  }

 private:
  explicit MonomialOrder(std::vector<SigmaVariable> ranking) : ranking_(std::move(ranking)) {
    for (std::size_t k = 0; k < ranking_.size(); ++k) index_[ranking_[k]] = static_cast<int>(k);
  }

  std::vector<SigmaVariable> ranking_;
  std::map<SigmaVariable, int> index_;
  int kept_ = 0;
};

// Coefficient fields for the engine.
struct RationalField {
  using value_type = mpq_class;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
  value_type neg(const value_type& a) const { return -a; }
  value_type from(const Rational& r) const { return r.raw(); }
  Rational to_rational(const value_type& a) const { return Rational(a); }
};

// Z/pZ for an odd prime p < 2^31; values are kept in [0, p).
struct PrimeField {
  std::uint32_t p;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (prime < 3) throw std::invalid_argument("prime field mode needs an odd prime");
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= prime; ++d)
      if (prime % d == 0) throw std::invalid_argument(std::to_string(prime) + " is not prime");
    if (prime >= (std::uint32_t{1} << 31)) throw std::invalid_argument("prime too large");
  }
  using value_type = std::uint32_t;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + b) % p); }
  value_type sub(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + p - b) % p); }
  value_type mul(value_type a, value_type b) const { return static_cast<value_type>(std::uint64_t{a} * b % p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, p - 2);
  }
  value_type from(const Rational& r) const {
    mpz_class num = r.raw().get_num() % p, den = r.raw().get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p));
    return mul(static_cast<value_type>(num.get_ui()), inv(static_cast<value_type>(den.get_ui())));
  }
  // Symmetric representative in (-p/2, p/2].
  Rational to_rational(value_type a) const {
    long v = a;
    if (v > static_cast<long>(p / 2)) v -= static_cast<long>(p);
    return Rational(v);
  }
};

struct GroebnerBasis {
  // Monic, reduced; ordered by increasing leading monomial.
  std::vector<DifferencePolynomial> generators;
  std::vector<SigmaMonomial> leading;  // leading monomial of each generator under `order`
  MonomialOrder order;

  bool is_unit() const { return generators.size() == 1 && leading.front().is_one(); }
  const std::vector<SigmaVariable>& variables() const { return order.ranking(); }
};

namespace detail {

using Exps = std::vector<std::uint32_t>;

inline bool exps_divides(const Exps& a, const Exps& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}
inline Exps exps_lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
  return r;
}
inline Exps exps_div(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}
inline bool exps_coprime(const Exps& a, const Exps& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && b[k]) return false;
  return true;
}
inline std::uint32_t exps_degree(const Exps& a) { return std::accumulate(a.begin(), a.end(), std::uint32_t{0}); }
// Lex comparison: highest-ranked variable decides.
inline int exps_cmp(const Exps& a, const Exps& b) {
  for (std::size_t k = a.size(); k-- > 0;)
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  return 0;
}

template <class Field>
class Engine {
 public:
  using C = typename Field::value_type;
  struct Term {
    Exps m;
    C c;
  };
  using Poly = std::vector<Term>;  // strictly decreasing monomials

  Engine(const MonomialOrder& order, Field field, int num_vars) : order_(order), f_(std::move(field)), n_(num_vars) {}

  Poly import(const DifferencePolynomial& p) const {
    Poly out;
    for (const auto& [m, c] : p.terms()) out.push_back({order_.exponents(m), f_.from(c)});
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return exps_cmp(a.m, b.m) > 0; });
    std::erase_if(out, [&](const Term& t) { return f_.is_zero(t.c); });
    return out;
  }
  DifferencePolynomial export_poly(const Poly& p) const {
    DifferencePolynomial::TermMap t;
    for (const auto& term : p) t.emplace(monomial(term.m), f_.to_rational(term.c));
    return DifferencePolynomial(n_, std::move(t));
  }
  SigmaMonomial monomial(const Exps& e) const {
    std::vector<SigmaMonomial::Factor> fs;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) fs.emplace_back(order_.ranking()[k], static_cast<int>(e[k]));
    return SigmaMonomial(std::move(fs));
  }

  void make_monic(Poly& p) const {
    if (p.empty()) return;
    C inv = f_.inv(p.front().c);
    for (auto& t : p) t.c = f_.mul(t.c, inv);
  }

  // p - c * x^shift * g
  Poly sub_mul(const Poly& p, const C& c, const Exps& mult, const Poly& g) const {
    Poly out;
    out.reserve(p.size() + g.size());
    std::size_t a = 0, b = 0;
    Exps tmp(mult.size());
    auto shifted = [&](std::size_t idx) -> const Exps& {
      for (std::size_t k = 0; k < mult.size(); ++k) tmp[k] = g[idx].m[k] + mult[k];
      return tmp;
    };
    while (a < p.size() || b < g.size()) {
      if (b == g.size()) {
        out.push_back(p[a++]);
        continue;
      }
      const Exps& gm = shifted(b);
      int cmp = a == p.size() ? -1 : exps_cmp(p[a].m, gm);
      if (cmp > 0) {
        out.push_back(p[a++]);
      } else if (cmp < 0) {
        out.push_back({gm, f_.neg(f_.mul(c, g[b].c))});
        ++b;
      } else {
        C v = f_.sub(p[a].c, f_.mul(c, g[b].c));
        if (!f_.is_zero(v)) out.push_back({p[a].m, v});
        ++a;
        ++b;
      }
    }
    return out;
  }

  // Full reduction modulo monic polynomials basis[idx] for idx in active.
  Poly normal_form(Poly p, const std::vector<Poly>& basis, const std::vector<int>& active) const {
    Poly rem;
    while (!p.empty()) {
      const Term& lead = p.front();
      int div = -1;
      for (int k : active)
        if (exps_divides(basis[k].front().m, lead.m)) {
          div = k;
          break;
        }
      if (div < 0) {
        rem.push_back(lead);
        p.erase(p.begin());
        continue;
      }
      C c = lead.c;
      Exps mult = exps_div(lead.m, basis[div].front().m);
      p = sub_mul(p, c, mult, basis[div]);
    }
    return rem;
  }

  Poly spoly(const Poly& f, const Poly& g) const {
    Exps l = exps_lcm(f.front().m, g.front().m);
    Poly a = sub_mul(Poly{}, f_.neg(f_.one()), exps_div(l, f.front().m), f);
    return sub_mul(a, f_.one(), exps_div(l, g.front().m), g);
  }

  // Reduced Groebner basis (monic, sorted by increasing leading monomial).
  std::vector<Poly> groebner(const std::vector<Poly>& input) const {
    std::vector<Poly> polys;
    std::vector<int> basis;  // indices into polys currently in G
    struct Pair {
      int i, j;
      Exps lcm;
    };
    std::vector<Pair> pairs;

    auto unit = [&]() { return std::vector<Poly>{Poly{{Exps(order_.size(), 0), f_.one()}}}; };

    // Gebauer-Moeller update with a new element h.
    auto update = [&](int h) {
      const Exps& lh = polys[h].front().m;
      std::vector<Pair> c;
      for (int g : basis) c.push_back({g, h, exps_lcm(polys[g].front().m, lh)});
      std::vector<Pair> d;
      for (std::size_t a = 0; a < c.size(); ++a) {
        bool keep = exps_coprime(polys[c[a].i].front().m, lh);
        if (!keep) {
          keep = true;
          for (std::size_t b = a + 1; b < c.size() && keep; ++b)
            if (exps_divides(c[b].lcm, c[a].lcm)) keep = false;
          for (std::size_t b = 0; b < d.size() && keep; ++b)
            if (exps_divides(d[b].lcm, c[a].lcm)) keep = false;
        }
        if (keep) d.push_back(c[a]);
      }
      std::vector<Pair> e;
      for (auto& q : d)
        if (!exps_coprime(polys[q.i].front().m, lh)) e.push_back(std::move(q));
      std::vector<Pair> kept;
      for (auto& q : pairs) {
        bool drop = exps_divides(lh, q.lcm) && exps_cmp(exps_lcm(polys[q.i].front().m, lh), q.lcm) != 0 &&
                    exps_cmp(exps_lcm(polys[q.j].front().m, lh), q.lcm) != 0;
        if (!drop) kept.push_back(std::move(q));
      }
      for (auto& q : e) kept.push_back(std::move(q));
      pairs = std::move(kept);
      std::erase_if(basis, [&](int g) { return exps_divides(lh, polys[g].front().m); });
      basis.push_back(h);
    };

    for (const auto& f : input) {
      Poly h = normal_form(f, polys, basis);
      if (h.empty()) continue;
      make_monic(h);
      if (exps_degree(h.front().m) == 0) return unit();
      polys.push_back(std::move(h));
      update(static_cast<int>(polys.size()) - 1);
    }
    while (!pairs.empty()) {
      // Normal strategy: smallest lcm by degree, then lex.
      auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        auto da = exps_degree(a.lcm), db = exps_degree(b.lcm);
        if (da != db) return da < db;
        return exps_cmp(a.lcm, b.lcm) < 0;
      });
      Pair pr = *it;
      pairs.erase(it);
      Poly h = normal_form(spoly(polys[pr.i], polys[pr.j]), polys, basis);
      if (h.empty()) continue;
      make_monic(h);
      if (exps_degree(h.front().m) == 0) return unit();
      polys.push_back(std::move(h));
      update(static_cast<int>(polys.size()) - 1);
    }

    // Interreduce.
    std::vector<Poly> g;
    for (int k : basis) g.push_back(polys[k]);
    std::sort(g.begin(), g.end(), [](const Poly& a, const Poly& b) { return exps_cmp(a.front().m, b.front().m) < 0; });
    std::vector<Poly> red(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      std::vector<int> others;
      for (std::size_t o = 0; o < g.size(); ++o)
        if (o != k) others.push_back(static_cast<int>(o));
      Poly tail(g[k].begin() + 1, g[k].end());
      Poly r = normal_form(tail, g, others);
      r.insert(r.begin(), g[k].front());
      red[k] = std::move(r);
    }
    return red;
  }

  const MonomialOrder& order() const { return order_; }
  const Field& field() const { return f_; }

 private:
  const MonomialOrder& order_;
  Field f_;
  int n_;
};

inline int infer_num_vars(const std::vector<DifferencePolynomial>& polys, const MonomialOrder& order) {
  if (!polys.empty()) {
    int n = polys.front().num_vars();
    for (const auto& p : polys)
      if (p.num_vars() != n) throw std::invalid_argument("polynomials live in rings with different num_vars");
    return n;
  }
  int n = 1;
  for (const auto& v : order.ranking()) n = std::max(n, v.index);
  return n;
}

inline void check_supported(const std::vector<DifferencePolynomial>& polys, const MonomialOrder& order) {
  for (const auto& p : polys)
    for (const auto& v : p.variables())
      if (!order.contains(v)) throw std::invalid_argument("polynomial uses " + to_string(v) + " outside the ring");
}

}  // namespace detail

// Remainder of f modulo G: no remaining monomial is divisible by a leading monomial of G.
template <class Field = RationalField>
DifferencePolynomial reduce(const DifferencePolynomial& f, const std::vector<DifferencePolynomial>& g,
                            const MonomialOrder& order, Field field = {}) {
  std::vector<DifferencePolynomial> all = g;
  all.push_back(f);
  detail::check_supported(all, order);
  detail::Engine<Field> eng(order, field, f.num_vars());
  std::vector<typename detail::Engine<Field>::Poly> basis;
  std::vector<int> active;
  for (const auto& p : g) {
    auto q = eng.import(p);
    if (q.empty()) throw std::invalid_argument("reduction by the zero polynomial");
    eng.make_monic(q);
    basis.push_back(std::move(q));
    active.push_back(static_cast<int>(basis.size()) - 1);
  }
  return eng.export_poly(eng.normal_form(eng.import(f), basis, active));
}

template <class Field = RationalField>
GroebnerBasis buchberger(const std::vector<DifferencePolynomial>& f, const MonomialOrder& order, Field field = {}) {
  detail::check_supported(f, order);
  const int n = detail::infer_num_vars(f, order);
  detail::Engine<Field> eng(order, field, n);
  std::vector<typename detail::Engine<Field>::Poly> in;
  for (const auto& p : f) in.push_back(eng.import(p));
  auto g = eng.groebner(in);
  GroebnerBasis out;
  out.order = order;
  for (const auto& p : g) {
    out.generators.push_back(eng.export_poly(p));
    out.leading.push_back(eng.monomial(p.front().m));
  }
  return out;
}

template <class Field = RationalField>
GroebnerBasis buchberger(const std::vector<DifferencePolynomial>& f, const std::vector<SigmaVariable>& vars,
                         Field field = {}) {
  return buchberger(f, MonomialOrder::lex(vars), field);
}

inline std::vector<SigmaMonomial> leading_monomial_ideal(const GroebnerBasis& g) { return g.leading; }

// Krull dimension from the squarefree supports of the leading monomials.
inline KrullDim lm_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return KrullDim::empty();
  std::vector<std::vector<int>> supports;
  for (const auto& m : g.leading) {
    std::vector<int> s;
    for (const auto& [v, e] : m.factors()) s.push_back(g.order.rank(v));
    supports.push_back(std::move(s));
  }
  return monomial_krull_dim(supports, static_cast<int>(g.order.size()));
}

template <class Field = RationalField>
KrullDim ideal_dimension(const std::vector<DifferencePolynomial>& f, const std::vector<SigmaVariable>& vars,
                         Field field = {}) {
  return lm_dimension(buchberger(f, MonomialOrder::lex(vars), field));
}

// Generators of (F) intersected with k[keep].
template <class Field = RationalField>
std::vector<DifferencePolynomial> eliminate(const std::vector<DifferencePolynomial>& f,
                                            const std::vector<SigmaVariable>& vars,
                                            const std::vector<SigmaVariable>& keep, Field field = {}) {
  MonomialOrder order = MonomialOrder::elimination(vars, keep);
  GroebnerBasis g = buchberger(f, order, field);
  std::vector<DifferencePolynomial> out;
  for (const auto& p : g.generators) {
    bool inside = true;
    for (const auto& v : p.variables())
      if (order.rank(v) >= order.kept()) inside = false;
    if (inside) out.push_back(p);
  }
  return out;
}

// Cells {0..i} x {1..n} as variables.
inline std::vector<SigmaVariable> window_variables(int n, int i) {
  std::vector<SigmaVariable> vs;
  for (int s = 0; s <= i; ++s)
    for (int j = 1; j <= n; ++j) vs.push_back({s, j});
  return vs;
}

}  // namespace sdim
