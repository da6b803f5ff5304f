#pragma once

// sigma-dimension of systems of difference polynomials.
//
// Univariate monomials go through the covering density, monomial systems
// through the column automaton of their family, and everything else through
// Groebner bases of shift truncations. Only the first two are ever exact for
// a non-trivial system; truncations of a general system give upper bounds
// because the sequence d_i/(i+1) converges to its infimum.

#include <sdim/covering.hpp>
#include <sdim/errors.hpp>
#include <sdim/groebner.hpp>
#include <sdim/monomial_sigma.hpp>
#include <sdim/poly.hpp>
#include <sdim/rational.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdim {

enum class Method { covering, family, truncation };
enum class CertifiedKind { exact, upper_bound };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::covering: return "covering";
    case Method::family: return "family";
    case Method::truncation: return "truncation";
  }
  return "?";
}
inline std::string to_string(CertifiedKind k) { return k == CertifiedKind::exact ? "exact" : "upper_bound"; }

struct DimEntry {
  int i;
  KrullDim d;
  bool exact;
};

// d_i = d*(i+1) + e for onset <= i <= last observed index.
struct LinearTail {
  long d = 0;
  long e = 0;
  int onset = 0;
};

struct DimensionReport {
  Method method = Method::truncation;
  std::vector<DimEntry> sequence;
  std::optional<Rational> certified_value;
  CertifiedKind certified_kind = CertifiedKind::upper_bound;
  int num_vars = 1;

  // Monomialized family (truncation path) or the input family (family path).
  std::optional<SigmaFamily> family;
  int family_depth = -1;
  std::optional<Rational> family_value;
  // Second opinion from the other exact path, when one applies.
  std::optional<Rational> cross_check;
  std::optional<LinearTail> linear_tail;
};

struct SigmaDimOptions {
  std::optional<int> i_max;
  bool monomialize = true;
};

inline constexpr int kDefaultGroebnerDepth = 8;
inline constexpr int kDefaultCombinatorialDepth = 64;

// 1 - c(E) where E is the set of shifts; exponents do not matter.
inline Rational sigma_dim_univariate_monomial(const SigmaMonomial& m) {
  if (m.is_one()) throw std::invalid_argument("constant monomial has no sigma-dimension formula");
  std::vector<long> shifts;
  const int j = m.factors().front().first.index;
  for (const auto& [v, e] : m.factors()) {
    if (v.index != j) throw std::invalid_argument("monomial involves more than one sigma-variable");
    shifts.push_back(v.shift);
  }
  return Rational(1) - covering_density(IntSet(std::move(shifts)));
}

inline Rational sigma_dim_family(const SigmaFamily& fam) {
  Digraph g = family_state_graph(fam);
  auto mc = min_mean_cycle(g);
  if (!mc) throw std::logic_error("family state graph has no cycle");
  Rational c(mc->weight, mc->length);
#ifndef NDEBUG
  // tau_L/L <= C <= (tau_L + n(w-1))/(L+w-1) for L = i+1 columns.
  const int w = fam.width();
  for (int i : {2 * w, 4 * w}) {
    const long t = tau_family(fam, i), len = i + 1;
    if (Rational(t, len) > c || c > Rational(t + static_cast<long>(fam.n()) * (w - 1), len + w - 1))
      throw std::logic_error("family density outside the tau bracket");
  }
#endif
  return Rational(fam.n()) - c;
}

namespace detail {

inline int max_order(const std::vector<DifferencePolynomial>& f) {
  int r = 0;
  for (const auto& p : f)
    if (auto o = p.order()) r = std::max(r, *o);
  return r;
}

inline bool all_order_zero(const std::vector<DifferencePolynomial>& f) {
  return std::all_of(f.begin(), f.end(), [](const DifferencePolynomial& p) { return p.order().value_or(0) == 0; });
}

inline bool all_monomials(const std::vector<DifferencePolynomial>& f) {
  return std::all_of(f.begin(), f.end(), [](const DifferencePolynomial& p) { return p.is_monomial(); });
}

inline std::vector<DifferencePolynomial> nonzero(const std::vector<DifferencePolynomial>& f) {
  std::vector<DifferencePolynomial> out;
  for (const auto& p : f)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

inline Rational min_ratio(const std::vector<DimEntry>& seq) {
  std::optional<Rational> best;
  for (const auto& e : seq) {
    if (e.d.is_empty()) continue;
    Rational r(static_cast<long>(e.d.value()), static_cast<long>(e.i + 1));
    if (!best || r < *best) best = r;
  }
  if (!best) throw UnitIdeal("every truncation is the unit ideal");
  return *best;
}

}  // namespace detail

// sigma^l f for every f in F and l + ord(f) <= i.
inline std::vector<DifferencePolynomial> truncation(const std::vector<DifferencePolynomial>& f, int i) {
  std::vector<DifferencePolynomial> out;
  for (const auto& p : f) {
    if (p.is_zero()) continue;
    const int o = p.order().value_or(0);
    for (int l = 0; l + o <= i; ++l) out.push_back(shift(p, l));
  }
  return out;
}

template <class Field = RationalField>
DimensionReport truncated_dim_sequence(const std::vector<DifferencePolynomial>& f, int i_max, Field field = {}) {
  if (f.empty()) throw std::invalid_argument("truncated_dim_sequence needs a non-empty system");
  const int n = f.front().num_vars();
  if (i_max < detail::max_order(f))
    throw std::invalid_argument("i_max must be at least the maximal order of the system");
  // Order-0 and monomial truncations coincide with [F][i].
  const bool exact = detail::all_order_zero(f) || detail::all_monomials(f);
  DimensionReport r;
  r.method = Method::truncation;
  r.num_vars = n;
  for (int i = 0; i <= i_max; ++i) {
    KrullDim d = ideal_dimension(truncation(f, i), window_variables(n, i), field);
    r.sequence.push_back({i, d, exact});
  }
  bool unit = std::any_of(r.sequence.begin(), r.sequence.end(), [](const DimEntry& e) { return e.d.is_empty(); });
  if (unit) return r;
  if (detail::all_order_zero(f)) {
    r.certified_value = Rational(r.sequence.front().d.value());
    r.certified_kind = CertifiedKind::exact;
  } else {
    r.certified_value = detail::min_ratio(r.sequence);
    r.certified_kind = CertifiedKind::upper_bound;
  }
  return r;
}

struct Monomialization {
  SigmaFamily family;
  int depth;
};

// Squarefree supports of lm(J_depth), shift-normalized.
template <class Field = RationalField>
Monomialization monomialize(const std::vector<DifferencePolynomial>& f, int depth, Field field = {}) {
  if (f.empty()) throw std::invalid_argument("monomialize needs a non-empty system");
  const int n = f.front().num_vars();
  if (depth < detail::max_order(f)) throw std::invalid_argument("depth must be at least the maximal order");
  GroebnerBasis g = buchberger(truncation(f, depth), MonomialOrder::lex(window_variables(n, depth)), field);
  if (g.is_unit()) throw UnitIdeal("truncation at depth " + std::to_string(depth) + " is the unit ideal");
  return {family_from_monomials(g.leading, n), depth};
}

// Nonzero element of (F, sF, ..., s^depth F) in k[y_T], or nullopt when none exists at this depth.
template <class Field = RationalField>
std::optional<DifferencePolynomial> not_free_certificate(const std::vector<DifferencePolynomial>& f,
                                                         const std::vector<Cell>& t, int depth, Field field = {}) {
  auto polys = detail::nonzero(f);
  if (polys.empty()) return std::nullopt;
  if (depth < 0) throw std::invalid_argument("negative depth");
  const int n = polys.front().num_vars();
  std::vector<DifferencePolynomial> gens;
  for (const auto& p : polys)
    for (int l = 0; l <= depth; ++l) gens.push_back(shift(p, l));
  std::set<SigmaVariable> vars;
  for (const auto& g : gens)
    for (const auto& v : g.variables()) vars.insert(v);
  std::vector<SigmaVariable> keep;
  for (const auto& [s, j] : t) {
    if (s < 0 || j < 1 || j > n) throw std::invalid_argument("cell outside N x {1..n}");
    keep.push_back({s, j});
    vars.insert({s, j});
  }
  auto elim = eliminate(gens, std::vector<SigmaVariable>(vars.begin(), vars.end()), keep, field);
  if (elim.empty()) return std::nullopt;
  return elim.front();
}

// Longest affine suffix of length >= 3 with non-negative (d, e).
inline std::optional<LinearTail> detect_eventual_linear(const DimensionReport& report) {
  const auto& seq = report.sequence;
  if (seq.size() < 4) return std::nullopt;
  std::vector<long> v;
  for (const auto& e : seq) {
    if (e.d.is_empty()) return std::nullopt;
    v.push_back(e.d.value());
  }
  const std::size_t last = v.size() - 1;
  const long d = v[last] - v[last - 1];
  std::size_t onset = last - 1;
  while (onset > 0 && v[onset] - v[onset - 1] == d) --onset;
  if (last - onset + 1 < 3) return std::nullopt;
  const long e = v[last] - d * (seq[last].i + 1);
  if (d < 0 || e < 0) return std::nullopt;
  return LinearTail{d, e, seq[onset].i};
}

namespace detail {

inline DimensionReport family_report(const SigmaFamily& fam, int i_max, bool entries_exact) {
  DimensionReport r;
  r.method = Method::family;
  r.num_vars = fam.n();
  for (int i = 0; i <= i_max; ++i) r.sequence.push_back({i, KrullDim(window_dim(fam, i)), entries_exact});
  r.certified_value = sigma_dim_family(fam);
  r.certified_kind = CertifiedKind::exact;
  r.family = fam;
  r.family_value = r.certified_value;
  return r;
}

}  // namespace detail

inline DimensionReport sigma_dim(const SigmaFamily& fam, const SigmaDimOptions& opt = {}) {
  auto r = detail::family_report(fam, opt.i_max.value_or(kDefaultCombinatorialDepth), true);
  r.linear_tail = detect_eventual_linear(r);
  return r;
}

// Dispatch on the shape of the system; n is the number of sigma-variables.
template <class Field = RationalField>
DimensionReport sigma_dim(const std::vector<DifferencePolynomial>& input, int n, const SigmaDimOptions& opt = {},
                          Field field = {}) {
  for (const auto& p : input)
    if (p.num_vars() != n) throw std::invalid_argument("polynomial ring does not match n");
  auto f = detail::nonzero(input);
  for (const auto& p : f)
    if (p.is_constant()) throw UnitIdeal("system contains a nonzero constant");

  if (f.empty()) {
    // Zero system: every cell is free.
    DimensionReport r;
    r.method = Method::family;
    r.num_vars = n;
    for (int i = 0; i <= opt.i_max.value_or(kDefaultCombinatorialDepth); ++i)
      r.sequence.push_back({i, KrullDim(n * (i + 1)), true});
    r.certified_value = Rational(n);
    r.certified_kind = CertifiedKind::exact;
    r.family = SigmaFamily(n);
    r.family_value = r.certified_value;
    r.linear_tail = detect_eventual_linear(r);
    return r;
  }

  if (detail::all_monomials(f)) {
    std::vector<SigmaMonomial> ms;
    bool normalized = true;
    for (const auto& p : f) {
      ms.push_back(p.leading_monomial());
      if (ms.back().min_shift().value_or(0) != 0) normalized = false;
    }
    SigmaFamily fam = family_from_monomials(ms, n);
    auto r = detail::family_report(fam, opt.i_max.value_or(kDefaultCombinatorialDepth), normalized);
    std::set<int> indices;
    for (const auto& m : ms)
      for (const auto& [v, e] : m.factors()) indices.insert(v.index);
    if (ms.size() == 1 && indices.size() == 1) {
      // Remaining n-1 variables are free.
      r.method = Method::covering;
      r.certified_value = Rational(n - 1) + sigma_dim_univariate_monomial(ms.front());
      r.cross_check = r.family_value;
      if (*r.cross_check != *r.certified_value)
        throw std::logic_error("covering and family paths disagree on " + ms.front().str());
    }
    r.linear_tail = detect_eventual_linear(r);
    return r;
  }

  const int i_max = opt.i_max.value_or(std::max(kDefaultGroebnerDepth, detail::max_order(f)));
  auto r = truncated_dim_sequence(f, i_max, field);
  if (!r.certified_value) throw UnitIdeal("the sigma-ideal generated by the system is the unit ideal");
  if (opt.monomialize && r.certified_kind != CertifiedKind::exact) {
    auto mz = monomialize(f, i_max, field);
    r.family = mz.family;
    r.family_depth = mz.depth;
    if (ColumnAutomaton::fits(mz.family)) {
      // lm(J_depth) lies in lm([F]), so this is also an upper bound for F.
      r.family_value = sigma_dim_family(mz.family);
      if (*r.family_value < *r.certified_value) r.certified_value = r.family_value;
    }
  }
  r.linear_tail = detect_eventual_linear(r);
  return r;
}

}  // namespace sdim
