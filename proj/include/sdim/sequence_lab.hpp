#pragma once

// Exhaustive solutions of shift truncations over F_p.
//
// Heuristic evidence only: freeness is a statement over an algebraically
// closed field, and small prime fields can both create and destroy solutions.

#include <sdim/errors.hpp>
#include <sdim/monomial_sigma.hpp>
#include <sdim/poly.hpp>
#include <sdim/rational.hpp>

#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdim {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Points over the window {0..i} x {1..n}; coordinate of cell (s, j) is s*n + j-1.
struct TruncatedSolutionSet {
  std::uint32_t p = 2;
  int i = 0;
  int n = 1;
  std::vector<std::uint32_t> coords;  // size() * dimension() values, odometer order

  int dimension() const { return n * (i + 1); }
  std::size_t size() const { return dimension() == 0 ? 0 : coords.size() / dimension(); }
  std::span<const std::uint32_t> point(std::size_t k) const {
    return {coords.data() + k * dimension(), static_cast<std::size_t>(dimension())};
  }
};

namespace detail {

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint32_t mod_p(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

inline std::uint32_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

struct CompiledTerm {
  std::uint32_t coef;
  std::vector<std::pair<int, int>> factors;  // (coordinate, exponent)
};

struct CompiledEquation {
  std::vector<CompiledTerm> terms;
  int last_coord = -1;  // decided once this coordinate is assigned

  std::uint32_t eval(const std::vector<std::uint32_t>& x, std::uint32_t p) const {
    std::uint64_t sum = 0;
    for (const auto& t : terms) {
      std::uint64_t v = t.coef;
      for (const auto& [c, e] : t.factors) v = v * pow_mod(x[c], e, p) % p;
      sum = (sum + v) % p;
    }
    return static_cast<std::uint32_t>(sum);
  }
};

}  // namespace detail

inline TruncatedSolutionSet enumerate_truncated_solutions(const std::vector<DifferencePolynomial>& f, std::uint32_t p,
                                                          int i, std::uint64_t budget = kDefaultEnumerationBudget) {
  if (!detail::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (i < 0) throw std::invalid_argument("negative window order");
  const int n = f.empty() ? 1 : f.front().num_vars();
  TruncatedSolutionSet out;
  out.p = p;
  out.i = i;
  out.n = n;
  const int dim = out.dimension();
  long double candidates = std::pow(static_cast<long double>(p), dim);
  if (candidates > static_cast<long double>(budget))
    throw CapExceeded("enumeration needs " + std::to_string(p) + "^" + std::to_string(dim) +
                      " candidates, budget is " + std::to_string(budget));

  std::vector<detail::CompiledEquation> eqs;
  for (const auto& g : f) {
    if (g.num_vars() != n) throw std::invalid_argument("polynomials live in rings with different num_vars");
    if (g.is_zero()) continue;
    const int o = g.order().value_or(0);
    for (int l = 0; l + o <= i; ++l) {
      detail::CompiledEquation eq;
      const DifferencePolynomial shifted = shift(g, l);
      for (const auto& [m, c] : shifted.terms()) {
        if (detail::mod_p(c.raw().get_den(), p) == 0)
          throw std::domain_error("coefficient denominator vanishes modulo " + std::to_string(p));
        std::uint32_t num = detail::mod_p(c.raw().get_num(), p);
        std::uint32_t den = detail::mod_p(c.raw().get_den(), p);
        detail::CompiledTerm t{static_cast<std::uint32_t>(std::uint64_t{num} * detail::pow_mod(den, p - 2, p) % p), {}};
        for (const auto& [v, e] : m.factors()) {
          int coord = cell_id({v.shift, v.index}, n);
          t.factors.emplace_back(coord, e);
          eq.last_coord = std::max(eq.last_coord, coord);
        }
        eq.terms.push_back(std::move(t));
      }
      eqs.push_back(std::move(eq));
    }
  }
  // Equations grouped by the coordinate that completes them.
  std::vector<std::vector<const detail::CompiledEquation*>> ready(dim + 1);
  for (const auto& eq : eqs) ready[eq.last_coord + 1].push_back(&eq);  // -1 -> checked before anything

  std::vector<std::uint32_t> x(dim, 0);
  for (const auto* eq : ready[0])
    if (eq->eval(x, p) != 0) return out;
  if (dim == 0) return out;
  // Depth-first odometer: the last coordinate moves fastest.
  int k = 0;
  std::vector<std::uint32_t> next(dim, 0);
  while (k >= 0) {
    if (next[k] == p) {
      next[k] = 0;
      --k;
      continue;
    }
    x[k] = next[k]++;
    bool ok = true;
    for (const auto* eq : ready[k + 1])
      if (eq->eval(x, p) != 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (k + 1 == dim) {
      out.coords.insert(out.coords.end(), x.begin(), x.end());
    } else {
      ++k;
    }
  }
  return out;
}

inline std::size_t projection_count(const TruncatedSolutionSet& sols, const std::vector<Cell>& t) {
  std::vector<int> coords;
  for (const auto& c : t) {
    if (c.first < 0 || c.first > sols.i || c.second < 1 || c.second > sols.n)
      throw std::invalid_argument("projection cell outside the window");
    coords.push_back(cell_id(c, sols.n));
  }
  std::set<std::vector<std::uint32_t>> image;
  for (std::size_t k = 0; k < sols.size(); ++k) {
    auto pt = sols.point(k);
    std::vector<std::uint32_t> proj;
    for (int c : coords) proj.push_back(pt[c]);
    image.insert(std::move(proj));
  }
  return image.size();
}

// |pi_T(solutions)| / p^|T|.
inline Rational empirical_free_check(const std::vector<DifferencePolynomial>& f, std::uint32_t p, int i,
                                     const std::vector<Cell>& t, std::uint64_t budget = kDefaultEnumerationBudget) {
  auto sols = enumerate_truncated_solutions(f, p, i, budget);
  std::set<Cell> distinct(t.begin(), t.end());
  std::vector<Cell> cells(distinct.begin(), distinct.end());
  mpz_class denom = 1;
  for (std::size_t k = 0; k < cells.size(); ++k) denom *= p;
  return Rational(mpz_class(projection_count(sols, cells)), denom);
}

}  // namespace sdim
