#pragma once

// Covering density of finite integer sets.
//
// Positions are scanned left to right; at position x we decide whether the
// translate E + x is placed. The state records which of x..x+span-1 are
// already covered. Position x can only be covered by translates at positions
// <= x (min E = 0), so it must be covered when it leaves the window.

#include <sdim/errors.hpp>
#include <sdim/mean_cycle.hpp>
#include <sdim/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sdim {

// Finite non-empty subset of Z, translated so its minimum is 0.
class IntSet {
 public:
  explicit IntSet(std::vector<long> elements) {
    if (elements.empty()) throw std::invalid_argument("IntSet must be non-empty");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    translation_ = elements.front();
    for (long e : elements) e_.push_back(e - translation_);
  }

  const std::vector<long>& elements() const { return e_; }
  long span() const { return e_.back(); }
  std::size_t size() const { return e_.size(); }
  // Amount subtracted during normalization.
  long translation() const { return translation_; }

  // Bit k set iff k in E.
  std::uint64_t mask() const {
    if (span() >= 63) throw CapExceeded("IntSet span too large for a bitmask");
    std::uint64_t m = 0;
    for (long e : e_) m |= std::uint64_t{1} << e;
    return m;
  }

  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < e_.size(); ++k) out += (k ? "," : "") + std::to_string(e_[k]);
    return out;
  }

  friend bool operator==(const IntSet& a, const IntSet& b) { return a.e_ == b.e_; }

 private:
  std::vector<long> e_;
  long translation_ = 0;
};

inline IntSet reflect(const IntSet& e) {
  std::vector<long> neg;
  for (long x : e.elements()) neg.push_back(-x);
  return IntSet(std::move(neg));
}

// States are span-bit masks; the span cap keeps the graph at most 2^20 states.
inline constexpr long kMaxCoveringSpan = 20;

inline void check_covering_span(const IntSet& e) {
  if (e.span() > kMaxCoveringSpan)
    throw CapExceeded("covering state graph needs span <= " + std::to_string(kMaxCoveringSpan) + ", got " +
                      std::to_string(e.span()));
}

// Minimum number of translates of E covering {1..i}. Translates sit in [1-span, i].
inline long tau_interval(const IntSet& e, long i) {
  if (i < 1) throw std::invalid_argument("tau_interval needs i >= 1");
  check_covering_span(e);
  const long span = e.span();
  const std::uint64_t emask = e.mask();
  const std::uint64_t full = span == 0 ? 0 : (std::uint64_t{1} << span) - 1;
  // Before position 1 everything counts as covered.
  std::unordered_map<std::uint64_t, long> cur{{full, 0}}, next;
  for (long x = 1 - span; x <= i; ++x) {
    next.clear();
    const bool must_cover = x >= 1;
    for (const auto& [s, cost] : cur) {
      for (int place = 0; place < 2; ++place) {
        std::uint64_t w = place ? (s | emask) : s;
        if (must_cover && !(w & 1)) continue;
        std::uint64_t ns = w >> 1;
        // Positions beyond i need no coverage.
        if (span > 0 && x + span > i) ns |= std::uint64_t{1} << (span - 1);
        long nc = cost + place;
        auto it = next.find(ns);
        if (it == next.end() || it->second > nc) next[ns] = nc;
      }
    }
    std::swap(cur, next);
  }
  long best = std::numeric_limits<long>::max();
  for (const auto& [s, c] : cur) best = std::min(best, c);
  return best;
}

// Graph over reachable coverage states; edge label = 1 when a translate is placed.
inline Digraph coverage_state_graph(const IntSet& e, std::vector<std::uint64_t>* states_out = nullptr) {
  check_covering_span(e);
  const long span = e.span();
  const std::uint64_t emask = e.mask();
  const std::uint64_t full = span == 0 ? 0 : (std::uint64_t{1} << span) - 1;
  std::unordered_map<std::uint64_t, int> id;
  std::vector<std::uint64_t> states{full};
  id[full] = 0;
  Digraph g(1);
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::uint64_t s = states[k];
    for (int place = 0; place < 2; ++place) {
      std::uint64_t w = place ? (s | emask) : s;
      if (!(w & 1)) continue;
      std::uint64_t ns = w >> 1;
      auto [it, fresh] = id.emplace(ns, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(ns);
        g.add_vertex();
      }
      g.add_edge(static_cast<int>(k), it->second, place, static_cast<std::uint32_t>(place));
    }
  }
  if (states_out) *states_out = std::move(states);
  return g;
}

struct PeriodicComplement {
  long period = 1;
  std::vector<long> offsets;  // subset of {0..period-1}

  Rational density() const { return Rational(static_cast<long>(offsets.size()), period); }
};

// E + (offsets + period*Z) covers Z; checked on one period.
inline bool covers_integers(const IntSet& e, const PeriodicComplement& c) {
  if (c.period < 1) return false;
  std::vector<char> hit(c.period, 0);
  for (long o : c.offsets)
    for (long x : e.elements()) hit[((o + x) % c.period + c.period) % c.period] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

namespace detail {

inline PeriodicComplement complement_from_cycle(const Digraph& g, const std::vector<int>& cycle) {
  std::vector<int> bits;
  for (int e : cycle) bits.push_back(static_cast<int>(g.edge(e).label));
  const long len = static_cast<long>(bits.size());
  long period = len;
  for (long p = 1; p < len; ++p) {
    if (len % p) continue;
    bool ok = true;
    for (long k = p; k < len && ok; ++k) ok = bits[k] == bits[k - p];
    if (ok) {
      period = p;
      break;
    }
  }
  bits.resize(period);
  // Rotate so the first placement sits at offset 0.
  auto first = std::find(bits.begin(), bits.end(), 1);
  if (first != bits.end()) std::rotate(bits.begin(), first, bits.end());
  PeriodicComplement c;
  c.period = period;
  for (long k = 0; k < period; ++k)
    if (bits[k]) c.offsets.push_back(k);
  return c;
}

}  // namespace detail

inline PeriodicComplement optimal_complement(const IntSet& e) {
  Digraph g = coverage_state_graph(e);
  auto mc = min_mean_cycle(g);
  if (!mc) throw std::logic_error("coverage graph has no cycle");
  return detail::complement_from_cycle(g, mc->cycle);
}

inline Rational covering_density(const IntSet& e) {
  Digraph g = coverage_state_graph(e);
  auto mc = min_mean_cycle(g);
  if (!mc) throw std::logic_error("coverage graph has no cycle");
  Rational c(mc->weight, mc->length);
#ifndef NDEBUG
  // c <= tau(E,i)/i and tau(E,i) <= c*(i+span).
  const long i = 4 * (e.span() + 1);
  const long t = tau_interval(e, i);
  if (Rational(t, i) < c || Rational(t) > c * Rational(i + e.span()))
    throw std::logic_error("covering density outside the tau bracket for E = {" + e.str() + "}");
#endif
  return c;
}

}  // namespace sdim
