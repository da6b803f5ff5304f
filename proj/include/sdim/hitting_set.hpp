#pragma once

// Minimum hitting sets (hypergraph transversals) of small set systems.
//
// Branch and bound with a greedy upper bound, unit propagation, superset and
// element dominance, and a disjoint-set packing lower bound. Universes below
// kExhaustiveLimit elements are solved by enumerating subsets by size.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sdim {

class HittingSetSolver {
 public:
  static constexpr int kExhaustiveLimit = 22;

  // sets[k] lists elements in [0, universe). Returns nullopt if some set is empty.
  HittingSetSolver(int universe, const std::vector<std::vector<int>>& sets) : n_(universe) {
    if (universe < 0) throw std::invalid_argument("negative universe");
    words_ = (universe + 63) / 64;
    for (const auto& s : sets) {
      Bits b(words_, 0);
      for (int e : s) {
        if (e < 0 || e >= universe) throw std::out_of_range("hitting set element outside universe");
        b[e >> 6] |= std::uint64_t{1} << (e & 63);
      }
      if (none(b)) infeasible_ = true;
      sets_.push_back(std::move(b));
    }
  }

  // Elements that may not be used (they belong to the free side).
  void forbid(int e) { forbidden_.push_back(e); }
  // Elements that must be used.
  void force(int e) { forced_.push_back(e); }

  std::optional<std::vector<int>> solve() {
    std::vector<Bits> active = sets_;
    Bits allowed = full();
    for (int e : forbidden_) clear(allowed, e);
    std::vector<int> chosen;
    for (int e : forced_) {
      if (!test(allowed, e)) return std::nullopt;
      chosen.push_back(e);
      std::erase_if(active, [&](const Bits& s) { return test(s, e); });
    }
    for (auto& s : active) {
      s = meet(s, allowed);
      if (none(s)) return std::nullopt;
    }
    if (infeasible_) return std::nullopt;

    if (n_ < kExhaustiveLimit) {
      auto r = exhaustive(active, allowed);
      if (!r) return std::nullopt;
      chosen.insert(chosen.end(), r->begin(), r->end());
    } else {
      best_.reset();
      std::vector<int> partial;
      auto ub = greedy(active);
      best_ = ub;
      branch(std::move(active), partial);
      chosen.insert(chosen.end(), best_->begin(), best_->end());
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  std::optional<int> min_size() {
    auto r = solve();
    if (!r) return std::nullopt;
    return static_cast<int>(r->size());
  }

  std::size_t nodes_explored() const { return nodes_; }

 private:
  using Bits = std::vector<std::uint64_t>;

  Bits full() const {
    Bits b(words_, ~std::uint64_t{0});
    if (n_ % 64) b.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
    if (n_ == 0) b.clear();
    return b;
  }
  static bool test(const Bits& b, int e) { return (b[e >> 6] >> (e & 63)) & 1; }
  static void clear(Bits& b, int e) { b[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  static bool none(const Bits& b) {
    return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
  }
  static int count(const Bits& b) {
    int c = 0;
    for (auto w : b) c += std::popcount(w);
    return c;
  }
  static Bits meet(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] & b[k];
    return r;
  }
  static bool subset(const Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] & ~b[k]) return false;
    return true;
  }
  static bool disjoint(const Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] & b[k]) return false;
    return true;
  }
  static int first(const Bits& b) {
    for (std::size_t k = 0; k < b.size(); ++k)
      if (b[k]) return static_cast<int>(k * 64 + std::countr_zero(b[k]));
    return -1;
  }
  static std::vector<int> elements(const Bits& b) {
    std::vector<int> out;
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::uint64_t w = b[k]; w; w &= w - 1) out.push_back(static_cast<int>(k * 64 + std::countr_zero(w)));
    return out;
  }

  std::optional<std::vector<int>> exhaustive(const std::vector<Bits>& active, const Bits& allowed) const {
    std::vector<std::uint64_t> masks;
    for (const auto& s : active) masks.push_back(s.empty() ? 0 : s[0]);
    std::uint64_t allow = allowed.empty() ? 0 : allowed[0];
    auto hits = [&](std::uint64_t t) {
      for (auto m : masks)
        if (!(m & t)) return false;
      return true;
    };
    std::vector<int> pool;
    for (int e = 0; e < n_; ++e)
      if ((allow >> e) & 1) pool.push_back(e);
    int m = static_cast<int>(pool.size());
    for (int k = 0; k <= m; ++k) {
      if (k == 0) {
        if (hits(0)) return std::vector<int>{};
        continue;
      }
      // Gosper's hack over k-subsets of the pool.
      std::uint64_t c = (std::uint64_t{1} << k) - 1;
      while (c < (std::uint64_t{1} << m)) {
        std::uint64_t t = 0;
        for (std::uint64_t w = c; w; w &= w - 1) t |= std::uint64_t{1} << pool[std::countr_zero(w)];
        if (hits(t)) {
          std::vector<int> out;
          for (std::uint64_t w = t; w; w &= w - 1) out.push_back(std::countr_zero(w));
          return out;
        }
        std::uint64_t u = c & (~c + 1), v = u + c;
        c = v + (((v ^ c) / u) >> 2);
      }
    }
    return std::nullopt;
  }

  std::vector<int> greedy(std::vector<Bits> active) const {
    std::vector<int> out;
    while (!active.empty()) {
      std::vector<int> freq(n_, 0);
      for (const auto& s : active)
        for (int e : elements(s)) ++freq[e];
      int e = static_cast<int>(std::max_element(freq.begin(), freq.end()) - freq.begin());
      out.push_back(e);
      std::erase_if(active, [&](const Bits& s) { return test(s, e); });
    }
    return out;
  }

  // Removes supersets and duplicates; sorts by size.
  static void drop_supersets(std::vector<Bits>& active) {
    std::sort(active.begin(), active.end(), [](const Bits& a, const Bits& b) { return count(a) < count(b); });
    std::vector<Bits> kept;
    for (auto& s : active) {
      bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Bits& k) { return subset(k, s); });
      if (!dominated) kept.push_back(std::move(s));
    }
    active = std::move(kept);
  }

  // If every set containing a also contains b, a can be dropped.
  void drop_dominated_elements(std::vector<Bits>& active) const {
    std::size_t m = active.size();
    std::size_t sw = (m + 63) / 64;
    Bits uni(words_, 0);
    for (const auto& s : active)
      for (std::size_t k = 0; k < s.size(); ++k) uni[k] |= s[k];
    std::vector<int> elems = elements(uni);
    std::vector<Bits> occ(elems.size(), Bits(sw, 0));
    for (std::size_t si = 0; si < m; ++si)
      for (std::size_t a = 0; a < elems.size(); ++a)
        if (test(active[si], elems[a])) occ[a][si >> 6] |= std::uint64_t{1} << (si & 63);
    Bits removed(words_, 0);
    for (std::size_t a = 0; a < elems.size(); ++a) {
      for (std::size_t b = 0; b < elems.size(); ++b) {
        if (a == b || test(removed, elems[b])) continue;
        if (subset(occ[a], occ[b]) && (occ[a] != occ[b] || a > b)) {
          removed[elems[a] >> 6] |= std::uint64_t{1} << (elems[a] & 63);
          break;
        }
      }
    }
    if (none(removed)) return;
    for (auto& s : active)
      for (std::size_t k = 0; k < s.size(); ++k) s[k] &= ~removed[k];
  }

  int packing_bound(const std::vector<Bits>& active) const {
    int lb = 0;
    Bits used(words_, 0);
    for (const auto& s : active) {  // sorted by size
      if (disjoint(s, used)) {
        ++lb;
        for (std::size_t k = 0; k < s.size(); ++k) used[k] |= s[k];
      }
    }
    return lb;
  }

  void branch(std::vector<Bits> active, std::vector<int>& partial) {
    ++nodes_;
    // Unit propagation.
    while (true) {
      drop_supersets(active);
      if (active.empty()) break;
      if (count(active.front()) != 1) break;
      int e = first(active.front());
      partial.push_back(e);
      std::erase_if(active, [&](const Bits& s) { return test(s, e); });
    }
    if (active.empty()) {
      if (!best_ || partial.size() < best_->size()) best_ = partial;
      return;
    }
    drop_dominated_elements(active);
    for (const auto& s : active)
      if (none(s)) return;
    drop_supersets(active);
    if (best_ && static_cast<int>(partial.size()) + packing_bound(active) >= static_cast<int>(best_->size())) return;

    const Bits pivot = active.front();
    std::vector<int> cand = elements(pivot);
    // Most frequent elements first.
    std::vector<int> freq(n_, 0);
    for (const auto& s : active)
      for (int e : elements(s)) ++freq[e];
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return freq[a] > freq[b]; });

    std::vector<Bits> rest = active;
    for (int e : cand) {
      std::vector<Bits> sub;
      for (const auto& s : rest)
        if (!test(s, e)) sub.push_back(s);
      std::size_t mark = partial.size();
      partial.push_back(e);
      bool ok = std::none_of(sub.begin(), sub.end(), [](const Bits& s) { return none(s); });
      if (ok) branch(std::move(sub), partial);
      partial.resize(mark);
      // Later branches exclude e.
      for (auto& s : rest) clear(s, e);
      if (std::any_of(rest.begin(), rest.end(), [](const Bits& s) { return none(s); })) break;
    }
  }

  int n_;
  std::size_t words_;
  bool infeasible_ = false;
  std::vector<Bits> sets_;
  std::vector<int> forbidden_, forced_;
  std::optional<std::vector<int>> best_;
  std::size_t nodes_ = 0;
};

// Smallest transversal size, or nullopt when some set is empty.
inline std::optional<int> min_hitting_set_size(int universe, const std::vector<std::vector<int>>& sets) {
  return HittingSetSolver(universe, sets).min_size();
}

}  // namespace sdim
