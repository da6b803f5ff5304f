#pragma once

// Squarefree monomial sigma-ideals as families of finite supports in N x {1..n}.
//
// A window of order i has cells {0..i} x {1..n}; cell (c, j) gets id c*n + j-1.
// tau(S, i) is the minimum number of cells hitting every shift of every member
// that fits in the window, and the window dimension is n(i+1) - tau(S, i).

#include <sdim/errors.hpp>
#include <sdim/hitting_set.hpp>
#include <sdim/mean_cycle.hpp>
#include <sdim/parse.hpp>
#include <sdim/poly.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sdim {

// Krull dimension; "empty" stands for the zero ring (unit ideal).
class KrullDim {
 public:
  KrullDim() = default;
  explicit KrullDim(int d) : v_(d) {}
  static KrullDim empty() { return KrullDim(); }

  bool is_empty() const { return !v_.has_value(); }
  int value() const {
    if (!v_) throw std::logic_error("dimension of the zero ring requested");
    return *v_;
  }
  std::string str() const { return v_ ? std::to_string(*v_) : "empty"; }

  friend bool operator==(const KrullDim&, const KrullDim&) = default;

 private:
  std::optional<int> v_;
};

// dim k[x_0..x_{m-1}]/(prod_{l in S} x_l : S in supports) = m - (minimum transversal).
inline KrullDim monomial_krull_dim(const std::vector<std::vector<int>>& supports, int m) {
  auto t = min_hitting_set_size(m, supports);
  if (!t) return KrullDim::empty();
  return KrullDim(m - *t);
}

// Non-empty finite subset of N x {1..n}, translated so its minimum shift is 0.
class SupportSet {
 public:
  explicit SupportSet(std::vector<Cell> cells) {
    if (cells.empty()) throw UnitIdeal("empty support corresponds to the unit ideal");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    int lo = cells.front().first;
    for (auto& [s, j] : cells) {
      if (s < 0 || j < 1) throw std::invalid_argument("support cell outside N x {1..n}");
      s -= lo;
    }
    cells_ = std::move(cells);
  }

  const std::vector<Cell>& cells() const { return cells_; }
  int order() const {
    int o = 0;
    for (const auto& [s, j] : cells_) o = std::max(o, s);
    return o;
  }
  int max_index() const {
    int m = 0;
    for (const auto& [s, j] : cells_) m = std::max(m, j);
    return m;
  }
  // True iff sigma^l(*this) is a subset of `cells` (sorted).
  bool shifted_subset_of(const std::vector<Cell>& cells, int l) const {
    for (const auto& [s, j] : cells_)
      if (!std::binary_search(cells.begin(), cells.end(), Cell{s + l, j})) return false;
    return true;
  }
  // Some shift of *this is contained in `other`.
  bool embeds_in(const SupportSet& other) const {
    for (int l = 0; l + order() <= other.order(); ++l)
      if (shifted_subset_of(other.cells_, l)) return true;
    return false;
  }

  std::string str() const { return cells_to_string(cells_); }

  friend auto operator<=>(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<Cell> cells_;
};

// Antichain of supports under shifted containment; encodes M(S).
class SigmaFamily {
 public:
  explicit SigmaFamily(int n, std::vector<SupportSet> members = {}) : n_(n) {
    if (n < 1) throw std::invalid_argument("a family needs at least one sigma-variable");
    for (const auto& m : members)
      if (m.max_index() > n) throw std::invalid_argument("support uses a variable index above n");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    // Drop members containing a shift of another member.
    std::vector<SupportSet> kept;
    for (std::size_t a = 0; a < members.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < members.size() && !redundant; ++b)
        redundant = a != b && members[b].embeds_in(members[a]);
      if (!redundant) kept.push_back(members[a]);
    }
    members_ = std::move(kept);
  }

  static SigmaFamily from_cells(int n, const std::vector<std::vector<Cell>>& supports) {
    std::vector<SupportSet> ms;
    for (const auto& s : supports) ms.emplace_back(s);
    return SigmaFamily(n, std::move(ms));
  }

  int n() const { return n_; }
  const std::vector<SupportSet>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  // 1 + max order; 1 for the empty family.
  int width() const {
    int w = 1;
    for (const auto& m : members_) w = std::max(w, m.order() + 1);
    return w;
  }

  std::string str() const {
    std::string out;
    for (const auto& m : members_) out += m.str() + "\n";
    return out;
  }

  friend bool operator==(const SigmaFamily&, const SigmaFamily&) = default;

 private:
  int n_;
  std::vector<SupportSet> members_;
};

// Squarefree supports of the monomials, shift-normalized, redundancies removed.
inline SigmaFamily family_from_monomials(const std::vector<SigmaMonomial>& monomials, int n) {
  std::vector<SupportSet> ms;
  for (const auto& m : monomials) {
    if (m.is_one()) throw UnitIdeal("constant monomial generates the unit ideal");
    std::vector<Cell> cells;
    for (const auto& [v, e] : m.factors()) {
      if (v.index < 1 || v.index > n) throw std::invalid_argument("monomial variable outside y1..yn");
      cells.emplace_back(v.shift, v.index);
    }
    ms.emplace_back(std::move(cells));
  }
  return SigmaFamily(n, std::move(ms));
}

inline int cell_id(const Cell& c, int n) { return c.first * n + (c.second - 1); }
inline Cell cell_of(int id, int n) { return {id / n, id % n + 1}; }

// Every shift of every member inside the order-i window, as cell-id lists.
inline std::vector<std::vector<int>> window_constraints(const SigmaFamily& fam, int i) {
  std::vector<std::vector<int>> out;
  for (const auto& m : fam.members()) {
    for (int l = 0; l + m.order() <= i; ++l) {
      std::vector<int> ids;
      for (const auto& [s, j] : m.cells()) ids.push_back(cell_id({s + l, j}, fam.n()));
      out.push_back(std::move(ids));
    }
  }
  return out;
}

// No shifted member lies inside T.
inline bool is_free(std::vector<Cell> t, const SigmaFamily& fam) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  int top = 0;
  for (const auto& [s, j] : t) {
    if (s < 0 || j < 1 || j > fam.n()) throw std::invalid_argument("cell outside N x {1..n}");
    top = std::max(top, s);
  }
  if (t.empty()) return true;
  for (const auto& m : fam.members())
    for (int l = 0; l + m.order() <= top; ++l)
      if (m.shifted_subset_of(t, l)) return false;
  return true;
}

// Sliding window over columns: a state holds the picks (hitting-set cells) of
// the last w-1 columns, bit c*n + j-1 with column 0 the oldest. Appending a
// column pattern checks every member whose last column is the new one.
class ColumnAutomaton {
 public:
  static constexpr int kMaxWindowBits = 20;

  explicit ColumnAutomaton(const SigmaFamily& fam) : n_(fam.n()), w_(fam.width()) {
    if (n_ * w_ > kMaxWindowBits)
      throw CapExceeded("window automaton needs n * width <= " + std::to_string(kMaxWindowBits) + ", got " +
                        std::to_string(n_ * w_));
    for (const auto& m : fam.members()) {
      std::uint32_t mask = 0;
      int o = m.order();
      for (const auto& [s, j] : m.cells()) mask |= std::uint32_t{1} << ((w_ - 1 - o + s) * n_ + (j - 1));
      masks_.push_back(mask);
    }
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
    feasible_.assign(std::size_t{1} << (n_ * w_), -1);
  }

  static bool fits(const SigmaFamily& fam) { return fam.n() * fam.width() <= kMaxWindowBits; }

  int n() const { return n_; }
  int width() const { return w_; }
  int state_bits() const { return n_ * (w_ - 1); }
  std::uint32_t num_states() const { return std::uint32_t{1} << state_bits(); }
  std::uint32_t num_patterns() const { return std::uint32_t{1} << n_; }
  // State reached before column 0: every virtual earlier column fully picked.
  std::uint32_t start_state() const { return num_states() - 1; }

  bool feasible(std::uint32_t state, std::uint32_t pattern) {
    std::uint32_t win = state | (pattern << state_bits());
    auto& f = feasible_[win];
    if (f < 0) {
      f = 1;
      for (auto m : masks_)
        if (!(win & m)) {
          f = 0;
          break;
        }
    }
    return f != 0;
  }
  std::uint32_t next(std::uint32_t state, std::uint32_t pattern) const {
    std::uint32_t win = state | (pattern << state_bits());
    return win >> n_;
  }

 private:
  int n_, w_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::int8_t> feasible_;
};

// tau(S, i) by branch and bound on the explicit window constraints.
inline int tau_family_search(const SigmaFamily& fam, int i) {
  if (i < 0) throw std::invalid_argument("window order must be >= 0");
  auto t = min_hitting_set_size(fam.n() * (i + 1), window_constraints(fam, i));
  if (!t) throw std::logic_error("family member with empty support");
  return *t;
}

// tau(S, i) by dynamic programming over the column automaton.
inline int tau_family_dp(const SigmaFamily& fam, int i) {
  if (i < 0) throw std::invalid_argument("window order must be >= 0");
  ColumnAutomaton a(fam);
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> cur(a.num_states(), kInf), nxt(a.num_states(), kInf);
  cur[a.start_state()] = 0;
  for (int c = 0; c <= i; ++c) {
    std::fill(nxt.begin(), nxt.end(), kInf);
    for (std::uint32_t s = 0; s < a.num_states(); ++s) {
      if (cur[s] == kInf) continue;
      for (std::uint32_t p = 0; p < a.num_patterns(); ++p) {
        if (!a.feasible(s, p)) continue;
        int cost = cur[s] + std::popcount(p);
        auto& slot = nxt[a.next(s, p)];
        slot = std::min(slot, cost);
      }
    }
    std::swap(cur, nxt);
  }
  return *std::min_element(cur.begin(), cur.end());
}

inline int tau_family(const SigmaFamily& fam, int i) {
  if (ColumnAutomaton::fits(fam)) return tau_family_dp(fam, i);
  return tau_family_search(fam, i);
}

inline int window_dim(const SigmaFamily& fam, int i) { return fam.n() * (i + 1) - tau_family(fam, i); }

namespace detail {

// Lexicographically smallest maximum free set via forced/forbidden hitting-set calls.
inline std::vector<Cell> max_free_subset_search(const SigmaFamily& fam, int i) {
  const int cells = fam.n() * (i + 1);
  const auto cons = window_constraints(fam, i);
  const int best = *min_hitting_set_size(cells, cons);
  std::vector<int> in_t, in_h;
  for (int id = 0; id < cells; ++id) {
    HittingSetSolver s(cells, cons);
    for (int x : in_t) s.forbid(x);
    for (int x : in_h) s.force(x);
    s.forbid(id);
    auto r = s.min_size();
    if (r && *r == best) in_t.push_back(id);
    else in_h.push_back(id);
  }
  std::vector<Cell> out;
  for (int id : in_t) out.push_back(cell_of(id, fam.n()));
  return out;
}

}  // namespace detail

// A free set of size window_dim(S, i); ties broken towards the lexicographically
// smallest sorted cell sequence.
inline std::vector<Cell> max_free_subset(const SigmaFamily& fam, int i) {
  if (i < 0) throw std::invalid_argument("window order must be >= 0");
  constexpr std::size_t kMaxTable = std::size_t{1} << 24;
  if (!ColumnAutomaton::fits(fam) ||
      static_cast<std::size_t>(i + 2) * (std::size_t{1} << (fam.n() * (fam.width() - 1))) > kMaxTable)
    return detail::max_free_subset_search(fam, i);

  ColumnAutomaton a(fam);
  const std::uint32_t ns = a.num_states(), np = a.num_patterns();
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  // suffix[c][s]: fewest picks in columns c..i from state s.
  std::vector<std::vector<int>> suffix(i + 2, std::vector<int>(ns, kInf));
  std::fill(suffix[i + 1].begin(), suffix[i + 1].end(), 0);
  for (int c = i; c >= 0; --c)
    for (std::uint32_t s = 0; s < ns; ++s)
      for (std::uint32_t p = 0; p < np; ++p)
        if (a.feasible(s, p)) suffix[c][s] = std::min(suffix[c][s], std::popcount(p) + suffix[c + 1][a.next(s, p)]);

  // Prefer including (c,1), then (c,2), ... in the free set.
  auto prefer = [&](std::uint32_t p, std::uint32_t q) {
    for (int j = 0; j < a.n(); ++j) {
      bool fp = !((p >> j) & 1), fq = !((q >> j) & 1);
      if (fp != fq) return fp;
    }
    return false;
  };
  std::vector<Cell> out;
  std::uint32_t s = a.start_state();
  for (int c = 0; c <= i; ++c) {
    std::optional<std::uint32_t> pick;
    for (std::uint32_t p = 0; p < np; ++p) {
      if (!a.feasible(s, p)) continue;
      if (std::popcount(p) + suffix[c + 1][a.next(s, p)] != suffix[c][s]) continue;
      if (!pick || prefer(p, *pick)) pick = p;
    }
    for (int j = 0; j < a.n(); ++j)
      if (!((*pick >> j) & 1)) out.emplace_back(c, j + 1);
    s = a.next(s, *pick);
  }
  return out;
}

// Reachable part of the column automaton as a weighted graph (weight = picks).
inline Digraph family_state_graph(const SigmaFamily& fam) {
  ColumnAutomaton a(fam);
  std::unordered_map<std::uint32_t, int> id;
  std::vector<std::uint32_t> states{a.start_state()};
  id[a.start_state()] = 0;
  Digraph g(1);
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::uint32_t s = states[k];
    for (std::uint32_t p = 0; p < a.num_patterns(); ++p) {
      if (!a.feasible(s, p)) continue;
      std::uint32_t t = a.next(s, p);
      auto [it, fresh] = id.emplace(t, static_cast<int>(states.size()));
      if (fresh) {
        states.push_back(t);
        g.add_vertex();
      }
      g.add_edge(static_cast<int>(k), it->second, std::popcount(p), p);
    }
  }
  return g;
}

// Family text: one member per line, e.g. "{(0,1),(1,1)}". Blank lines and
// '#' comments are skipped; an optional "n = N" line fixes the variable count.
inline SigmaFamily parse_family(const std::string& text, std::optional<int> n_hint = std::nullopt) {
  std::vector<std::vector<Cell>> supports;
  std::optional<int> n = n_hint;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(line_start, end - line_start);
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos) {
      line = line.substr(first);
      line.erase(line.find_last_not_of(" \t\r") + 1);
      if (line[0] == 'n') {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'n = N'", line_start);
        try {
          n = std::stoi(line.substr(eq + 1));
        } catch (const std::exception&) {
          throw ParseError("bad variable count", line_start + eq + 1);
        }
      } else {
        try {
          auto cells = parse_cells(line);
          if (cells.empty()) throw UnitIdeal("empty family member corresponds to the unit ideal");
          supports.push_back(std::move(cells));
        } catch (const ParseError& e) {
          throw ParseError("family member: " + e.reason, line_start + e.position);
        }
      }
    }
    line_start = end + 1;
  }
  int maxj = 1;
  for (const auto& s : supports)
    for (const auto& c : s) maxj = std::max(maxj, c.second);
  return SigmaFamily::from_cells(n.value_or(maxj), supports);
}

}  // namespace sdim
