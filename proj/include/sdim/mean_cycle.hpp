#pragma once

// Exact minimum mean cycle on graphs with small non-negative integer weights.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sdim {

struct WeightedEdge {
  int from;
  int to;
  int weight;
  std::uint32_t label = 0;
};

class Digraph {
 public:
  explicit Digraph(int vertices = 0) : out_(vertices) {}

  int add_vertex() {
    out_.emplace_back();
    return static_cast<int>(out_.size()) - 1;
  }
  int add_edge(int from, int to, int weight, std::uint32_t label = 0) {
    if (weight < 0) throw std::invalid_argument("negative edge weight");
    edges_.push_back({from, to, weight, label});
    out_.at(from).push_back(static_cast<int>(edges_.size()) - 1);
    return static_cast<int>(edges_.size()) - 1;
  }

  int num_vertices() const { return static_cast<int>(out_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const WeightedEdge& edge(int e) const { return edges_[e]; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }

 private:
  std::vector<std::vector<int>> out_;
  std::vector<WeightedEdge> edges_;
};

// Mean = weight / length, in lowest terms. cycle lists edge ids in walk order.
struct MeanCycle {
  std::int64_t weight = 0;
  std::int64_t length = 1;
  std::vector<int> cycle;
};

namespace detail {

__extension__ typedef __int128 i128;

inline bool frac_less(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd) {
  return static_cast<i128>(an) * bd < static_cast<i128>(bn) * ad;
}

inline MeanCycle reduced(std::int64_t w, std::int64_t l, std::vector<int> cycle) {
  std::int64_t g = std::gcd(w, l);
  if (g == 0) g = 1;
  return {w / g, l / g, std::move(cycle)};
}

// Any cycle in the subgraph of tight edges (reduced cost zero).
inline std::vector<int> find_cycle(const Digraph& g, const std::vector<char>& usable) {
  int n = g.num_vertices();
  std::vector<int> color(n, 0), via(n, -1);
  for (int root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      const auto& outs = g.out_edges(v);
      if (idx == outs.size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      int e = outs[idx++];
      if (!usable[e]) continue;
      int u = g.edge(e).to;
      if (color[u] == 1) {
        std::vector<int> cyc{e};
        for (int x = v; x != u; x = g.edge(via[x]).from) cyc.push_back(via[x]);
        std::reverse(cyc.begin(), cyc.end());
        return cyc;
      }
      if (color[u] == 0) {
        color[u] = 1;
        via[u] = e;
        stack.emplace_back(u, 0);
      }
    }
  }
  return {};
}

}  // namespace detail

// Karp's dynamic program. Memory is O(V^2); intended for V up to a few thousand.
inline std::optional<MeanCycle> karp_min_mean_cycle(const Digraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return std::nullopt;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // dist[k][v]: minimum weight of a walk with exactly k edges ending at v (any start).
  std::vector<std::vector<std::int64_t>> dist(n + 1, std::vector<std::int64_t>(n, kInf));
  std::fill(dist[0].begin(), dist[0].end(), 0);
  for (int k = 1; k <= n; ++k) {
    const auto& prev = dist[k - 1];
    auto& cur = dist[k];
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      if (prev[ed.from] == kInf) continue;
      cur[ed.to] = std::min(cur[ed.to], prev[ed.from] + ed.weight);
    }
  }
  bool found = false;
  std::int64_t best_n = 0, best_d = 1;
  for (int v = 0; v < n; ++v) {
    if (dist[n][v] == kInf) continue;
    std::int64_t wn = 0, wd = 0;
    bool any = false;
    for (int k = 0; k < n; ++k) {
      if (dist[k][v] == kInf) continue;
      std::int64_t num = dist[n][v] - dist[k][v], den = n - k;
      if (!any || detail::frac_less(wn, wd, num, den)) {
        wn = num;
        wd = den;
        any = true;
      }
    }
    if (any && (!found || detail::frac_less(wn, wd, best_n, best_d))) {
      best_n = wn;
      best_d = wd;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  std::int64_t gg = std::gcd(best_n, best_d);
  if (gg) {
    best_n /= gg;
    best_d /= gg;
  }

  // Potentials for reduced costs d*w - num; every edge on an optimal cycle is tight.
  std::vector<std::int64_t> pot(n, kInf);
  for (int k = 0; k <= n; ++k)
    for (int v = 0; v < n; ++v)
      if (dist[k][v] != kInf) pot[v] = std::min(pot[v], best_d * dist[k][v] - k * best_n);
  std::vector<char> tight(g.num_edges(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (pot[ed.from] == kInf || pot[ed.to] == kInf) continue;
    tight[e] = pot[ed.from] + best_d * ed.weight - best_n == pot[ed.to];
  }
  std::vector<int> cyc = detail::find_cycle(g, tight);
  if (cyc.empty()) throw std::logic_error("no tight cycle found after Karp");
  std::int64_t w = 0;
  for (int e : cyc) w += g.edge(e).weight;
  const auto len = static_cast<std::int64_t>(cyc.size());
  return detail::reduced(w, len, std::move(cyc));
}

// Howard's policy iteration with exact fractions; scales to large sparse graphs.
// Vertices without outgoing edges must not occur.
inline std::optional<MeanCycle> howard_min_mean_cycle(const Digraph& g) {
  using detail::i128;
  const int n = g.num_vertices();
  if (n == 0) return std::nullopt;
  for (int v = 0; v < n; ++v)
    if (g.out_edges(v).empty()) throw std::invalid_argument("vertex without outgoing edge");

  // Values are kept as numerators over a per-vertex cycle length.
  struct Frac {
    std::int64_t n, d;
  };
  auto less = [](const Frac& a, const Frac& b) { return detail::frac_less(a.n, a.d, b.n, b.d); };
  auto eq = [](const Frac& a, const Frac& b) {
    return static_cast<i128>(a.n) * b.d == static_cast<i128>(b.n) * a.d;
  };

  std::vector<int> policy(n);
  for (int v = 0; v < n; ++v) {
    const auto& outs = g.out_edges(v);
    policy[v] = *std::min_element(outs.begin(), outs.end(),
                                  [&](int a, int b) { return g.edge(a).weight < g.edge(b).weight; });
  }
  std::vector<Frac> eta(n), pot(n);
  std::vector<int> cycle_head(n);
  std::vector<std::vector<int>> rev(n);

  for (int iter = 0;; ++iter) {
    if (iter > 100000) throw std::logic_error("policy iteration did not converge");
    // Value determination on the functional graph of the policy.
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    for (auto& r : rev) r.clear();
    for (int v = 0; v < n; ++v) rev[g.edge(policy[v]).to].push_back(v);
    std::vector<char> evaluated(n, 0);
    for (int s = 0; s < n; ++s) {
      if (state[s]) continue;
      std::vector<int> path;
      int v = s;
      while (!state[v]) {
        state[v] = 1;
        path.push_back(v);
        v = g.edge(policy[v]).to;
      }
      if (state[v] == 1) {
        // New cycle through v.
        std::int64_t w = 0, len = 0;
        int u = v;
        do {
          w += g.edge(policy[u]).weight;
          ++len;
          u = g.edge(policy[u]).to;
        } while (u != v);
        // Potentials scaled by len: pot = len*(w_edge) - w + pot(next).
        std::vector<int> queue{v};
        eta[v] = {w, len};
        pot[v] = {0, len};
        cycle_head[v] = v;
        evaluated[v] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
          int x = queue[qi];
          for (int y : rev[x]) {
            if (evaluated[y]) continue;
            evaluated[y] = 1;
            eta[y] = eta[x];
            pot[y] = {pot[x].n + len * g.edge(policy[y]).weight - w, len};
            cycle_head[y] = v;
            queue.push_back(y);
          }
        }
      }
      for (int x : path) state[x] = 2;
    }

    // Improvement: first on eta, then on potentials.
    bool changed = false;
    for (int u = 0; u < n; ++u) {
      int best = policy[u];
      Frac be = eta[g.edge(best).to];
      for (int e : g.out_edges(u))
        if (less(eta[g.edge(e).to], be)) {
          be = eta[g.edge(e).to];
          best = e;
        }
      if (less(be, eta[u])) {
        policy[u] = best;
        changed = true;
      }
    }
    if (!changed) {
      for (int u = 0; u < n; ++u) {
        const Frac& eu = eta[u];
        // w(e) - eta(u) + pot(to) as a fraction num/den.
        struct Big {
          i128 n, d;
        };
        auto value = [&](int e) -> std::optional<Big> {
          int v2 = g.edge(e).to;
          if (!eq(eta[v2], eu)) return std::nullopt;
          i128 ed = eu.d, pd = pot[v2].d;
          i128 num = (static_cast<i128>(g.edge(e).weight) * ed - eu.n) * pd + static_cast<i128>(pot[v2].n) * ed;
          return Big{num, ed * pd};
        };
        Big bv{pot[u].n, pot[u].d};
        int best = -1;
        for (int e : g.out_edges(u)) {
          auto val = value(e);
          if (val && val->n * bv.d < bv.n * val->d) {
            // Keep the incumbent small to avoid overflow.
            i128 a = val->n < 0 ? -val->n : val->n, b = val->d;
            while (b) {
              i128 t = a % b;
              a = b;
              b = t;
            }
            i128 gg = a;
            bv = gg > 1 ? Big{val->n / gg, val->d / gg} : *val;
            best = e;
          }
        }
        if (best >= 0) {
          policy[u] = best;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  int arg = 0;
  for (int v = 1; v < n; ++v)
    if (less(eta[v], eta[arg])) arg = v;
  int head = cycle_head[arg];
  std::vector<int> cyc;
  int u = head;
  do {
    cyc.push_back(policy[u]);
    u = g.edge(policy[u]).to;
  } while (u != head);
  std::int64_t w = 0;
  for (int e : cyc) w += g.edge(e).weight;
  const auto len = static_cast<std::int64_t>(cyc.size());
  return detail::reduced(w, len, std::move(cyc));
}

// Karp below kKarpLimit vertices, policy iteration above.
inline constexpr int kKarpLimit = 2048;

inline std::optional<MeanCycle> min_mean_cycle(const Digraph& g) {
  if (g.num_vertices() <= kKarpLimit) return karp_min_mean_cycle(g);
  return howard_min_mean_cycle(g);
}

}  // namespace sdim
