#pragma once

// Exhaustive reference implementations used only by the tests. They share no code with the library
// beyond the instance types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "tgx/temporal_graph.hpp"

namespace brute {

using tgx::Edge;
using tgx::Instance;
using tgx::Time;
using tgx::Vertex;
using tgx::Weight;

// Components of G_t by repeated flood fill, sorted by smallest member.
inline std::vector<std::vector<Vertex>> components(const Instance& inst, Time t) {
  const Vertex n = inst.num_vertices();
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : inst.graph.snapshot(t)) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s}, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
          stack.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

struct Exploration {
  Weight best = 0;
  std::vector<std::vector<Vertex>> certificate;
};

// Every component sequence of full length L; the first optimum met in ascending order is lexicographically least.
inline Exploration explore(const Instance& inst) {
  const Time L = inst.lifetime();
  std::vector<std::vector<std::vector<Vertex>>> comps;
  for (Time t = 1; t <= L; ++t) comps.push_back(components(inst, t));
  Exploration res;
  res.best = -1;
  std::vector<std::vector<Vertex>> seq;
  auto rec = [&](auto&& self, std::set<Vertex>& visited) -> void {
    const std::size_t t = seq.size();
    if (t == static_cast<std::size_t>(L)) {
      Weight w = 0;
      for (Vertex v : visited) w += inst.weights[v];
      if (w > res.best) {
        res.best = w;
        res.certificate = seq;
      }
      return;
    }
    for (const auto& c : comps[t]) {
      bool ok = t == 0 ? std::binary_search(c.begin(), c.end(), inst.source)
                       : std::any_of(c.begin(), c.end(), [&](Vertex v) {
                           return std::binary_search(seq.back().begin(), seq.back().end(), v);
                         });
      if (!ok) continue;
      std::set<Vertex> next = visited;
      next.insert(c.begin(), c.end());
      seq.push_back(c);
      self(self, next);
      seq.pop_back();
    }
  };
  std::set<Vertex> none;
  rec(rec, none);
  return res;
}

inline bool explorable(const Instance& inst) {
  Instance unit = inst;
  std::fill(unit.weights.begin(), unit.weights.end(), 1);
  return explore(unit).best == unit.num_vertices();
}

// Best weight of a monotone walk from x to each vertex, by depth-first search over explicit walks.
inline std::vector<std::optional<Weight>> walks_from(const Instance& inst, Vertex x) {
  const Vertex n = inst.num_vertices();
  std::vector<std::vector<std::pair<Vertex, Time>>> timed(n);
  for (Time t = 1; t <= inst.lifetime(); ++t)
    for (const Edge& e : inst.graph.snapshot(t)) {
      timed[e.u].push_back({e.v, t});
      timed[e.v].push_back({e.u, t});
    }
  std::set<std::tuple<Vertex, Time, std::uint64_t>> seen;
  std::vector<std::optional<Weight>> out(n);
  auto rec = [&](auto&& self, Vertex v, Time now, std::uint64_t mask) -> void {
    if (!seen.insert({v, now, mask}).second) return;
    Weight w = 0;
    for (Vertex u = 0; u < n; ++u)
      if (mask >> u & 1) w += inst.weights[u];
    if (!out[v] || *out[v] < w) out[v] = w;
    for (auto [u, t] : timed[v])
      if (t >= now) self(self, u, t, mask | (std::uint64_t{1} << u));
  };
  rec(rec, x, 1, std::uint64_t{1} << x);
  return out;
}

struct Cut {
  std::vector<Vertex> tree_side;
  std::set<Edge> cut_set;
  auto operator<=>(const Cut&) const = default;
};

inline bool is_blue(const Instance& inst, Edge e) {
  int count = 0;
  for (Time t = 1; t <= inst.lifetime(); ++t) count += inst.graph.has_edge(e, t);
  return count == 1;
}

// Important edge cuts straight from the definition: every pair of blue edges with four distinct endpoints.
inline std::set<Cut> edge_cuts(const Instance& inst) {
  const auto& edges = inst.graph.underlying().edges();
  const Vertex n = inst.num_vertices();
  std::set<Cut> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge a = edges[i], b = edges[j];
      if (!is_blue(inst, a) || !is_blue(inst, b)) continue;
      std::set<Vertex> ends{a.u, a.v, b.u, b.v};
      if (ends.size() != 4) continue;
      for (Vertex start : {a.u, a.v}) {
        std::vector<char> in(n, 0);
        std::vector<Vertex> stack{start};
        in[start] = 1;
        std::vector<Edge> inside;
        while (!stack.empty()) {
          Vertex v = stack.back();
          stack.pop_back();
          for (const Edge& e : edges) {
            if (e == a || e == b || (e.u != v && e.v != v)) continue;
            Vertex u = e.other(v);
            if (!in[u]) {
              in[u] = 1;
              stack.push_back(u);
            }
          }
        }
        std::vector<Vertex> side;
        for (Vertex v = 0; v < n; ++v)
          if (in[v]) side.push_back(v);
        for (const Edge& e : edges)
          if (in[e.u] && in[e.v]) inside.push_back(e);
        const bool one_end_each = (in[a.u] != in[a.v]) && (in[b.u] != in[b.v]);
        const bool tree = inside.size() + 1 == side.size();
        const bool blue = std::all_of(inside.begin(), inside.end(), [&](Edge e) { return is_blue(inst, e); });
        if (one_end_each && tree && blue && !in[inst.source]) out.insert(Cut{side, {a, b}});
      }
    }
  return out;
}

struct Separation {
  Vertex x;
  std::vector<Vertex> pendant_side;
  std::vector<Time> other_times;
  auto operator<=>(const Separation&) const = default;
};

// Important separations from the definition: per x, the union of source-free all-blue tree components of G - x.
inline std::vector<Separation> separations(const Instance& inst) {
  const auto& edges = inst.graph.underlying().edges();
  const Vertex n = inst.num_vertices();
  std::vector<Separation> out;
  for (Vertex x = 0; x < n; ++x) {
    std::vector<int> comp(n, -1);
    int count = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (s == x || comp[s] >= 0) continue;
      std::vector<Vertex> stack{s};
      comp[s] = count;
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (const Edge& e : edges) {
          if (e.u != v && e.v != v) continue;
          Vertex u = e.other(v);
          if (u != x && comp[u] < 0) {
            comp[u] = count;
            stack.push_back(u);
          }
        }
      }
      ++count;
    }
    std::vector<char> good(count, 1);
    std::vector<int> size(count, 0), inner(count, 0);
    for (Vertex v = 0; v < n; ++v)
      if (v != x) ++size[comp[v]];
    if (inst.source != x) good[comp[inst.source]] = 0;
    for (const Edge& e : edges) {
      int c = comp[e.u == x ? e.v : e.u];
      ++inner[c];
      if (!is_blue(inst, e)) good[c] = 0;
    }
    for (int c = 0; c < count; ++c)
      if (inner[c] != size[c]) good[c] = 0;  // G[C + x] has |C| edges iff it is a tree
    Separation sep{x, {x}, {}};
    for (Vertex v = 0; v < n; ++v)
      if (v != x && good[comp[v]]) sep.pendant_side.push_back(v);
    std::sort(sep.pendant_side.begin(), sep.pendant_side.end());
    if (sep.pendant_side.size() < 2) continue;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (e.u != x && e.v != x) continue;
      if (good[comp[e.other(x)]]) continue;
      for (Time t : inst.graph.underlying().appearances(i)) sep.other_times.push_back(t);
    }
    std::sort(sep.other_times.begin(), sep.other_times.end());
    sep.other_times.erase(std::unique(sep.other_times.begin(), sep.other_times.end()), sep.other_times.end());
    out.push_back(sep);
  }
  return out;
}

inline bool satisfiable(int vars, const std::vector<std::vector<int>>& clauses) {
  for (int a = 0; a < (1 << vars); ++a) {
    bool ok = true;
    for (const auto& c : clauses) {
      bool sat = false;
      for (int l : c) sat = sat || (((a >> (std::abs(l) - 1)) & 1) == (l > 0));
      ok = ok && sat;
    }
    if (ok) return true;
  }
  return false;
}

// Some k elements of 1..universe meet every set.
inline bool hitting_set(int universe, const std::vector<std::vector<int>>& sets, int k) {
  for (int chosen = 0; chosen < (1 << universe); ++chosen) {
    if (__builtin_popcount(chosen) > k) continue;
    bool ok = true;
    for (const auto& s : sets)
      ok = ok && std::any_of(s.begin(), s.end(), [&](int x) { return chosen >> (x - 1) & 1; });
    if (ok) return true;
  }
  return false;
}

// One vertex from each part, no two adjacent.
inline bool multicolored_independent_set(const std::vector<std::vector<Vertex>>& parts, const std::vector<Edge>& edges) {
  std::vector<Vertex> pick;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == parts.size()) return true;
    for (Vertex v : parts[i]) {
      bool free = std::none_of(pick.begin(), pick.end(), [&](Vertex u) {
        return std::find(edges.begin(), edges.end(), Edge::make(u, v)) != edges.end();
      });
      if (!free) continue;
      pick.push_back(v);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace brute
