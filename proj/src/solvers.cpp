#include "tgx/solvers.hpp"

#include <algorithm>
#include <array>
#include <boost/pending/disjoint_sets.hpp>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "tgx/kernelizer.hpp"

namespace tgx {

SolverLimits limits_from_env(SolverLimits base) {
  if (const char* env = std::getenv("TGX_BUDGET")) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
    if (ec == std::errc() && *ptr == '\0' && value > 0) base.search_budget = value;
  }
  return base;
}

namespace {

// Component structure of every snapshot plus which components of G_{t+1} meet each component of G_t.
struct Layers {
  std::vector<std::vector<std::int32_t>> label;                  // [t-1][v]
  std::vector<std::vector<std::vector<Vertex>>> members;         // [t-1][c]
  std::vector<std::vector<std::vector<std::int32_t>>> next;      // [t-1][c] -> components at t+1

  explicit Layers(const TemporalGraph& g) {
    const Time L = g.lifetime();
    label.resize(L);
    members.resize(L);
    next.resize(L);
    for (Time t = 1; t <= L; ++t) {
      label[t - 1] = component_labels(g, t);
      std::int32_t count = *std::max_element(label[t - 1].begin(), label[t - 1].end()) + 1;
      members[t - 1].assign(count, {});
      for (Vertex v = 0; v < g.num_vertices(); ++v) members[t - 1][label[t - 1][v]].push_back(v);
    }
    for (Time t = 1; t < L; ++t) {
      auto& out = next[t - 1];
      out.resize(members[t - 1].size());
      for (std::size_t c = 0; c < out.size(); ++c) {
        for (Vertex v : members[t - 1][c]) out[c].push_back(label[t][v]);
        std::sort(out[c].begin(), out[c].end());
        out[c].erase(std::unique(out[c].begin(), out[c].end()), out[c].end());
      }
    }
  }
};

class MaskWeights {
 public:
  explicit MaskWeights(std::span<const Weight> w) {
    const std::size_t n = w.size();
    lo_bits_ = std::min<std::size_t>(n, 16);
    hi_bits_ = n - lo_bits_;
    lo_.assign(std::size_t{1} << lo_bits_, 0);
    hi_.assign(std::size_t{1} << hi_bits_, 0);
    for (std::size_t m = 1; m < lo_.size(); ++m) {
      auto b = static_cast<std::size_t>(__builtin_ctzll(m));
      lo_[m] = lo_[m & (m - 1)] + w[b];
    }
    for (std::size_t m = 1; m < hi_.size(); ++m) {
      auto b = static_cast<std::size_t>(__builtin_ctzll(m));
      hi_[m] = hi_[m & (m - 1)] + w[lo_bits_ + b];
    }
  }
  Weight operator()(std::uint32_t mask) const {
    return lo_[mask & ((1u << lo_bits_) - 1)] + hi_[lo_bits_ == 32 ? 0 : (mask >> lo_bits_)];
  }

 private:
  std::size_t lo_bits_, hi_bits_;
  std::vector<Weight> lo_, hi_;
};

}  // namespace

OptimalExploration solve_oracle(const Instance& inst, const SolverLimits& limits) {
  const Vertex n = inst.num_vertices();
  if (n > limits.max_oracle_vertices || n > 32)
    throw Error(ErrorCode::InstanceTooLargeForOracle,
                "oracle supports at most " + std::to_string(std::min<Vertex>(limits.max_oracle_vertices, 32)) +
                    " vertices, got " + std::to_string(n));
  (void)inst.total_weight();  // overflow check once; partial sums are then safe
  const Time L = inst.lifetime();
  Layers layers(inst.graph);
  std::vector<std::vector<std::uint32_t>> comp_mask(L);
  for (Time t = 0; t < L; ++t) {
    comp_mask[t].assign(layers.members[t].size(), 0);
    for (std::size_t c = 0; c < layers.members[t].size(); ++c)
      for (Vertex v : layers.members[t][c]) comp_mask[t][c] |= 1u << v;
  }
  MaskWeights weight(inst.weights);

  struct State {
    std::int32_t comp;
    std::uint32_t mask;
    std::int32_t parent;
  };
  // States within a layer are kept in lexicographic order of the component prefix that reached them.
  // A newcomer is dropped when an earlier state at the same component already covers its visited set;
  // the earlier prefix is lexicographically smaller, so the least optimal sequence is never lost.
  std::vector<std::vector<State>> layer(L);
  const auto c0 = layers.label[0][inst.source];
  layer[0].push_back({c0, comp_mask[0][c0], -1});
  for (Time t = 1; t < L; ++t) {
    std::vector<std::vector<std::int32_t>> bucket(comp_mask[t].size());
    auto& out = layer[t];
    const auto& in = layer[t - 1];
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(in.size()); ++i) {
      for (std::int32_t c : layers.next[t - 1][in[i].comp]) {
        const std::uint32_t nm = in[i].mask | comp_mask[t][c];
        bool dominated = false;
        for (std::int32_t idx : bucket[c])
          if ((out[idx].mask & nm) == nm) {
            dominated = true;
            break;
          }
        if (dominated) continue;
        bucket[c].push_back(static_cast<std::int32_t>(out.size()));
        out.push_back({c, nm, i});
      }
    }
  }
  const auto& last = layer[L - 1];
  std::int32_t best = 0;
  Weight best_w = weight(last[0].mask);
  for (std::int32_t i = 1; i < static_cast<std::int32_t>(last.size()); ++i) {
    Weight w = weight(last[i].mask);
    if (w > best_w) {
      best_w = w;
      best = i;
    }
  }
  OptimalExploration result;
  result.max_weight = best_w;
  result.certificate.components.resize(L);
  for (Time t = L - 1, i = best; t >= 0; --t) {
    const State& s = layer[t][i];
    result.certificate.components[t] = layers.members[t][s.comp];
    i = s.parent;
  }
  return result;
}

OptimalExploration solve_search_tree(const Instance& inst, const SolverLimits& limits) {
  (void)inst.total_weight();
  const Time L = inst.lifetime();
  Layers layers(inst.graph);
  std::vector<std::int32_t> count(inst.num_vertices(), 0);
  std::vector<std::int32_t> seq(L, -1), best_seq;
  Weight current = 0, best = -1;
  std::uint64_t nodes = 0;

  auto enter = [&](Time t, std::int32_t c) {
    for (Vertex v : layers.members[t][c])
      if (count[v]++ == 0) current += inst.weights[v];
  };
  auto leave = [&](Time t, std::int32_t c) {
    for (Vertex v : layers.members[t][c])
      if (--count[v] == 0) current -= inst.weights[v];
  };
  // Components are tried in increasing order, so the first sequence reaching a new maximum is the least one.
  auto dfs = [&](auto&& self, Time t, std::int32_t c) -> void {
    if (++nodes > limits.search_budget)
      throw Error(ErrorCode::BudgetExceeded, "search tree exceeded " + std::to_string(limits.search_budget) + " nodes");
    seq[t] = c;
    enter(t, c);
    if (t == L - 1) {
      if (current > best) {
        best = current;
        best_seq = seq;
      }
    } else {
      for (std::int32_t nc : layers.next[t][c]) self(self, t + 1, nc);
    }
    leave(t, c);
  };
  dfs(dfs, 0, layers.label[0][inst.source]);

  OptimalExploration result;
  result.max_weight = best;
  for (Time t = 0; t < L; ++t) result.certificate.components.push_back(layers.members[t][best_seq[t]]);
  return result;
}

FullExploration solve_full_exploration(const Instance& inst, const SolverLimits& limits) {
  Instance unit = inst;
  unit.weights.assign(inst.num_vertices(), 1);
  unit.k = inst.num_vertices();
  OptimalExploration opt = inst.num_vertices() <= std::min<Vertex>(limits.max_oracle_vertices, 32)
                               ? solve_oracle(unit, limits)
                               : solve_search_tree(unit, limits);
  FullExploration res;
  res.visited = static_cast<Vertex>(opt.max_weight);
  res.explorable = opt.max_weight == inst.num_vertices();
  if (res.explorable) res.certificate = std::move(opt.certificate);
  return res;
}

TemporalTree TemporalTree::from_edges(Vertex n, Time L, const std::vector<std::tuple<Vertex, Vertex, Time>>& edges) {
  if (n < 1) throw Error(ErrorCode::NotATemporalTree, "tree needs at least one vertex");
  if (L < 1) throw Error(ErrorCode::InvalidLifetime, "lifetime must be at least 1");
  if (static_cast<Vertex>(edges.size()) != n - 1)
    throw Error(ErrorCode::NotATemporalTree, "a tree on n vertices has n-1 edges");
  boost::disjoint_sets_with_storage<> ds(n);
  TemporalTree tree;
  tree.L_ = L;
  tree.adj_.assign(n, {});
  for (auto [u, v, t] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw Error(ErrorCode::NotATemporalTree, "bad tree edge");
    if (t < 1 || t > L) throw Error(ErrorCode::TimeStepOutOfRange, "tree edge time outside [1, L]");
    if (ds.find_set(u) == ds.find_set(v)) throw Error(ErrorCode::NotATemporalTree, "edges contain a cycle");
    ds.union_set(u, v);
    tree.adj_[u].push_back({v, t});
    tree.adj_[v].push_back({u, t});
  }
  for (auto& a : tree.adj_)
    std::sort(a.begin(), a.end(), [](const Neighbor& x, const Neighbor& y) {
      return x.time != y.time ? x.time < y.time : x.to < y.to;
    });
  return tree;
}

TemporalTree TemporalTree::from_graph(const TemporalGraph& g) {
  const auto& ug = g.underlying();
  std::vector<std::tuple<Vertex, Vertex, Time>> edges;
  for (std::size_t i = 0; i < ug.num_edges(); ++i) {
    if (ug.multiplicity(i) != 1) throw Error(ErrorCode::NotATemporalTree, "tree edges must appear exactly once");
    edges.emplace_back(ug.edge(i).u, ug.edge(i).v, ug.appearances(i).front());
  }
  return from_edges(g.num_vertices(), g.lifetime(), edges);
}

std::optional<Weight> solve_tree(const TemporalTree& tree, std::span<const Weight> weights, Vertex x, Vertex y) {
  const Vertex n = tree.num_vertices();
  if (x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorCode::VertexNotInTree, "vertex not in tree");
  if (static_cast<Vertex>(weights.size()) != n) throw Error(ErrorCode::InvalidInput, "weight vector size mismatch");

  // Path x = v_0, ..., v_r = y with times tau_1..tau_r.
  std::vector<Vertex> parent(n, -1);
  std::vector<Time> ptime(n, 0);
  std::vector<Vertex> stack{x};
  parent[x] = x;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const auto& nb : tree.neighbors(v))
      if (parent[nb.to] < 0) {
        parent[nb.to] = v;
        ptime[nb.to] = nb.time;
        stack.push_back(nb.to);
      }
  }
  std::vector<Vertex> path{y};
  std::vector<Time> tau;
  for (Vertex v = y; v != x; v = parent[v]) {
    tau.push_back(ptime[v]);
    path.push_back(parent[v]);
  }
  std::reverse(path.begin(), path.end());
  std::reverse(tau.begin(), tau.end());
  if (!std::is_sorted(tau.begin(), tau.end())) return std::nullopt;

  std::vector<Time> times;
  for (Vertex v = 0; v < n; ++v)
    for (const auto& nb : tree.neighbors(v)) times.push_back(nb.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<char> in_u(n, 0);
  for (Vertex v : path) in_u[v] = 1;
  std::vector<char> seen(n, 0);
  for (Time t : times) {
    // Anchor: before tau_1 the walk sits at v_0; at or after tau_i (and before tau_{i+1}) at v_i.
    // With ties the component of e_i also contains every later edge of equal time.
    auto idx = static_cast<std::size_t>(std::upper_bound(tau.begin(), tau.end(), t) - tau.begin());
    Vertex anchor = path[idx];
    std::vector<Vertex> frontier{anchor};
    std::vector<Vertex> touched{anchor};
    seen[anchor] = 1;
    while (!frontier.empty()) {
      Vertex v = frontier.back();
      frontier.pop_back();
      in_u[v] = 1;
      for (const auto& nb : tree.neighbors(v))
        if (nb.time == t && !seen[nb.to]) {
          seen[nb.to] = 1;
          touched.push_back(nb.to);
          frontier.push_back(nb.to);
        }
    }
    for (Vertex v : touched) seen[v] = 0;
  }
  Weight total = 0;
  for (Vertex v = 0; v < n; ++v)
    if (in_u[v]) total = checked_add(total, weights[v]);
  return total;
}

TreeWalkBest best_tree_walk_from(const TemporalTree& tree, std::span<const Weight> weights, Vertex x) {
  const Vertex n = tree.num_vertices();
  if (x < 0 || x >= n) throw Error(ErrorCode::VertexNotInTree, "vertex not in tree");
  if (static_cast<Vertex>(weights.size()) != n) throw Error(ErrorCode::InvalidInput, "weight vector size mismatch");
  Weight total = 0;
  for (Weight w : weights) total = checked_add(total, w);

  std::vector<Vertex> parent(n, -1), order;
  std::vector<Time> ptime(n, 0);
  order.reserve(n);
  parent[x] = x;
  order.push_back(x);
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    for (const auto& nb : tree.neighbors(v))
      if (parent[nb.to] < 0) {
        parent[nb.to] = v;
        ptime[nb.to] = nb.time;
        order.push_back(nb.to);
      }
  }
  // g[c]: weight of the part of c's subtree reachable from c using only edges of time ptime[c].
  std::vector<Weight> g(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex c = *it;
    g[c] += weights[c];
    if (c != x && ptime[parent[c]] == ptime[c] && parent[c] != x) g[parent[c]] += g[c];
  }
  // Children of every vertex in time order (neighbor lists are time-sorted) with prefix sums of g.
  std::vector<std::size_t> cstart(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) cstart[v + 1] = cstart[v] + tree.neighbors(v).size() - (v == x ? 0 : 1);
  std::vector<Time> ctime(cstart[n]);
  std::vector<Weight> cprefix(cstart[n] + n, 0);  // vertex v owns cprefix[cstart[v] + v .. + count]
  for (Vertex v = 0; v < n; ++v) {
    std::size_t j = 0;
    for (const auto& nb : tree.neighbors(v)) {
      if (v != x && nb.to == parent[v]) continue;
      ctime[cstart[v] + j] = nb.time;
      cprefix[cstart[v] + v + j + 1] = cprefix[cstart[v] + v + j] + g[nb.to];
      ++j;
    }
  }
  // Sum of g over children of v whose edge time lies in [a, b].
  auto range_sum = [&](Vertex v, Time a, Time b) -> Weight {
    if (a > b) return 0;
    auto first = ctime.begin() + static_cast<std::ptrdiff_t>(cstart[v]);
    auto last = ctime.begin() + static_cast<std::ptrdiff_t>(cstart[v + 1]);
    auto lo = static_cast<std::size_t>(std::lower_bound(first, last, a) - first);
    auto hi = static_cast<std::size_t>(std::upper_bound(first, last, b) - first);
    return cprefix[cstart[v] + v + hi] - cprefix[cstart[v] + v + lo];
  };

  const Time L = tree.lifetime();
  std::vector<Weight> S(n, 0);
  std::vector<Time> tin(n, 1);
  std::vector<char> reach(n, 0);
  reach[x] = 1;
  TreeWalkBest best{-1, x};
  for (Vertex v : order) {
    if (!reach[v]) continue;
    Weight f = S[v] + weights[v] + range_sum(v, tin[v], L);
    if (f > best.weight || (f == best.weight && v < best.end)) best = {f, v};
    for (const auto& nb : tree.neighbors(v)) {
      if (nb.to == parent[v] && v != x) continue;
      if (nb.time < tin[v]) continue;
      Vertex c = nb.to;
      reach[c] = 1;
      tin[c] = nb.time;
      S[c] = S[v] + weights[v] + range_sum(v, tin[v], nb.time) - g[c];
    }
  }
  return best;
}

bool solve_via_kernel(const Instance& inst, const SolverLimits& limits) {
  auto restricted = restrict_to_source_component(inst).instance;
  KernelResult kr = kernelize(restricted);
  const Instance& K = kr.instance;
  const Vertex n = K.num_vertices();
  if (n > limits.max_kernel_vertices || n > 30)
    throw Error(ErrorCode::InstanceTooLargeForOracle,
                "kernel has " + std::to_string(n) + " vertices; subset enumeration is capped at " +
                    std::to_string(std::min<Vertex>(limits.max_kernel_vertices, 30)));
  if (K.total_weight() < K.k) return false;
  const auto& ug = K.graph.underlying();
  std::vector<std::uint32_t> nbr(n, 0);
  for (const auto& e : ug.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  const std::uint32_t src = 1u << K.source;
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  for (std::uint32_t mask = full;; mask = (mask - 1) & full) {
    if (mask & src) {
      Weight w = 0;
      for (Vertex v = 0; v < n; ++v)
        if (mask >> v & 1u) w += K.weights[v];
      if (w >= K.k) {
        // 𝒢[U] can only be explored if U is connected in the underlying graph.
        std::uint32_t seen = src, frontier = src;
        while (frontier) {
          std::uint32_t grow = 0;
          for (std::uint32_t f = frontier; f; f &= f - 1) grow |= nbr[__builtin_ctz(f)];
          grow &= mask & ~seen;
          seen |= grow;
          frontier = grow;
        }
        if (seen == mask) {
          std::vector<Vertex> keep;
          for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1u) keep.push_back(v);
          Instance sub = induced_subinstance(K, keep).instance;
          if (solve_full_exploration(sub, limits).explorable) return true;
        }
      }
    }
    if (mask == 0) break;
  }
  return false;
}

}  // namespace tgx
