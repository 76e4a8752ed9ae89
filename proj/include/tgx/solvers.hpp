#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "tgx/temporal_graph.hpp"

namespace tgx {

struct SolverLimits {
  Vertex max_oracle_vertices = 24;
  // Maximum number of search-tree nodes (component choices) before giving up.
  std::uint64_t search_budget = 50'000'000;
  // Maximum kernel size for the subset enumeration in solve_via_kernel.
  Vertex max_kernel_vertices = 22;
};

// Reads TGX_BUDGET, if set, into the search budget.
SolverLimits limits_from_env(SolverLimits base = {});

struct OptimalExploration {
  Weight max_weight = 0;
  ComponentSequence certificate;  // lexicographically least optimal component sequence
};

// Exact DP over (step, component, visited set). Requires n <= limits.max_oracle_vertices.
OptimalExploration solve_oracle(const Instance& inst, const SolverLimits& limits = {});
// Depth-first search over component choices; at most γ^L nodes.
OptimalExploration solve_search_tree(const Instance& inst, const SolverLimits& limits = {});

struct FullExploration {
  bool explorable = false;
  Vertex visited = 0;
  std::optional<ComponentSequence> certificate;
};

// Ignores weights and k: can every vertex be visited?
FullExploration solve_full_exploration(const Instance& inst, const SolverLimits& limits = {});

// Temporal graph whose underlying graph is a tree and whose edges each appear once.
class TemporalTree {
 public:
  struct Neighbor {
    Vertex to;
    Time time;
  };

  static TemporalTree from_graph(const TemporalGraph& g);
  // (u, v, t) triples; throws NotATemporalTree unless they form a spanning tree on n vertices.
  static TemporalTree from_edges(Vertex n, Time L, const std::vector<std::tuple<Vertex, Vertex, Time>>& edges);

  Vertex num_vertices() const { return static_cast<Vertex>(adj_.size()); }
  Time lifetime() const { return L_; }
  const std::vector<Neighbor>& neighbors(Vertex v) const { return adj_[v]; }

 private:
  Time L_ = 1;
  std::vector<std::vector<Neighbor>> adj_;
};

// Maximum weight of an (x,y)-walk, or nullopt when none exists.
std::optional<Weight> solve_tree(const TemporalTree& tree, std::span<const Weight> weights, Vertex x, Vertex y);

struct TreeWalkBest {
  Weight weight = 0;
  Vertex end = 0;  // smallest end vertex attaining the weight
};

// max over y of solve_tree(tree, weights, x, y), in one pass.
TreeWalkBest best_tree_walk_from(const TemporalTree& tree, std::span<const Weight> weights, Vertex x);

// Kernelizes, then looks for U with w(U) >= k such that 𝒢[U] is fully explorable from the source.
bool solve_via_kernel(const Instance& inst, const SolverLimits& limits = {});

}  // namespace tgx
