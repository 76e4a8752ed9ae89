#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tgx/error.hpp"

namespace tgx {

using Vertex = std::int32_t;
using Time = std::int32_t;  // 1-based snapshot index
using Weight = std::int64_t;

// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  Vertex other(Vertex x) const { return x == u ? v : u; }
  auto operator<=>(const Edge&) const = default;
};

struct Arc {
  Vertex to;
  std::uint32_t edge;  // index into UnderlyingGraph::edges()
};

// Static graph G(𝒢) with the appearance list A(e) of every edge.
class UnderlyingGraph {
 public:
  UnderlyingGraph() = default;
  // `appearances[i]` must be sorted, non-empty and belong to `edges[i]`; edges sorted and unique.
  UnderlyingGraph(Vertex n, std::vector<Edge> edges, std::vector<std::vector<Time>> appearances);

  Vertex num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const std::vector<Time>& appearances(std::size_t i) const { return appearances_[i]; }
  std::size_t multiplicity(std::size_t i) const { return appearances_[i].size(); }
  bool is_red(std::size_t i) const { return appearances_[i].size() >= 2; }
  std::optional<std::size_t> find_edge(Edge e) const;
  std::span<const Arc> neighbors(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::int64_t total_appearances() const { return total_; }
  bool is_connected() const;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Time>> appearances_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::int64_t total_ = 0;
};

// Immutable sequence of snapshots G_1..G_L on vertex set {0..n-1}.
class TemporalGraph {
 public:
  TemporalGraph();
  // Validates vertex range, self-loops and duplicate edges per snapshot.
  static TemporalGraph build(Vertex n, const std::vector<std::vector<std::pair<Vertex, Vertex>>>& snapshots);
  static TemporalGraph build(Vertex n, std::vector<std::vector<Edge>> snapshots);

  Vertex num_vertices() const { return n_; }
  Time lifetime() const { return static_cast<Time>(snapshots_.size()); }
  std::span<const Edge> snapshot(Time t) const;
  bool has_edge(Edge e, Time t) const;
  std::int64_t total_appearances() const { return underlying_->total_appearances(); }
  const UnderlyingGraph& underlying() const { return *underlying_; }

  bool operator==(const TemporalGraph& other) const {
    return n_ == other.n_ && snapshots_ == other.snapshots_;
  }

 private:
  Vertex n_ = 1;
  std::vector<std::vector<Edge>> snapshots_;
  std::shared_ptr<const UnderlyingGraph> underlying_;
};

struct Instance {
  TemporalGraph graph;
  std::vector<Weight> weights;
  Vertex source = 0;
  Weight k = 1;

  Vertex num_vertices() const { return graph.num_vertices(); }
  Time lifetime() const { return graph.lifetime(); }
  Weight total_weight() const;
  bool operator==(const Instance&) const = default;
};

// Missing weights default to 1, missing k to the total weight (full exploration).
Instance build_instance(Vertex n, const std::vector<std::vector<std::pair<Vertex, Vertex>>>& snapshots,
                        std::optional<std::vector<Weight>> weights, Vertex source,
                        std::optional<Weight> k = std::nullopt);
Instance make_instance(TemporalGraph graph, std::vector<Weight> weights, Vertex source,
                       std::optional<Weight> k = std::nullopt);

struct Stats {
  Vertex n = 0;
  Time L = 0;
  std::int64_t appearances = 0;  // 𝔪
  std::int64_t underlying_edges = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t gamma = 0;
};

Stats stats(const TemporalGraph& g);

// Components of G_t, each sorted, ordered by minimum vertex.
std::vector<std::vector<Vertex>> connected_components(const TemporalGraph& g, Time t);
// Per-vertex component index at time t, numbered as in connected_components.
std::vector<std::int32_t> component_labels(const TemporalGraph& g, Time t);

struct Restriction {
  Instance instance;
  std::vector<Vertex> new_to_old;
};

// Keeps the component of the underlying graph that contains the source.
Restriction restrict_to_source_component(const Instance& inst);

// Induced temporal subgraph on `keep` (sorted, must contain the source).
Restriction induced_subinstance(const Instance& inst, const std::vector<Vertex>& keep);

struct ComponentSequence {
  std::vector<std::vector<Vertex>> components;  // entry i is a component of G_{i+1}
  bool operator==(const ComponentSequence&) const = default;
};

struct MonotoneWalk {
  std::vector<Vertex> vertices;  // v_0 .. v_r
  std::vector<Time> times;       // t_1 .. t_r
};

// Both return w(visited) or throw the matching certificate error.
Weight validate_certificate(const Instance& inst, const ComponentSequence& cert);
Weight validate_certificate(const Instance& inst, const MonotoneWalk& walk);

}  // namespace tgx
