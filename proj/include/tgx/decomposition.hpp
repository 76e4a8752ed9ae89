#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tgx/temporal_graph.hpp"

namespace tgx {

// Edge indices refer to UnderlyingGraph::edges().
struct RedBlue {
  std::vector<std::size_t> red;   // m(e) >= 2
  std::vector<std::size_t> blue;  // m(e) == 1
};

RedBlue red_blue_partition(const UnderlyingGraph& g);

// S = R plus the non-tree edges of a spanning tree grown over blue edges first. Sorted.
std::vector<std::size_t> feedback_edge_set(const UnderlyingGraph& g, std::span<const std::size_t> red);

// X = Y ∪ Z, sorted.
std::vector<Vertex> core_set(const UnderlyingGraph& g, std::span<const std::size_t> feedback, Vertex source);

enum class PendantType { A, B };

struct Pendant {
  std::vector<Vertex> vertices;     // sorted
  std::vector<Vertex> attachments;  // core vertices adjacent to the component, sorted
  PendantType type = PendantType::A;
};

struct PendantClassification {
  std::vector<Pendant> pendants;
  std::size_t type_b = 0;
};

// Components of G - X; throws StructureViolation if one is not a tree hanging off one or two core vertices.
PendantClassification classify_pendants(const UnderlyingGraph& g, std::span<const Vertex> core);

struct Decomposition {
  RedBlue colors;
  std::vector<std::size_t> feedback;
  std::vector<Vertex> core;
  PendantClassification pendants;
  std::int64_t p = 0;
  std::size_t core_edges = 0;  // |E(G[X])|
};

// Runs the whole chain and checks the size bounds; throws BoundViolation on failure.
Decomposition decompose(const Instance& inst);

// Spanning tree rooted at the source, marking every child c whose subtree is a blue tree
// attached to the rest of the graph only through the edge to its parent.
struct PendantIndex {
  Vertex source = 0;
  std::vector<Vertex> parent;             // -1 for the source and unreachable vertices
  std::vector<std::int64_t> parent_edge;  // -1 if none
  std::vector<Vertex> order;              // preorder, source first
  std::vector<char> pendant;              // pendant[c]: subtree of c is a pendant blue tree
  std::vector<Vertex> subtree_size;
  std::vector<std::int32_t> non_pendant_degree;  // incident edges not leading into a pendant child

  bool is_pendant_child_edge(Vertex u, const Arc& a) const {
    return parent[a.to] == u && parent_edge[a.to] == static_cast<std::int64_t>(a.edge) && pendant[a.to];
  }
};

PendantIndex build_pendant_index(const UnderlyingGraph& g, Vertex source);

struct ImportantSeparation {
  Vertex cut_vertex = 0;
  std::vector<Vertex> pendant_side;  // P, includes the cut vertex
  std::vector<Vertex> other_side;    // Q, includes the cut vertex
  std::vector<Time> other_times;     // A(Q): appearances of the cut vertex's edges into Q
};

// One separation per cut vertex x: P = {x} plus every source-free blue tree hanging off x.
std::vector<ImportantSeparation> important_separations(const Instance& inst);

struct ImportantEdgeCut {
  std::vector<Vertex> backbone;     // y1, x1, ..., x2, y2
  std::vector<Time> backbone_times; // time of each backbone edge
  std::vector<Vertex> tree_side;    // P
  std::vector<Vertex> other_side;   // Q

  std::array<Edge, 2> cut_set() const {
    return {Edge::make(backbone[0], backbone[1]), Edge::make(backbone[backbone.size() - 2], backbone.back())};
  }
  ImportantEdgeCut reversed() const;
};

// Every important edge cut, each listed once with its lexicographically smaller backbone orientation.
std::vector<ImportantEdgeCut> important_edge_cuts(const Instance& inst);

// Vertex sequences of backbones with exactly `edges` edges (or any length >= 3 when edges == 0),
// in both orientations, sorted lexicographically.
std::vector<std::vector<Vertex>> oriented_backbones(const UnderlyingGraph& g, const PendantIndex& idx, int edges);

// P for a backbone: its internal vertices plus the pendant trees hanging off them.
std::vector<Vertex> backbone_tree_side(const UnderlyingGraph& g, const PendantIndex& idx,
                                       std::span<const Vertex> backbone);

}  // namespace tgx
