#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tgx/temporal_graph.hpp"

namespace tgx {

// Literals are ±(1..num_vars).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool is_monotone() const;
};

CnfFormula parse_dimacs(std::string_view text);

// Every component of a snapshot is realized as a clique, or as a star on its smallest vertex when sparse.
Instance gen_from_sat(const CnfFormula& phi, bool sparse = false);
Instance gen_two_stars(const CnfFormula& phi);

struct HittingSetInput {
  int universe = 0;                    // elements 1..universe
  std::vector<std::vector<int>> sets;  // nonempty subsets of the universe
  int budget = 0;                      // k
};

// First line "<universe> <budget>", then one set per line.
HittingSetInput parse_hitting_set(std::string_view text);
Instance gen_from_hitting_set(const HittingSetInput& in, bool sparse = false);

struct PartiteGraph {
  std::vector<std::vector<Vertex>> parts;  // partition of 0..N-1
  std::vector<Edge> edges;                 // only between different parts

  Vertex num_vertices() const;
  // Common degree; throws InvalidInput unless the graph is regular and properly partitioned.
  int validate() const;
};

// First line "<parts>", then one line per part listing its vertices, then "e <u> <v>" lines.
PartiteGraph parse_partite_graph(std::string_view text);
Instance gen_from_mis(const PartiteGraph& g, bool sparse = false);

// OR-composition of 2^x instances into one whose answer is yes iff some input is a yes-instance.
Instance compose_or(std::span<const Instance> instances);

struct RandomParams {
  Vertex n = 8;
  Time L = 4;
  double edges_per_snapshot = 2.0;  // Poisson mean
  Weight max_weight = 1;
  std::uint64_t seed = 1;
  bool random_target = false;  // k uniform in [1, total weight] instead of the total weight
};

// Random snapshots joined into a connected underlying graph by extra single-appearance edges.
Instance gen_random(const RandomParams& params);

// Random recursive tree whose edges each appear once, at a uniform time in [1, L].
Instance gen_random_tree(Vertex n, Time L, Weight max_weight, std::uint64_t seed);

}  // namespace tgx
