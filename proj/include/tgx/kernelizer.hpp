#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "tgx/decomposition.hpp"
#include "tgx/temporal_graph.hpp"

namespace tgx {

enum class RuleId {
  Trees = 1,
  DeleteEdge = 2,
  MergeEqualTimes = 3,
  ContractBackbone = 4,
  DropEmptySnapshots = 5,
  ReduceWeights = 6,
  ContractPermanent,  // q-kernel: contract an edge present in every snapshot
  ConnectedSnapshot,  // q-kernel: some snapshot is connected, answer is decided
};

const char* to_string(RuleId rule);

struct GraphStats {
  std::int64_t n = 0, m = 0, L = 0, p = 0;
};

using TimedEdge = std::tuple<Vertex, Vertex, Time>;

struct RuleApplication {
  RuleId rule = RuleId::Trees;
  std::string locus;  // human-readable description of where the rule fired
  std::vector<Vertex> deleted;
  std::vector<std::pair<Vertex, Weight>> created;
  std::vector<TimedEdge> edges_added;
  std::vector<TimedEdge> edges_removed;
  GraphStats before, after;

  std::string to_json_line() const;
};

struct KernelTrace {
  std::vector<RuleApplication> applications;
  std::string to_json_lines() const;
  std::size_t count(RuleId rule) const;
};

// Inclusive time range selecting the cut vertex's pendant neighbors.
struct RuleWindow {
  Time lo = 1, hi = 1;
  bool contains(Time t) const { return lo <= t && t <= hi; }
  bool operator==(const RuleWindow&) const = default;
};

// Windows of a separation: each time in A(Q), the gaps between consecutive times, and the two ends.
// With A(Q) empty the whole lifetime is one window.
std::vector<RuleWindow> separation_windows(const ImportantSeparation& sep, Time L);

struct RuleOutcome {
  Instance instance;
  std::vector<Vertex> old_to_new;  // -1 for deleted vertices
  std::vector<Vertex> created;     // ids in the new instance
  RuleApplication record;
};

// Single rule applications on an instance; throw NotApplicable when the preconditions fail.
RuleOutcome rule_trees(const Instance& inst, const ImportantSeparation& sep, const RuleWindow& window);
RuleOutcome rule_delete_edge(const Instance& inst, const ImportantEdgeCut& cut);
RuleOutcome rule_merge_equal_times(const Instance& inst, const ImportantEdgeCut& cut);
RuleOutcome rule_contract_backbone(const Instance& inst, const ImportantEdgeCut& cut);
RuleOutcome rule_drop_empty_snapshots(const Instance& inst);

struct WeightReduction {
  Instance instance;
  Weight divisor = 1;
  bool within_bound = true;  // max weight bit length within 4r^3 + r(r+2) log2(r+1), r = n + 1
};

WeightReduction reduce_weights(const Instance& inst);

enum class Fault { None, DropLastSnapshot };

struct KernelOptions {
  bool weight_reduction = true;
  std::uint64_t iteration_cap = 0;  // 0: 16 (n + m + L)^2
  bool check_bounds = true;
  Fault fault = Fault::None;  // test fixture for the verification harness
};

struct KernelResult {
  Instance instance;
  KernelTrace trace;
  std::vector<Vertex> kernel_to_input;  // -1 for vertices created by a rule
  GraphStats input, output;
  bool weights_within_bound = true;
};

// Exhaustive application of rules 1-4, then 5 and weight reduction. Requires a connected underlying graph.
KernelResult kernelize(const Instance& inst, const KernelOptions& options = {});

// Kernel in q = |E(G)| L - 𝔪: contracts permanent edges and decides instances with a connected snapshot.
KernelResult kernelize_q(const Instance& inst, const KernelOptions& options = {});

// True if the instance is the decided output of kernelize_q.
bool is_trivial_instance(const Instance& inst);

}  // namespace tgx
