#include "tgx/temporal_graph.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <numeric>
#include <string>

namespace tgx {

UnderlyingGraph::UnderlyingGraph(Vertex n, std::vector<Edge> edges, std::vector<std::vector<Time>> appearances)
    : n_(n), edges_(std::move(edges)), appearances_(std::move(appearances)) {
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  arcs_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    arcs_[fill[edges_[i].u]++] = {edges_[i].v, i};
    arcs_[fill[edges_[i].v]++] = {edges_[i].u, i};
  }
  for (const auto& a : appearances_) total_ += static_cast<std::int64_t>(a.size());
}

std::optional<std::size_t> UnderlyingGraph::find_edge(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool UnderlyingGraph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  Vertex count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Arc& a : neighbors(v)) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++count;
        stack.push_back(a.to);
      }
    }
  }
  return count == n_;
}

TemporalGraph::TemporalGraph()
    : n_(1), snapshots_(1), underlying_(std::make_shared<UnderlyingGraph>(1, std::vector<Edge>{},
                                                                         std::vector<std::vector<Time>>{})) {}

TemporalGraph TemporalGraph::build(Vertex n, const std::vector<std::vector<std::pair<Vertex, Vertex>>>& snapshots) {
  std::vector<std::vector<Edge>> converted(snapshots.size());
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    converted[t].reserve(snapshots[t].size());
    for (auto [a, b] : snapshots[t]) {
      if (a < 0 || b < 0 || a >= n || b >= n)
        throw Error(ErrorCode::InvalidVertex, "edge endpoint out of range in snapshot " + std::to_string(t + 1));
      converted[t].push_back(Edge::make(a, b));
      if (a == b) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(a));
    }
  }
  return build(n, std::move(converted));
}

TemporalGraph TemporalGraph::build(Vertex n, std::vector<std::vector<Edge>> snapshots) {
  if (n < 1) throw Error(ErrorCode::InvalidVertex, "a temporal graph needs at least one vertex");
  if (snapshots.empty()) throw Error(ErrorCode::InvalidLifetime, "lifetime must be at least 1");
  std::vector<std::pair<Edge, Time>> all;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    auto& snap = snapshots[i];
    for (auto& e : snap) {
      e = Edge::make(e.u, e.v);
      if (e.u < 0 || e.v >= n) throw Error(ErrorCode::InvalidVertex, "edge endpoint out of range");
      if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
    }
    std::sort(snap.begin(), snap.end());
    auto dup = std::adjacent_find(snap.begin(), snap.end());
    if (dup != snap.end())
      throw Error(ErrorCode::DuplicateEdgeInSnapshot, "edge {" + std::to_string(dup->u) + "," +
                                                          std::to_string(dup->v) + "} repeated in snapshot " +
                                                          std::to_string(i + 1));
    for (const auto& e : snap) all.emplace_back(e, static_cast<Time>(i + 1));
  }
  std::sort(all.begin(), all.end());
  std::vector<Edge> edges;
  std::vector<std::vector<Time>> apps;
  for (const auto& [e, t] : all) {
    if (edges.empty() || edges.back() != e) {
      edges.push_back(e);
      apps.emplace_back();
    }
    apps.back().push_back(t);
  }
  TemporalGraph g;
  g.n_ = n;
  g.snapshots_ = std::move(snapshots);
  g.underlying_ = std::make_shared<UnderlyingGraph>(n, std::move(edges), std::move(apps));
  return g;
}

std::span<const Edge> TemporalGraph::snapshot(Time t) const {
  if (t < 1 || t > lifetime())
    throw Error(ErrorCode::TimeStepOutOfRange, "time step " + std::to_string(t) + " outside [1, L]");
  return snapshots_[t - 1];
}

bool TemporalGraph::has_edge(Edge e, Time t) const {
  auto snap = snapshot(t);
  return std::binary_search(snap.begin(), snap.end(), Edge::make(e.u, e.v));
}

Weight Instance::total_weight() const {
  Weight sum = 0;
  for (Weight w : weights) sum = checked_add(sum, w);
  return sum;
}

Instance make_instance(TemporalGraph graph, std::vector<Weight> weights, Vertex source, std::optional<Weight> k) {
  const Vertex n = graph.num_vertices();
  if (weights.empty()) weights.assign(n, 1);
  if (static_cast<Vertex>(weights.size()) != n)
    throw Error(ErrorCode::InvalidVertex, "weight vector length differs from vertex count");
  for (std::size_t v = 0; v < weights.size(); ++v)
    if (weights[v] < 1)
      throw Error(ErrorCode::NonPositiveWeight, "vertex " + std::to_string(v) + " has weight " +
                                                    std::to_string(weights[v]));
  if (source < 0 || source >= n) throw Error(ErrorCode::InvalidVertex, "source out of range");
  Instance inst{std::move(graph), std::move(weights), source, 1};
  inst.k = k ? *k : inst.total_weight();
  if (inst.k < 1) throw Error(ErrorCode::NonPositiveTarget, "target k must be positive");
  return inst;
}

Instance build_instance(Vertex n, const std::vector<std::vector<std::pair<Vertex, Vertex>>>& snapshots,
                        std::optional<std::vector<Weight>> weights, Vertex source, std::optional<Weight> k) {
  return make_instance(TemporalGraph::build(n, snapshots), weights ? std::move(*weights) : std::vector<Weight>{},
                       source, k);
}

std::vector<std::int32_t> component_labels(const TemporalGraph& g, Time t) {
  const Vertex n = g.num_vertices();
  boost::disjoint_sets_with_storage<> ds(n);
  for (const Edge& e : g.snapshot(t)) ds.union_set(e.u, e.v);
  std::vector<std::int32_t> root_label(n, -1), label(n);
  std::int32_t next = 0;
  for (Vertex v = 0; v < n; ++v) {
    auto r = ds.find_set(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::vector<std::vector<Vertex>> connected_components(const TemporalGraph& g, Time t) {
  auto label = component_labels(g, t);
  std::int32_t count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<Vertex>> comps(count);
  for (Vertex v = 0; v < g.num_vertices(); ++v) comps[label[v]].push_back(v);
  return comps;
}

Stats stats(const TemporalGraph& g) {
  Stats s;
  s.n = g.num_vertices();
  s.L = g.lifetime();
  s.appearances = g.total_appearances();
  s.underlying_edges = static_cast<std::int64_t>(g.underlying().num_edges());
  s.p = s.appearances - s.n + 1;
  s.q = s.underlying_edges * s.L - s.appearances;
  for (Time t = 1; t <= s.L; ++t) {
    auto label = component_labels(g, t);
    s.gamma = std::max<std::int64_t>(s.gamma, *std::max_element(label.begin(), label.end()) + 1);
  }
  return s;
}

Restriction induced_subinstance(const Instance& inst, const std::vector<Vertex>& keep) {
  const Vertex n = inst.num_vertices();
  std::vector<Vertex> old_to_new(n, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) old_to_new[keep[i]] = static_cast<Vertex>(i);
  if (old_to_new[inst.source] < 0) throw Error(ErrorCode::InvalidVertex, "induced subgraph must contain the source");
  std::vector<std::vector<Edge>> snaps(inst.lifetime());
  for (Time t = 1; t <= inst.lifetime(); ++t)
    for (const Edge& e : inst.graph.snapshot(t))
      if (old_to_new[e.u] >= 0 && old_to_new[e.v] >= 0) snaps[t - 1].push_back(Edge::make(old_to_new[e.u], old_to_new[e.v]));
  std::vector<Weight> w;
  w.reserve(keep.size());
  for (Vertex v : keep) w.push_back(inst.weights[v]);
  Instance out{TemporalGraph::build(static_cast<Vertex>(keep.size()), std::move(snaps)), std::move(w),
               old_to_new[inst.source], inst.k};
  return {std::move(out), keep};
}

Restriction restrict_to_source_component(const Instance& inst) {
  const auto& ug = inst.graph.underlying();
  std::vector<char> seen(inst.num_vertices(), 0);
  std::vector<Vertex> stack{inst.source};
  seen[inst.source] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Arc& a : ug.neighbors(v))
      if (!seen[a.to]) {
        seen[a.to] = 1;
        stack.push_back(a.to);
      }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < inst.num_vertices(); ++v)
    if (seen[v]) keep.push_back(v);
  if (static_cast<Vertex>(keep.size()) == inst.num_vertices()) return {inst, keep};
  return induced_subinstance(inst, keep);
}

Weight validate_certificate(const Instance& inst, const ComponentSequence& cert) {
  const auto& seq = cert.components;
  if (static_cast<Time>(seq.size()) > inst.lifetime())
    throw Error(ErrorCode::CertificateTooLong, "certificate longer than the lifetime");
  const Vertex n = inst.num_vertices();
  std::vector<char> visited(n, 0);
  visited[inst.source] = 1;
  std::vector<char> prev(n, 0), cur(n, 0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Time t = static_cast<Time>(i + 1);
    const auto& c = seq[i];
    if (c.empty()) throw Error(ErrorCode::NotAComponent, "empty entry at step " + std::to_string(t));
    for (Vertex v : c)
      if (v < 0 || v >= n) throw Error(ErrorCode::InvalidVertex, "vertex out of range in certificate");
    auto label = component_labels(inst.graph, t);
    std::vector<Vertex> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    const auto lab = label[sorted.front()];
    std::size_t expected = static_cast<std::size_t>(std::count(label.begin(), label.end(), lab));
    bool exact = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted.size() == expected &&
                 std::all_of(sorted.begin(), sorted.end(), [&](Vertex v) { return label[v] == lab; });
    if (!exact) throw Error(ErrorCode::NotAComponent, "entry " + std::to_string(t) + " is not a component of G_t");
    std::fill(cur.begin(), cur.end(), 0);
    for (Vertex v : sorted) cur[v] = 1;
    if (i == 0) {
      if (!cur[inst.source]) throw Error(ErrorCode::SourceNotInFirst, "first component does not contain the source");
    } else {
      bool meets = std::any_of(sorted.begin(), sorted.end(), [&](Vertex v) { return prev[v] != 0; });
      if (!meets)
        throw Error(ErrorCode::NonIntersectingConsecutive,
                    "components at steps " + std::to_string(t - 1) + " and " + std::to_string(t) + " are disjoint");
    }
    for (Vertex v : sorted) visited[v] = 1;
    std::swap(prev, cur);
  }
  Weight total = 0;
  for (Vertex v = 0; v < n; ++v)
    if (visited[v]) total = checked_add(total, inst.weights[v]);
  return total;
}

Weight validate_certificate(const Instance& inst, const MonotoneWalk& walk) {
  const Vertex n = inst.num_vertices();
  if (walk.vertices.empty() || walk.vertices.front() != inst.source)
    throw Error(ErrorCode::SourceNotInFirst, "walk must start at the source");
  if (walk.times.size() + 1 != walk.vertices.size())
    throw Error(ErrorCode::InvalidInput, "walk needs one time per edge");
  for (Vertex v : walk.vertices)
    if (v < 0 || v >= n) throw Error(ErrorCode::InvalidVertex, "vertex out of range in walk");
  std::vector<char> visited(n, 0);
  visited[inst.source] = 1;
  for (std::size_t i = 0; i < walk.times.size(); ++i) {
    Time t = walk.times[i];
    if (t < 1 || t > inst.lifetime()) throw Error(ErrorCode::TimeStepOutOfRange, "walk time outside [1, L]");
    if (i > 0 && t < walk.times[i - 1]) throw Error(ErrorCode::NonMonotoneTimes, "walk times decrease");
    Vertex a = walk.vertices[i], b = walk.vertices[i + 1];
    if (a == b || !inst.graph.has_edge(Edge::make(a, b), t))
      throw Error(ErrorCode::EdgeAbsentAtTime, "edge {" + std::to_string(a) + "," + std::to_string(b) +
                                                   "} absent at step " + std::to_string(t));
    visited[b] = 1;
  }
  Weight total = 0;
  for (Vertex v = 0; v < n; ++v)
    if (visited[v]) total = checked_add(total, inst.weights[v]);
  return total;
}

}  // namespace tgx
