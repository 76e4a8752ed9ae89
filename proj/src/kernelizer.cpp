#include "tgx/kernelizer.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <cmath>
#include <json.hpp>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "tgx/solvers.hpp"

namespace tgx {

const char* to_string(RuleId rule) {
  switch (rule) {
    case RuleId::Trees: return "trees";
    case RuleId::DeleteEdge: return "delete-edge";
    case RuleId::MergeEqualTimes: return "merge-equal-times";
    case RuleId::ContractBackbone: return "contract-backbone";
    case RuleId::DropEmptySnapshots: return "drop-empty-snapshots";
    case RuleId::ReduceWeights: return "reduce-weights";
    case RuleId::ContractPermanent: return "contract-permanent";
    case RuleId::ConnectedSnapshot: return "connected-snapshot";
  }
  return "unknown";
}

std::string RuleApplication::to_json_line() const {
  auto edges = [](const std::vector<TimedEdge>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [u, v, t] : list) arr.push_back({u, v, t});
    return arr;
  };
  auto stats = [](const GraphStats& s) { return nlohmann::json{{"n", s.n}, {"m", s.m}, {"L", s.L}, {"p", s.p}}; };
  nlohmann::json created_json = nlohmann::json::array();
  for (auto [v, w] : created) created_json.push_back({{"id", v}, {"weight", w}});
  nlohmann::json j = {{"rule", to_string(rule)},   {"locus", locus},          {"deleted", deleted},
                      {"created", created_json},   {"edges_added", edges(edges_added)},
                      {"edges_removed", edges(edges_removed)}, {"before", stats(before)}, {"after", stats(after)}};
  return j.dump();
}

std::string KernelTrace::to_json_lines() const {
  std::string out;
  for (const auto& a : applications) {
    out += a.to_json_line();
    out += '\n';
  }
  return out;
}

std::size_t KernelTrace::count(RuleId rule) const {
  return static_cast<std::size_t>(
      std::count_if(applications.begin(), applications.end(), [&](const auto& a) { return a.rule == rule; }));
}

std::vector<RuleWindow> separation_windows(const ImportantSeparation& sep, Time L) {
  const auto& a = sep.other_times;
  if (a.empty()) return {{1, L}};
  std::vector<RuleWindow> out;
  if (a.front() > 1) out.push_back({1, a.front() - 1});
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back({a[i], a[i]});
    Time hi = i + 1 < a.size() ? a[i + 1] - 1 : L;
    if (a[i] + 1 <= hi) out.push_back({a[i] + 1, hi});
  }
  return out;
}

namespace {

// Mutable copy of an instance with stable vertex ids; new vertices get fresh ids.
class WorkGraph {
 public:
  explicit WorkGraph(const Instance& inst)
      : L(inst.lifetime()), source(inst.source), k(inst.k), input_n(inst.num_vertices()) {
    const Vertex n = inst.num_vertices();
    adj.resize(n);
    alive.assign(n, 1);
    weight = inst.weights;
    n_alive = n;
    const auto& ug = inst.graph.underlying();
    for (std::size_t i = 0; i < ug.num_edges(); ++i) {
      const Edge& e = ug.edge(i);
      adj[e.u].emplace(e.v, ug.appearances(i));
      adj[e.v].emplace(e.u, ug.appearances(i));
      m += static_cast<std::int64_t>(ug.multiplicity(i));
    }
  }

  Vertex add_vertex(Weight w) {
    if (w < 1) throw Error(ErrorCode::InternalError, "rule produced a non-positive weight " + std::to_string(w));
    adj.emplace_back();
    alive.push_back(1);
    weight.push_back(w);
    ++n_alive;
    return static_cast<Vertex>(adj.size() - 1);
  }

  void remove_vertex(Vertex v) {
    for (auto& [u, ts] : adj[v]) {
      m -= static_cast<std::int64_t>(ts.size());
      adj[u].erase(v);
    }
    adj[v].clear();
    alive[v] = 0;
    --n_alive;
  }

  void add_appearance(Vertex a, Vertex b, Time t) {
    auto& ts = adj[a][b];
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it != ts.end() && *it == t) throw Error(ErrorCode::InternalError, "edge already present at this step");
    ts.insert(it, t);
    adj[b][a] = ts;
    ++m;
  }

  void remove_appearance(Vertex a, Vertex b, Time t) {
    auto it = adj[a].find(b);
    if (it == adj[a].end()) throw Error(ErrorCode::InternalError, "removing a missing edge");
    auto& ts = it->second;
    auto pos = std::lower_bound(ts.begin(), ts.end(), t);
    if (pos == ts.end() || *pos != t) throw Error(ErrorCode::InternalError, "removing a missing appearance");
    ts.erase(pos);
    if (ts.empty()) {
      adj[a].erase(b);
      adj[b].erase(a);
    } else {
      adj[b][a] = ts;
    }
    --m;
  }

  const std::vector<Time>& times(Vertex a, Vertex b) const { return adj[a].at(b); }

  GraphStats stats() const { return {n_alive, m, L, m - n_alive + 1}; }

  // Deletes every vertex not reachable from the source; returns the deleted ids.
  std::vector<Vertex> drop_unreachable() {
    std::vector<char> seen(adj.size(), 0);
    std::vector<Vertex> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (const auto& [u, ts] : adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    std::vector<Vertex> gone;
    for (Vertex v = 0; v < static_cast<Vertex>(adj.size()); ++v)
      if (alive[v] && !seen[v]) gone.push_back(v);
    for (Vertex v : gone) remove_vertex(v);
    return gone;
  }

  Time L;
  Vertex source;
  Weight k;
  Vertex input_n;
  std::vector<std::map<Vertex, std::vector<Time>>> adj;
  std::vector<char> alive;
  std::vector<Weight> weight;
  std::int64_t n_alive = 0;
  std::int64_t m = 0;
};

// Dense snapshot of the live part of a WorkGraph for the decomposition routines.
struct View {
  UnderlyingGraph graph;
  std::vector<Vertex> to_work;
  std::vector<Vertex> to_local;
  Vertex source = 0;
};

View make_view(const WorkGraph& wg) {
  View v;
  v.to_local.assign(wg.adj.size(), -1);
  for (Vertex u = 0; u < static_cast<Vertex>(wg.adj.size()); ++u)
    if (wg.alive[u]) {
      v.to_local[u] = static_cast<Vertex>(v.to_work.size());
      v.to_work.push_back(u);
    }
  std::vector<Edge> edges;
  std::vector<std::vector<Time>> apps;
  for (Vertex u : v.to_work)
    for (const auto& [w, ts] : wg.adj[u])
      if (w > u) {
        edges.push_back({v.to_local[u], v.to_local[w]});
        apps.push_back(ts);
      }
  v.graph = UnderlyingGraph(static_cast<Vertex>(v.to_work.size()), std::move(edges), std::move(apps));
  v.source = v.to_local[wg.source];
  return v;
}

struct Compacted {
  Instance instance;
  std::vector<Vertex> old_to_new;
  std::vector<Vertex> new_to_old;
};

Compacted compact(const WorkGraph& wg) {
  Compacted c;
  c.old_to_new.assign(wg.adj.size(), -1);
  for (Vertex u = 0; u < static_cast<Vertex>(wg.adj.size()); ++u)
    if (wg.alive[u]) {
      c.old_to_new[u] = static_cast<Vertex>(c.new_to_old.size());
      c.new_to_old.push_back(u);
    }
  std::vector<std::vector<Edge>> snaps(wg.L);
  for (Vertex u : c.new_to_old)
    for (const auto& [w, ts] : wg.adj[u])
      if (w > u)
        for (Time t : ts) snaps[t - 1].push_back(Edge::make(c.old_to_new[u], c.old_to_new[w]));
  std::vector<Weight> weights;
  for (Vertex u : c.new_to_old) weights.push_back(wg.weight[u]);
  c.instance = Instance{TemporalGraph::build(static_cast<Vertex>(c.new_to_old.size()), std::move(snaps)),
                        std::move(weights), c.old_to_new[wg.source], wg.k};
  return c;
}

std::string backbone_locus(const std::vector<Vertex>& bb) {
  std::ostringstream os;
  os << "backbone";
  for (Vertex v : bb) os << ' ' << v;
  return os.str();
}

// Builds a temporal tree over `verts` (local id = position) from the work graph's edges among them.
TemporalTree local_tree(const WorkGraph& wg, const std::vector<Vertex>& verts,
                        const std::unordered_map<Vertex, Vertex>& local, std::vector<TimedEdge>* removed) {
  std::vector<TimedEdge> edges;
  for (Vertex u : verts)
    for (const auto& [w, ts] : wg.adj[u]) {
      auto it = local.find(w);
      if (it == local.end() || it->second < local.at(u)) continue;
      if (ts.size() != 1) throw Error(ErrorCode::InternalError, "tree part contains a red edge");
      edges.emplace_back(local.at(u), it->second, ts.front());
      if (removed) removed->emplace_back(std::min(u, w), std::max(u, w), ts.front());
    }
  return TemporalTree::from_edges(static_cast<Vertex>(verts.size()), wg.L, edges);
}

RuleApplication apply_trees(WorkGraph& wg, Vertex x, const std::vector<Vertex>& children) {
  RuleApplication rec;
  rec.rule = RuleId::Trees;
  rec.before = wg.stats();
  std::vector<Vertex> verts{x};
  std::unordered_map<Vertex, Vertex> local{{x, 0}};
  Time t_min = wg.L;
  for (Vertex c : children) {
    t_min = std::min(t_min, wg.times(x, c).front());
    std::vector<Vertex> stack{c};
    local.emplace(c, static_cast<Vertex>(verts.size()));
    verts.push_back(c);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (const auto& [w, ts] : wg.adj[u])
        if (w != x && local.emplace(w, static_cast<Vertex>(verts.size())).second) {
          verts.push_back(w);
          stack.push_back(w);
        }
    }
  }
  if (verts.size() < 4) throw Error(ErrorCode::NotApplicable, "window tree has fewer than 4 vertices");
  TemporalTree tree = local_tree(wg, verts, local, &rec.edges_removed);
  std::vector<Weight> w;
  for (Vertex u : verts) w.push_back(wg.weight[u]);
  const Weight w1 = *solve_tree(tree, w, 0, 0);
  const Weight w2 = best_tree_walk_from(tree, w, 0).weight;

  std::ostringstream locus;
  locus << "cut vertex " << x << ", tree of " << verts.size() << " vertices";
  rec.locus = locus.str();
  for (std::size_t i = 1; i < verts.size(); ++i) {
    rec.deleted.push_back(verts[i]);
    wg.remove_vertex(verts[i]);
  }
  Vertex y = wg.add_vertex(checked_sub(w1, wg.weight[x]));
  wg.add_appearance(x, y, t_min);
  rec.created.emplace_back(y, wg.weight[y]);
  rec.edges_added.emplace_back(x, y, t_min);
  if (w2 > w1) {
    Vertex z = wg.add_vertex(checked_sub(w2, w1));
    wg.add_appearance(y, z, wg.L);
    rec.created.emplace_back(z, wg.weight[z]);
    rec.edges_added.emplace_back(y, z, wg.L);
  }
  rec.after = wg.stats();
  return rec;
}

std::vector<Time> backbone_times(const WorkGraph& wg, const std::vector<Vertex>& bb) {
  std::vector<Time> t;
  for (std::size_t i = 0; i + 1 < bb.size(); ++i) {
    const auto& ts = wg.times(bb[i], bb[i + 1]);
    if (ts.size() != 1) throw Error(ErrorCode::NotApplicable, "backbone edge is not blue");
    t.push_back(ts.front());
  }
  return t;
}

bool rule2_applies(const std::vector<Time>& t) { return t.size() == 3 && t[0] > t[1] && t[1] < t[2]; }
bool rule3_applies(const std::vector<Time>& t) { return t.size() == 3 && t[0] == t[1]; }
bool rule4_applies(const std::vector<Time>& t) {
  return t.size() == 5 && t[0] < t[1] && t[1] < t[2] && t[2] < t[3] && t[3] < t[4];
}

RuleApplication apply_delete_edge(WorkGraph& wg, const std::vector<Vertex>& bb) {
  auto t = backbone_times(wg, bb);
  if (!rule2_applies(t)) throw Error(ErrorCode::NotApplicable, "backbone times are not of the form a > b < c");
  RuleApplication rec;
  rec.rule = RuleId::DeleteEdge;
  rec.locus = backbone_locus(bb);
  rec.before = wg.stats();
  wg.remove_appearance(bb[1], bb[2], t[1]);
  rec.edges_removed.emplace_back(std::min(bb[1], bb[2]), std::max(bb[1], bb[2]), t[1]);
  rec.deleted = wg.drop_unreachable();
  rec.after = wg.stats();
  return rec;
}

RuleApplication apply_merge_equal(WorkGraph& wg, const std::vector<Vertex>& bb) {
  auto t = backbone_times(wg, bb);
  if (!rule3_applies(t)) throw Error(ErrorCode::NotApplicable, "first two backbone edges differ in time");
  RuleApplication rec;
  rec.rule = RuleId::MergeEqualTimes;
  rec.locus = backbone_locus(bb);
  rec.before = wg.stats();
  wg.remove_appearance(bb[0], bb[1], t[0]);
  wg.add_appearance(bb[0], bb[2], t[0]);
  rec.edges_removed.emplace_back(std::min(bb[0], bb[1]), std::max(bb[0], bb[1]), t[0]);
  rec.edges_added.emplace_back(std::min(bb[0], bb[2]), std::max(bb[0], bb[2]), t[0]);
  rec.after = wg.stats();
  return rec;
}

RuleApplication apply_contract(WorkGraph& wg, const std::vector<Vertex>& bb, const std::vector<Vertex>& tree_side) {
  auto t = backbone_times(wg, bb);
  if (!rule4_applies(t)) throw Error(ErrorCode::NotApplicable, "backbone times are not strictly increasing");
  RuleApplication rec;
  rec.rule = RuleId::ContractBackbone;
  rec.locus = backbone_locus(bb);
  rec.before = wg.stats();
  const Vertex v0 = bb.front(), v5 = bb.back();

  std::vector<Vertex> verts{v0, v5};
  for (Vertex u : tree_side) verts.push_back(u);
  std::unordered_map<Vertex, Vertex> local;
  for (std::size_t i = 0; i < verts.size(); ++i) local.emplace(verts[i], static_cast<Vertex>(i));
  // The y1 y2 edge, if any, is not part of the tree.
  std::vector<TimedEdge> tree_edges;
  for (Vertex u : tree_side)
    for (const auto& [w, ts] : wg.adj[u]) {
      auto it = local.find(w);
      if (it == local.end()) throw Error(ErrorCode::InternalError, "tree side has an edge leaving the cut");
      if (it->second >= 2 && it->second < local.at(u)) continue;
      if (ts.size() != 1) throw Error(ErrorCode::InternalError, "tree side contains a red edge");
      tree_edges.emplace_back(local.at(u), it->second, ts.front());
      rec.edges_removed.emplace_back(std::min(u, w), std::max(u, w), ts.front());
    }
  TemporalTree tree = TemporalTree::from_edges(static_cast<Vertex>(verts.size()), wg.L, tree_edges);
  std::vector<Weight> w;
  for (Vertex u : verts) w.push_back(wg.weight[u]);
  const Weight w1 = *solve_tree(tree, w, 0, 0);
  const auto w2o = solve_tree(tree, w, 0, 1);
  if (!w2o) throw Error(ErrorCode::InternalError, "no walk along an increasing backbone");
  const Weight w2 = *w2o;
  const Weight w3 = *solve_tree(tree, w, 1, 1);
  const Weight w5 = best_tree_walk_from(tree, w, 1).weight;
  // w0: best walk from v0 in the tree without v5 (v5 is a leaf, local id 1).
  std::vector<TimedEdge> minus_edges;
  for (auto [a, b, tt] : tree_edges) {
    if (a == 1 || b == 1) continue;
    minus_edges.emplace_back(a == 0 ? 0 : a - 1, b == 0 ? 0 : b - 1, tt);
  }
  std::vector<Weight> minus_w{w[0]};
  minus_w.insert(minus_w.end(), w.begin() + 2, w.end());
  TemporalTree minus = TemporalTree::from_edges(static_cast<Vertex>(verts.size() - 1), wg.L, minus_edges);
  const Weight w0 = best_tree_walk_from(minus, minus_w, 0).weight;

  for (Vertex u : tree_side) {
    rec.deleted.push_back(u);
    wg.remove_vertex(u);
  }
  const Weight wu1 = checked_sub(w1, wg.weight[v0]);
  const Weight wu3 = checked_sub(w3, wg.weight[v5]);
  const Weight wu2 = checked_sub(checked_sub(w2, w1), w3);
  const Weight wy1 = checked_sub(checked_sub(checked_sub(w0, wg.weight[v0]), wu1), wu2);
  Vertex u1 = wg.add_vertex(wu1), u2 = wg.add_vertex(wu2), u3 = wg.add_vertex(wu3), y1 = wg.add_vertex(wy1);
  wg.add_appearance(v0, u1, t[0]);
  wg.add_appearance(u1, u2, t[1]);
  wg.add_appearance(u2, u3, t[3]);
  wg.add_appearance(u3, v5, t[4]);
  wg.add_appearance(u1, y1, t[2]);
  for (Vertex c : {u1, u2, u3, y1}) rec.created.emplace_back(c, wg.weight[c]);
  rec.edges_added = {{std::min(v0, u1), std::max(v0, u1), t[0]}, {u1, u2, t[1]}, {u2, u3, t[3]},
                     {std::min(u3, v5), std::max(u3, v5), t[4]}, {u1, y1, t[2]}};
  if (w5 > w3) {
    Vertex y3 = wg.add_vertex(checked_sub(w5, w3));
    wg.add_appearance(u3, y3, wg.L);
    rec.created.emplace_back(y3, wg.weight[y3]);
    rec.edges_added.emplace_back(u3, y3, wg.L);
  }
  rec.after = wg.stats();
  return rec;
}

RuleApplication apply_drop_empty(WorkGraph& wg, Fault fault) {
  RuleApplication rec;
  rec.rule = RuleId::DropEmptySnapshots;
  rec.before = wg.stats();
  std::vector<Time> used;
  for (Vertex u = 0; u < static_cast<Vertex>(wg.adj.size()); ++u)
    for (const auto& [w, ts] : wg.adj[u]) used.insert(used.end(), ts.begin(), ts.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  auto remap = [&](Time t) { return static_cast<Time>(std::lower_bound(used.begin(), used.end(), t) - used.begin()) + 1; };
  for (auto& nbrs : wg.adj)
    for (auto& [w, ts] : nbrs)
      for (Time& t : ts) t = remap(t);
  const Time old_L = wg.L;
  wg.L = std::max<Time>(1, static_cast<Time>(used.size()));
  if (fault == Fault::DropLastSnapshot && wg.L > 1) {
    for (Vertex u = 0; u < static_cast<Vertex>(wg.adj.size()); ++u) {
      std::vector<Vertex> drop;
      for (auto& [w, ts] : wg.adj[u])
        if (w > u && ts.back() == wg.L) drop.push_back(w);
      for (Vertex w : drop) wg.remove_appearance(u, w, wg.L);
    }
    --wg.L;
  }
  rec.locus = "lifetime " + std::to_string(old_L) + " -> " + std::to_string(wg.L);
  rec.after = wg.stats();
  return rec;
}

struct Rule1Choice {
  Vertex x = -1;  // local id
  std::vector<Vertex> children;
  std::int64_t size = 0;
};

// Largest applicable window tree over all separations; ties go to the smaller cut vertex, then earlier window.
std::optional<Rule1Choice> find_rule1(const View& view, const PendantIndex& idx, Time L) {
  const auto& g = view.graph;
  std::optional<Rule1Choice> best;
  std::vector<std::pair<Time, Vertex>> kids;
  std::vector<Time> qtimes;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    kids.clear();
    qtimes.clear();
    for (const Arc& a : g.neighbors(x)) {
      if (idx.is_pendant_child_edge(x, a))
        kids.emplace_back(g.appearances(a.edge).front(), a.to);
      else
        qtimes.insert(qtimes.end(), g.appearances(a.edge).begin(), g.appearances(a.edge).end());
    }
    if (kids.empty()) continue;
    std::int64_t total = 1;
    for (auto [t, c] : kids) total += idx.subtree_size[c];
    if (total < 4 || (best && total < best->size)) continue;
    std::sort(kids.begin(), kids.end());
    std::sort(qtimes.begin(), qtimes.end());
    qtimes.erase(std::unique(qtimes.begin(), qtimes.end()), qtimes.end());
    ImportantSeparation sep;
    sep.other_times = qtimes;
    for (const RuleWindow& win : separation_windows(sep, L)) {
      std::int64_t size = 1;
      for (auto [t, c] : kids)
        if (win.contains(t)) size += idx.subtree_size[c];
      if (size >= 4 && (!best || size > best->size)) {
        best = Rule1Choice{x, {}, size};
        for (auto [t, c] : kids)
          if (win.contains(t)) best->children.push_back(c);
      }
    }
  }
  return best;
}

GraphStats graph_stats(const Instance& inst) {
  const auto m = inst.graph.total_appearances();
  return {inst.num_vertices(), m, inst.lifetime(), m - inst.num_vertices() + 1};
}

RuleOutcome finish(const WorkGraph& wg, RuleApplication rec, Vertex input_n) {
  Compacted c = compact(wg);
  RuleOutcome out{std::move(c.instance), {}, {}, std::move(rec)};
  out.old_to_new.assign(c.old_to_new.begin(), c.old_to_new.begin() + input_n);
  for (const auto& [v, w] : out.record.created) out.created.push_back(c.old_to_new[v]);
  return out;
}

std::vector<Vertex> check_backbone(const Instance& inst, const ImportantEdgeCut& cut, std::size_t edges) {
  if (cut.backbone.size() != edges + 1)
    throw Error(ErrorCode::NotApplicable, "backbone must have " + std::to_string(edges) + " edges");
  for (Vertex v : cut.backbone)
    if (v < 0 || v >= inst.num_vertices()) throw Error(ErrorCode::InvalidVertex, "backbone vertex out of range");
  return cut.backbone;
}

}  // namespace

RuleOutcome rule_trees(const Instance& inst, const ImportantSeparation& sep, const RuleWindow& window) {
  WorkGraph wg(inst);
  const Vertex x = sep.cut_vertex;
  std::vector<char> in_p(inst.num_vertices(), 0);
  for (Vertex v : sep.pendant_side) in_p[v] = 1;
  std::vector<Vertex> children;
  for (const auto& [u, ts] : wg.adj[x])
    if (in_p[u] && ts.size() == 1 && window.contains(ts.front())) children.push_back(u);
  std::size_t size = 1;
  {
    // Window tree size: the children plus everything reachable from them inside P without x.
    std::vector<char> seen(inst.num_vertices(), 0);
    seen[x] = 1;
    std::vector<Vertex> stack(children.begin(), children.end());
    for (Vertex c : children) seen[c] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++size;
      for (const auto& [u, ts] : wg.adj[v])
        if (!seen[u]) {
          if (!in_p[u]) throw Error(ErrorCode::NotApplicable, "separation's tree side is not closed");
          seen[u] = 1;
          stack.push_back(u);
        }
    }
  }
  if (size < 4) throw Error(ErrorCode::NotApplicable, "window tree has fewer than 4 vertices");
  auto rec = apply_trees(wg, x, children);
  return finish(wg, std::move(rec), inst.num_vertices());
}

RuleOutcome rule_delete_edge(const Instance& inst, const ImportantEdgeCut& cut) {
  WorkGraph wg(inst);
  auto rec = apply_delete_edge(wg, check_backbone(inst, cut, 3));
  return finish(wg, std::move(rec), inst.num_vertices());
}

RuleOutcome rule_merge_equal_times(const Instance& inst, const ImportantEdgeCut& cut) {
  WorkGraph wg(inst);
  auto rec = apply_merge_equal(wg, check_backbone(inst, cut, 3));
  return finish(wg, std::move(rec), inst.num_vertices());
}

RuleOutcome rule_contract_backbone(const Instance& inst, const ImportantEdgeCut& cut) {
  WorkGraph wg(inst);
  auto rec = apply_contract(wg, check_backbone(inst, cut, 5), cut.tree_side);
  return finish(wg, std::move(rec), inst.num_vertices());
}

RuleOutcome rule_drop_empty_snapshots(const Instance& inst) {
  WorkGraph wg(inst);
  auto rec = apply_drop_empty(wg, Fault::None);
  return finish(wg, std::move(rec), inst.num_vertices());
}

WeightReduction reduce_weights(const Instance& inst) {
  WeightReduction out{inst, 1, true};
  Weight g = inst.k;
  for (Weight w : inst.weights) g = std::gcd(g, w);
  if (g > 1) {
    for (Weight& w : out.instance.weights) w /= g;
    out.instance.k /= g;
  }
  out.divisor = g;
  const double r = static_cast<double>(inst.num_vertices()) + 1.0;
  const double bound_bits = 4.0 * r * r * r + r * (r + 2.0) * std::log2(r + 1.0);
  Weight max_w = *std::max_element(out.instance.weights.begin(), out.instance.weights.end());
  max_w = std::max(max_w, out.instance.k);
  out.within_bound = std::log2(static_cast<double>(max_w)) <= bound_bits;
  return out;
}

KernelResult kernelize(const Instance& inst, const KernelOptions& options) {
  if (!inst.graph.underlying().is_connected())
    throw Error(ErrorCode::DisconnectedGraph, "kernelize needs a connected underlying graph");
  (void)inst.total_weight();
  WorkGraph wg(inst);
  KernelResult result;
  result.input = wg.stats();
  const std::uint64_t size = static_cast<std::uint64_t>(result.input.n + result.input.m + result.input.L);
  const std::uint64_t cap = options.iteration_cap ? options.iteration_cap : 16 * size * size;

  auto record = [&](RuleApplication rec) {
    if (rec.after.p > rec.before.p)
      throw Error(ErrorCode::InternalError, std::string("rule ") + to_string(rec.rule) + " increased p");
    result.trace.applications.push_back(std::move(rec));
    if (result.trace.applications.size() > cap)
      throw Error(ErrorCode::IterationCapExceeded, "more than " + std::to_string(cap) + " rule applications");
  };
  auto to_work = [](const View& view, const std::vector<Vertex>& locals) {
    std::vector<Vertex> out;
    for (Vertex v : locals) out.push_back(view.to_work[v]);
    return out;
  };

  for (;;) {
    View view = make_view(wg);
    PendantIndex idx = build_pendant_index(view.graph, view.source);
    if (auto choice = find_rule1(view, idx, wg.L)) {
      record(apply_trees(wg, view.to_work[choice->x], to_work(view, choice->children)));
      continue;
    }
    bool applied = false;
    auto short_bbs = oriented_backbones(view.graph, idx, 3);
    for (int rule : {2, 3}) {
      for (const auto& bb : short_bbs) {
        auto work_bb = to_work(view, bb);
        auto t = backbone_times(wg, work_bb);
        if (rule == 2 && rule2_applies(t)) {
          record(apply_delete_edge(wg, work_bb));
          applied = true;
        } else if (rule == 3 && rule3_applies(t)) {
          record(apply_merge_equal(wg, work_bb));
          applied = true;
        }
        if (applied) break;
      }
      if (applied) break;
    }
    if (applied) continue;
    for (const auto& bb : oriented_backbones(view.graph, idx, 5)) {
      auto work_bb = to_work(view, bb);
      if (!rule4_applies(backbone_times(wg, work_bb))) continue;
      record(apply_contract(wg, work_bb, to_work(view, backbone_tree_side(view.graph, idx, bb))));
      applied = true;
      break;
    }
    if (!applied) break;
  }
  record(apply_drop_empty(wg, options.fault));

  Compacted c = compact(wg);
  result.kernel_to_input.resize(c.new_to_old.size());
  for (std::size_t i = 0; i < c.new_to_old.size(); ++i)
    result.kernel_to_input[i] = c.new_to_old[i] < wg.input_n ? c.new_to_old[i] : -1;
  result.instance = std::move(c.instance);
  if (options.weight_reduction) {
    RuleApplication rec;
    rec.rule = RuleId::ReduceWeights;
    rec.before = rec.after = graph_stats(result.instance);
    WeightReduction wr = reduce_weights(result.instance);
    rec.locus = "divisor " + std::to_string(wr.divisor);
    result.instance = std::move(wr.instance);
    result.weights_within_bound = wr.within_bound;
    record(std::move(rec));
  }
  result.output = graph_stats(result.instance);
  if (options.check_bounds) {
    const auto& o = result.output;
    if (o.p > result.input.p) throw Error(ErrorCode::BoundViolation, "kernel has larger p than its input");
    const bool ok = o.p >= 1 ? (o.n <= 324 * o.p && o.m <= 326 * o.p && o.L <= 326 * o.p)
                             : (o.n <= 8 && o.m <= 8 && o.L <= 8);
    if (!ok)
      throw Error(ErrorCode::BoundViolation, "kernel size n=" + std::to_string(o.n) + " m=" + std::to_string(o.m) +
                                                 " L=" + std::to_string(o.L) + " exceeds the bound for p=" +
                                                 std::to_string(o.p));
  }
  return result;
}

bool is_trivial_instance(const Instance& inst) {
  return inst.num_vertices() == 1 && inst.lifetime() == 1 && inst.weights[0] == 1 && (inst.k == 1 || inst.k == 2);
}

KernelResult kernelize_q(const Instance& inst, const KernelOptions& options) {
  if (!inst.graph.underlying().is_connected())
    throw Error(ErrorCode::DisconnectedGraph, "kernelize_q needs a connected underlying graph");
  KernelResult result;
  result.input = graph_stats(inst);
  Instance cur = inst;
  std::vector<std::vector<Vertex>> members(inst.num_vertices());
  for (Vertex v = 0; v < inst.num_vertices(); ++v) members[v] = {v};

  for (;;) {
    const auto& ug = cur.graph.underlying();
    const Vertex n = cur.num_vertices();
    boost::disjoint_sets_with_storage<> ds(n);
    RuleApplication rec;
    rec.rule = RuleId::ContractPermanent;
    rec.before = graph_stats(cur);
    for (std::size_t i = 0; i < ug.num_edges(); ++i)
      if (static_cast<Time>(ug.multiplicity(i)) == cur.lifetime()) {
        ds.union_set(ug.edge(i).u, ug.edge(i).v);
        rec.edges_removed.emplace_back(ug.edge(i).u, ug.edge(i).v, 0);
      }
    if (rec.edges_removed.empty()) break;
    std::vector<Vertex> cls(n, -1), root_cls(n, -1);
    Vertex count = 0;
    for (Vertex v = 0; v < n; ++v) {
      auto r = static_cast<Vertex>(ds.find_set(v));
      if (root_cls[r] < 0) root_cls[r] = count++;
      cls[v] = root_cls[r];
    }
    std::vector<Weight> w(count, 0);
    std::vector<std::vector<Vertex>> merged(count);
    for (Vertex v = 0; v < n; ++v) {
      w[cls[v]] = checked_add(w[cls[v]], cur.weights[v]);
      merged[cls[v]].insert(merged[cls[v]].end(), members[v].begin(), members[v].end());
    }
    std::vector<std::vector<Edge>> snaps(cur.lifetime());
    for (Time t = 1; t <= cur.lifetime(); ++t) {
      for (const Edge& e : cur.graph.snapshot(t))
        if (cls[e.u] != cls[e.v]) snaps[t - 1].push_back(Edge::make(cls[e.u], cls[e.v]));
      std::sort(snaps[t - 1].begin(), snaps[t - 1].end());
      snaps[t - 1].erase(std::unique(snaps[t - 1].begin(), snaps[t - 1].end()), snaps[t - 1].end());
    }
    for (std::size_t i = 0; i < merged.size(); ++i) std::sort(merged[i].begin(), merged[i].end());
    members = std::move(merged);
    cur = Instance{TemporalGraph::build(count, std::move(snaps)), std::move(w), cls[cur.source], cur.k};
    rec.locus = "contracted into " + std::to_string(count) + " vertices";
    rec.after = graph_stats(cur);
    result.trace.applications.push_back(std::move(rec));
  }

  for (Time t = 1; t <= cur.lifetime(); ++t) {
    auto labels = component_labels(cur.graph, t);
    if (*std::max_element(labels.begin(), labels.end()) != 0) continue;
    const bool yes = cur.total_weight() >= cur.k;
    RuleApplication rec;
    rec.rule = RuleId::ConnectedSnapshot;
    rec.before = graph_stats(cur);
    rec.locus = "snapshot " + std::to_string(t) + " is connected; answer " + (yes ? "yes" : "no");
    cur = build_instance(1, std::vector<std::vector<std::pair<Vertex, Vertex>>>(1), std::vector<Weight>{1}, 0, yes ? 1 : 2);
    rec.after = graph_stats(cur);
    result.trace.applications.push_back(std::move(rec));
    members.assign(1, {});
    break;
  }

  if (!result.trace.applications.empty() && result.trace.applications.back().rule == RuleId::ConnectedSnapshot) {
    result.kernel_to_input = {-1};
  } else {
    const auto& ug = cur.graph.underlying();
    const std::int64_t q = static_cast<std::int64_t>(ug.num_edges()) * cur.lifetime() - ug.total_appearances();
    if (options.check_bounds && (cur.num_vertices() > q + 1 || cur.lifetime() > q))
      throw Error(ErrorCode::BoundViolation, "q-kernel exceeds |V| <= q + 1 or L <= q");
    for (const auto& m : members) result.kernel_to_input.push_back(m.size() == 1 ? m.front() : -1);
  }
  result.instance = std::move(cur);
  if (options.weight_reduction) {
    WeightReduction wr = reduce_weights(result.instance);
    RuleApplication rec;
    rec.rule = RuleId::ReduceWeights;
    rec.before = rec.after = graph_stats(result.instance);
    rec.locus = "divisor " + std::to_string(wr.divisor);
    result.instance = std::move(wr.instance);
    result.weights_within_bound = wr.within_bound;
    result.trace.applications.push_back(std::move(rec));
  }
  result.output = graph_stats(result.instance);
  return result;
}

}  // namespace tgx
