#include "tgx/decomposition.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <string>

namespace tgx {

RedBlue red_blue_partition(const UnderlyingGraph& g) {
  RedBlue rb;
  for (std::size_t i = 0; i < g.num_edges(); ++i) (g.is_red(i) ? rb.red : rb.blue).push_back(i);
  return rb;
}

std::vector<std::size_t> feedback_edge_set(const UnderlyingGraph& g, std::span<const std::size_t> red) {
  if (!g.is_connected()) throw Error(ErrorCode::DisconnectedGraph, "underlying graph is disconnected");
  std::vector<char> is_red(g.num_edges(), 0);
  for (auto e : red) is_red[e] = 1;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    if (!is_red[i]) order.push_back(i);
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    if (is_red[i]) order.push_back(i);
  boost::disjoint_sets_with_storage<> ds(g.num_vertices());
  std::vector<char> in_s(g.num_edges(), 0);
  for (auto e : order) {
    const Edge& ed = g.edge(e);
    auto a = ds.find_set(ed.u), b = ds.find_set(ed.v);
    if (a == b)
      in_s[e] = 1;
    else
      ds.link(a, b);
  }
  for (auto e : red) in_s[e] = 1;
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    if (in_s[i]) s.push_back(i);
  return s;
}

std::vector<Vertex> core_set(const UnderlyingGraph& g, std::span<const std::size_t> feedback, Vertex source) {
  const Vertex n = g.num_vertices();
  std::vector<char> in_y(n, 0), in_s(g.num_edges(), 0);
  in_y[source] = 1;
  for (auto e : feedback) {
    in_s[e] = 1;
    in_y[g.edge(e).u] = in_y[g.edge(e).v] = 1;
  }
  // G': repeatedly drop vertices of degree <= 1 that are not in Y.
  std::vector<std::int64_t> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = static_cast<std::int64_t>(g.degree(v));
    if (!in_y[v] && deg[v] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    if (removed[v]) continue;
    removed[v] = 1;
    for (const Arc& a : g.neighbors(v))
      if (!removed[a.to] && --deg[a.to] <= 1 && !in_y[a.to]) queue.push_back(a.to);
  }
  std::vector<Vertex> core;
  for (Vertex v = 0; v < n; ++v) {
    if (removed[v]) continue;
    std::int64_t h_deg = 0;  // degree in H = G' - S
    for (const Arc& a : g.neighbors(v))
      if (!removed[a.to] && !in_s[a.edge]) ++h_deg;
    if (in_y[v] || h_deg >= 3) core.push_back(v);
  }
  return core;
}

PendantClassification classify_pendants(const UnderlyingGraph& g, std::span<const Vertex> core) {
  const Vertex n = g.num_vertices();
  std::vector<char> in_x(n, 0);
  for (Vertex v : core) in_x[v] = 1;
  std::vector<std::int32_t> comp(n, -1);
  PendantClassification out;
  for (Vertex s = 0; s < n; ++s) {
    if (in_x[s] || comp[s] >= 0) continue;
    const auto id = static_cast<std::int32_t>(out.pendants.size());
    Pendant pd;
    std::vector<Vertex> stack{s};
    comp[s] = id;
    std::size_t internal_edges_twice = 0;
    std::vector<std::pair<Vertex, Vertex>> attach_edges;  // (core vertex, pendant vertex)
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      pd.vertices.push_back(v);
      for (const Arc& a : g.neighbors(v)) {
        if (in_x[a.to]) {
          attach_edges.emplace_back(a.to, v);
          continue;
        }
        ++internal_edges_twice;
        if (comp[a.to] < 0) {
          comp[a.to] = id;
          stack.push_back(a.to);
        }
      }
    }
    std::sort(pd.vertices.begin(), pd.vertices.end());
    if (internal_edges_twice / 2 + 1 != pd.vertices.size())
      throw Error(ErrorCode::StructureViolation, "component of G - X containing " + std::to_string(s) + " is not a tree");
    std::sort(attach_edges.begin(), attach_edges.end());
    for (std::size_t i = 0; i < attach_edges.size(); ++i) {
      if (i > 0 && attach_edges[i].first == attach_edges[i - 1].first)
        throw Error(ErrorCode::StructureViolation,
                    "core vertex " + std::to_string(attach_edges[i].first) + " has two neighbors in one component");
      pd.attachments.push_back(attach_edges[i].first);
    }
    if (pd.attachments.empty() || pd.attachments.size() > 2)
      throw Error(ErrorCode::StructureViolation, "component of G - X must attach to one or two core vertices");
    pd.type = pd.attachments.size() == 1 ? PendantType::A : PendantType::B;
    if (pd.type == PendantType::B) ++out.type_b;
    out.pendants.push_back(std::move(pd));
  }
  return out;
}

Decomposition decompose(const Instance& inst) {
  const auto& g = inst.graph.underlying();
  Decomposition d;
  d.colors = red_blue_partition(g);
  d.feedback = feedback_edge_set(g, d.colors.red);
  d.p = g.total_appearances() - g.num_vertices() + 1;
  if (static_cast<std::int64_t>(d.feedback.size()) > d.p)
    throw Error(ErrorCode::BoundViolation, "feedback edge set larger than p");
  d.core = core_set(g, d.feedback, inst.source);
  if (static_cast<std::int64_t>(d.core.size()) > std::max<std::int64_t>(4 * d.p, 1))
    throw Error(ErrorCode::BoundViolation, "core set larger than max(4p, 1)");
  d.pendants = classify_pendants(g, d.core);
  std::vector<char> in_x(g.num_vertices(), 0);
  for (Vertex v : d.core) in_x[v] = 1;
  for (const auto& e : g.edges())
    if (in_x[e.u] && in_x[e.v]) ++d.core_edges;
  if (d.p >= 1) {
    const auto qb = static_cast<std::int64_t>(d.pendants.type_b);
    if (qb > 4 * d.p - 1) throw Error(ErrorCode::BoundViolation, "too many two-attachment components");
    if (static_cast<std::int64_t>(d.core_edges) > 5 * d.p - qb - 1)
      throw Error(ErrorCode::BoundViolation, "too many edges inside the core");
  }
  return d;
}

PendantIndex build_pendant_index(const UnderlyingGraph& g, Vertex source) {
  const Vertex n = g.num_vertices();
  PendantIndex idx;
  idx.source = source;
  idx.parent.assign(n, -1);
  idx.parent_edge.assign(n, -1);
  idx.pendant.assign(n, 0);
  idx.subtree_size.assign(n, 1);
  idx.non_pendant_degree.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{source};
  seen[source] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    idx.order.push_back(v);
    for (const Arc& a : g.neighbors(v))
      if (!seen[a.to]) {
        seen[a.to] = 1;
        idx.parent[a.to] = v;
        idx.parent_edge[a.to] = a.edge;
        stack.push_back(a.to);
      }
  }
  // bad[u]: non-tree edges at u plus a red parent edge; a subtree is pendant iff its sum is zero.
  std::vector<std::int64_t> bad(n, 0);
  for (Vertex u : idx.order) {
    for (const Arc& a : g.neighbors(u)) {
      const auto e = static_cast<std::int64_t>(a.edge);
      if (idx.parent_edge[u] != e && idx.parent_edge[a.to] != e) ++bad[u];
    }
    if (idx.parent_edge[u] >= 0 && g.is_red(static_cast<std::size_t>(idx.parent_edge[u]))) ++bad[u];
  }
  for (auto it = idx.order.rbegin(); it != idx.order.rend(); ++it) {
    Vertex c = *it;
    if (c == source) continue;
    idx.pendant[c] = bad[c] == 0;
    bad[idx.parent[c]] += bad[c];
    idx.subtree_size[idx.parent[c]] += idx.subtree_size[c];
  }
  for (Vertex u : idx.order)
    for (const Arc& a : g.neighbors(u))
      if (!idx.is_pendant_child_edge(u, a)) ++idx.non_pendant_degree[u];
  return idx;
}

namespace {

// Vertices of the pendant subtree rooted at c (c's parent excluded).
void collect_subtree(const UnderlyingGraph& g, const PendantIndex& idx, Vertex c, std::vector<Vertex>& out) {
  std::vector<Vertex> stack{c};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const Arc& a : g.neighbors(v))
      if (idx.parent[a.to] == v && idx.parent_edge[a.to] == static_cast<std::int64_t>(a.edge)) stack.push_back(a.to);
  }
}

std::vector<Vertex> complement_with(Vertex n, const std::vector<Vertex>& sorted_set, Vertex keep) {
  std::vector<Vertex> out;
  std::size_t j = 0;
  for (Vertex v = 0; v < n; ++v) {
    while (j < sorted_set.size() && sorted_set[j] < v) ++j;
    if ((j < sorted_set.size() && sorted_set[j] == v) && v != keep) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<ImportantSeparation> important_separations(const Instance& inst) {
  const auto& g = inst.graph.underlying();
  if (!g.is_connected()) throw Error(ErrorCode::DisconnectedGraph, "underlying graph is disconnected");
  PendantIndex idx = build_pendant_index(g, inst.source);
  std::vector<ImportantSeparation> out;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    ImportantSeparation sep;
    sep.cut_vertex = x;
    sep.pendant_side.push_back(x);
    for (const Arc& a : g.neighbors(x)) {
      if (idx.is_pendant_child_edge(x, a))
        collect_subtree(g, idx, a.to, sep.pendant_side);
      else
        sep.other_times.insert(sep.other_times.end(), g.appearances(a.edge).begin(), g.appearances(a.edge).end());
    }
    if (sep.pendant_side.size() < 2) continue;
    std::sort(sep.pendant_side.begin(), sep.pendant_side.end());
    std::sort(sep.other_times.begin(), sep.other_times.end());
    sep.other_times.erase(std::unique(sep.other_times.begin(), sep.other_times.end()), sep.other_times.end());
    sep.other_side = complement_with(g.num_vertices(), sep.pendant_side, x);
    out.push_back(std::move(sep));
  }
  return out;
}

std::vector<std::vector<Vertex>> oriented_backbones(const UnderlyingGraph& g, const PendantIndex& idx, int edges) {
  const Vertex n = g.num_vertices();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path;
  std::vector<char> on_path(n, 0);

  // u is an internal vertex entered through edge e_in; try to leave it.
  auto extend = [&](auto&& self, Vertex u, std::size_t e_in) -> void {
    int np_left = idx.non_pendant_degree[u];
    bool in_is_np = true;
    for (const Arc& a : g.neighbors(u))
      if (a.edge == e_in) in_is_np = !idx.is_pendant_child_edge(u, a);
    if (in_is_np) --np_left;
    if (np_left > 1) return;
    for (const Arc& a : g.neighbors(u)) {
      if (a.edge == e_in || on_path[a.to] || g.is_red(a.edge)) continue;
      if (np_left == 1 && idx.is_pendant_child_edge(u, a)) continue;  // the remaining non-pendant edge is forced
      const int used = static_cast<int>(path.size());  // edges after taking this arc
      path.push_back(a.to);
      on_path[a.to] = 1;
      if (used >= 3 && (edges == 0 || used == edges)) out.push_back(path);
      if ((edges == 0 || used < edges) && a.to != idx.source) self(self, a.to, a.edge);
      on_path[a.to] = 0;
      path.pop_back();
    }
  };

  for (Vertex y1 = 0; y1 < n; ++y1) {
    path.assign(1, y1);
    on_path[y1] = 1;
    for (const Arc& a : g.neighbors(y1)) {
      if (g.is_red(a.edge) || a.to == idx.source) continue;
      path.push_back(a.to);
      on_path[a.to] = 1;
      extend(extend, a.to, a.edge);
      on_path[a.to] = 0;
      path.pop_back();
    }
    on_path[y1] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> backbone_tree_side(const UnderlyingGraph& g, const PendantIndex& idx,
                                       std::span<const Vertex> backbone) {
  std::vector<Vertex> side;
  for (std::size_t i = 1; i + 1 < backbone.size(); ++i) {
    Vertex u = backbone[i];
    side.push_back(u);
    for (const Arc& a : g.neighbors(u)) {
      if (a.to == backbone[i - 1] || a.to == backbone[i + 1]) continue;
      collect_subtree(g, idx, a.to, side);
    }
  }
  std::sort(side.begin(), side.end());
  return side;
}

ImportantEdgeCut ImportantEdgeCut::reversed() const {
  ImportantEdgeCut r = *this;
  std::reverse(r.backbone.begin(), r.backbone.end());
  std::reverse(r.backbone_times.begin(), r.backbone_times.end());
  return r;
}

std::vector<ImportantEdgeCut> important_edge_cuts(const Instance& inst) {
  const auto& g = inst.graph.underlying();
  if (!g.is_connected()) throw Error(ErrorCode::DisconnectedGraph, "underlying graph is disconnected");
  PendantIndex idx = build_pendant_index(g, inst.source);
  std::vector<ImportantEdgeCut> out;
  for (auto& bb : oriented_backbones(g, idx, 0)) {
    std::vector<Vertex> rev(bb.rbegin(), bb.rend());
    if (rev < bb) continue;
    ImportantEdgeCut cut;
    for (std::size_t i = 0; i + 1 < bb.size(); ++i)
      cut.backbone_times.push_back(g.appearances(*g.find_edge(Edge::make(bb[i], bb[i + 1]))).front());
    cut.tree_side = backbone_tree_side(g, idx, bb);
    cut.other_side = complement_with(g.num_vertices(), cut.tree_side, -1);
    cut.backbone = std::move(bb);
    out.push_back(std::move(cut));
  }
  std::sort(out.begin(), out.end(), [](const ImportantEdgeCut& a, const ImportantEdgeCut& b) {
    auto ca = a.cut_set(), cb = b.cut_set();
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca < cb;
  });
  return out;
}

}  // namespace tgx
