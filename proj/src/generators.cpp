#include "tgx/generators.hpp"

#include <algorithm>
#include <boost/pending/disjoint_sets.hpp>
#include <charconv>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace tgx {

namespace {

using Snapshot = std::vector<Edge>;

void add_component(Snapshot& snap, std::vector<Vertex> verts, bool sparse) {
  if (verts.size() < 2) return;
  std::sort(verts.begin(), verts.end());
  if (sparse) {
    for (std::size_t i = 1; i < verts.size(); ++i) snap.push_back({verts[0], verts[i]});
    return;
  }
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) snap.push_back({verts[i], verts[j]});
}

Instance unit_instance(Vertex n, std::vector<Snapshot> snaps, Vertex source, std::optional<Weight> k = std::nullopt) {
  return make_instance(TemporalGraph::build(n, std::move(snaps)), std::vector<Weight>(n, 1), source, k);
}

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 0;

  // Next non-empty line with comments (starting with `comment`) skipped.
  bool next(std::string_view& out, char comment) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view l = text.substr(pos, end - pos);
      pos = end + 1;
      ++line;
      std::size_t a = l.find_first_not_of(" \t\r");
      if (a == std::string_view::npos || l[a] == comment) continue;
      out = l.substr(a);
      return true;
    }
    return false;
  }
};

std::vector<std::int64_t> ints(std::string_view l, std::size_t line, std::size_t skip_tokens = 0) {
  std::vector<std::int64_t> out;
  std::size_t i = 0, tok = 0;
  while (i < l.size()) {
    while (i < l.size() && (l[i] == ' ' || l[i] == '\t' || l[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < l.size() && l[j] != ' ' && l[j] != '\t' && l[j] != '\r') ++j;
    if (j > i) {
      if (tok++ >= skip_tokens) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(l.data() + i, l.data() + j, v);
        if (ec != std::errc() || ptr != l.data() + j)
          throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": expected an integer", line);
        out.push_back(v);
      }
    }
    i = j;
  }
  return out;
}

}  // namespace

bool CnfFormula::is_monotone() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) {
    return std::all_of(c.begin(), c.end(), [](int l) { return l > 0; }) ||
           std::all_of(c.begin(), c.end(), [](int l) { return l < 0; });
  });
}

CnfFormula parse_dimacs(std::string_view text) {
  LineReader r{text};
  std::string_view l;
  CnfFormula phi;
  std::int64_t expected = -1;
  std::vector<int> cur;
  while (r.next(l, 'c')) {
    if (l[0] == '%') break;
    if (l[0] == 'p') {
      if (expected >= 0) throw Error(ErrorCode::SyntaxError, "duplicate problem line", r.line);
      if (l.substr(0, 5) != "p cnf") throw Error(ErrorCode::SyntaxError, "expected 'p cnf <vars> <clauses>'", r.line);
      auto v = ints(l, r.line, 2);
      if (v.size() != 2 || v[0] < 0 || v[1] < 0) throw Error(ErrorCode::SyntaxError, "bad problem line", r.line);
      phi.num_vars = static_cast<int>(v[0]);
      expected = v[1];
      continue;
    }
    if (expected < 0) throw Error(ErrorCode::SyntaxError, "clause before problem line", r.line);
    for (auto lit : ints(l, r.line)) {
      if (lit == 0) {
        phi.clauses.push_back(cur);
        cur.clear();
      } else {
        if (std::abs(lit) > phi.num_vars) throw Error(ErrorCode::SyntaxError, "literal exceeds variable count", r.line);
        cur.push_back(static_cast<int>(lit));
      }
    }
  }
  if (expected < 0) throw Error(ErrorCode::SyntaxError, "missing problem line", std::max<std::size_t>(r.line, 1));
  if (!cur.empty()) phi.clauses.push_back(cur);
  if (static_cast<std::int64_t>(phi.clauses.size()) != expected)
    throw Error(ErrorCode::SyntaxError, "clause count differs from problem line", r.line);
  return phi;
}

Instance gen_from_sat(const CnfFormula& phi, bool sparse) {
  const int n = phi.num_vars;
  if (n < 1 || phi.clauses.empty()) throw Error(ErrorCode::EmptyFormula, "formula needs a variable and a clause");
  const auto m = static_cast<Vertex>(phi.clauses.size());
  // sign[i][j]: +1 if clause j has x_i, -1 if it has ¬x_i.
  std::vector<std::vector<int>> sign(n + 1, std::vector<int>(m, 0));
  for (Vertex j = 0; j < m; ++j)
    for (int lit : phi.clauses[j]) {
      int v = std::abs(lit);
      if (v < 1 || v > n) throw Error(ErrorCode::InvalidInput, "literal out of range");
      int s = lit > 0 ? 1 : -1;
      if (sign[v][j] == -s) throw Error(ErrorCode::InvalidInput, "clause contains a literal and its negation");
      sign[v][j] = s;
    }
  auto pos = [&](int i) { return m + 3 * (i - 1); };
  auto neg = [&](int i) { return m + 3 * (i - 1) + 1; };
  auto hat = [&](int i) { return m + 3 * (i - 1) + 2; };
  const Vertex chat = m + 3 * n;
  const Vertex nv = chat + 1;
  const Time L = 2 * n + 1;

  std::vector<Vertex> clauses(m), literals;
  std::iota(clauses.begin(), clauses.end(), 0);
  for (int i = 1; i <= n; ++i) {
    literals.push_back(pos(i));
    literals.push_back(neg(i));
  }
  auto hats = [&](auto pred) {
    std::vector<Vertex> out;
    for (int j = 1; j <= n; ++j)
      if (pred(j)) out.push_back(hat(j));
    return out;
  };
  auto join = [](std::vector<Vertex> a, const std::vector<Vertex>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  std::vector<Snapshot> snaps(L);
  for (Time t = 1; t <= L; ++t) {
    Snapshot& s = snaps[t - 1];
    if (t == 1) {
      add_component(s, join({chat}, hats([](int) { return true; })), sparse);
      add_component(s, clauses, sparse);
      add_component(s, literals, sparse);
    } else if (t == L) {
      // The last odd step also hands x̂_n to the literal component; otherwise x̂_n could never be visited.
      add_component(s, clauses, sparse);
      add_component(s, join(literals, {chat, hat(n)}), sparse);
      add_component(s, hats([&](int j) { return j < n; }), sparse);
    } else if (t % 2 == 0) {
      const int i = t / 2;
      std::vector<Vertex> c2, c3, c4{neg(i)};
      for (Vertex v : literals)
        if (v != neg(i)) c3.push_back(v);
      for (Vertex j = 0; j < m; ++j) {
        if (sign[i][j] > 0)
          c3.push_back(j);
        else if (sign[i][j] < 0)
          c4.push_back(j);
        else
          c2.push_back(j);
      }
      add_component(s, join({chat}, hats([&](int j) { return j >= i; })), sparse);
      add_component(s, c2, sparse);
      add_component(s, c3, sparse);
      add_component(s, c4, sparse);
      add_component(s, hats([&](int j) { return j < i; }), sparse);
    } else {
      const int h = (t - 1) / 2;
      add_component(s, join({chat}, hats([&](int j) { return j > h; })), sparse);
      add_component(s, clauses, sparse);
      add_component(s, join(literals, {hat(h)}), sparse);
      add_component(s, hats([&](int j) { return j < h; }), sparse);
    }
  }
  return unit_instance(nv, std::move(snaps), pos(1));
}

Instance gen_two_stars(const CnfFormula& phi) {
  const int n = phi.num_vars;
  if (n < 1 || phi.clauses.empty()) throw Error(ErrorCode::EmptyFormula, "formula needs a variable and a clause");
  if (!phi.is_monotone()) throw Error(ErrorCode::NotMonotone, "two-star construction needs a monotone formula");
  const auto m = static_cast<Vertex>(phi.clauses.size());
  const Vertex top = 0, bottom = 1;
  std::vector<Snapshot> snaps(2 * n);
  for (Time t = 1; t <= 2 * n; ++t) {
    if (t % 2 == 1) {
      snaps[t - 1].push_back({top, bottom});
      continue;
    }
    const int i = t / 2;
    for (Vertex j = 0; j < m; ++j) {
      const auto& c = phi.clauses[j];
      if (c.empty()) throw Error(ErrorCode::InvalidInput, "empty clause");
      if (c.size() > 3) throw Error(ErrorCode::ClauseTooWide, "clauses may have at most three literals");
      if (std::find(c.begin(), c.end(), i) != c.end()) snaps[t - 1].push_back({top, 2 + j});
      if (std::find(c.begin(), c.end(), -i) != c.end()) snaps[t - 1].push_back({bottom, 2 + j});
    }
  }
  return unit_instance(m + 2, std::move(snaps), top);
}

HittingSetInput parse_hitting_set(std::string_view text) {
  LineReader r{text};
  std::string_view l;
  if (!r.next(l, '#')) throw Error(ErrorCode::SyntaxError, "missing '<universe> <budget>' line", 1);
  auto head = ints(l, r.line);
  if (head.size() != 2) throw Error(ErrorCode::SyntaxError, "expected '<universe> <budget>'", r.line);
  HittingSetInput in{static_cast<int>(head[0]), {}, static_cast<int>(head[1])};
  while (r.next(l, '#')) {
    std::vector<int> set;
    for (auto v : ints(l, r.line)) set.push_back(static_cast<int>(v));
    in.sets.push_back(std::move(set));
  }
  return in;
}

Instance gen_from_hitting_set(const HittingSetInput& in, bool sparse) {
  const int n = in.universe, k = in.budget;
  if (n < 1 || k < 1) throw Error(ErrorCode::InvalidInput, "universe and budget must be positive");
  const auto m = static_cast<Vertex>(in.sets.size());
  std::vector<std::vector<char>> member(m, std::vector<char>(n + 1, 0));
  for (Vertex s = 0; s < m; ++s) {
    if (in.sets[s].empty()) throw Error(ErrorCode::InvalidInput, "sets must be nonempty");
    for (int x : in.sets[s]) {
      if (x < 1 || x > n) throw Error(ErrorCode::InvalidInput, "set element outside the universe");
      member[s][x] = 1;
    }
  }
  auto elem = [&](int j) { return static_cast<Vertex>(j - 1); };
  auto set_v = [&](Vertex s) { return n + s; };
  auto ctrl = [&](int i, int j) { return static_cast<Vertex>(n + m + (i - 1) * n + (j - 1)); };
  const Vertex nv = n + m + k * n;
  const Time last = k * (n + 1);  // steps are 0..last, snapshot index = step + 1

  // Control x_j^i sits in C3 at step t_i + j and in C5 at t_i + j + 1 (x_n^i only in C3 at t_i + n + 1).
  auto first_active = [&](int i, int j) { return (i - 1) * (n + 1) + (j < n ? j : n + 1); };
  auto last_active = [&](int i, int j) { return (i - 1) * (n + 1) + j + 1; };

  std::vector<Snapshot> snaps(last + 1);
  for (Time step = 0; step <= last; ++step) {
    std::vector<Vertex> c1, c2, c3, c4, c5, c6;
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= n; ++j) {
        if (first_active(i, j) > step) c1.push_back(ctrl(i, j));
        if (last_active(i, j) < step) c6.push_back(ctrl(i, j));
      }
    if (step == last) {
      for (Vertex s = 0; s < m; ++s) c2.push_back(set_v(s));
      for (int l = 1; l <= n; ++l) c3.push_back(elem(l));
      c3.push_back(ctrl(k, n));
    } else {
      const int i = step / (n + 1) + 1, j = step % (n + 1);
      if (j == 0) {
        for (int l = 1; l <= n; ++l) c3.push_back(elem(l));
        if (i > 1) c3.push_back(ctrl(i - 1, n));
        for (Vertex s = 0; s < m; ++s) c2.push_back(set_v(s));
      } else {
        for (int l = j + 1; l <= n; ++l) c3.push_back(elem(l));
        if (j < n) c3.push_back(ctrl(i, j));
        c4.push_back(elem(j));
        for (Vertex s = 0; s < m; ++s) (member[s][j] ? c4 : c2).push_back(set_v(s));
        for (int l = 1; l < j; ++l) c5.push_back(elem(l));
        if (j >= 2) c5.push_back(ctrl(i, j - 1));
      }
    }
    for (auto* c : {&c1, &c2, &c3, &c4, &c5, &c6}) add_component(snaps[step], *c, sparse);
  }
  return unit_instance(nv, std::move(snaps), elem(1));
}

Vertex PartiteGraph::num_vertices() const {
  Vertex n = 0;
  for (const auto& p : parts) n += static_cast<Vertex>(p.size());
  return n;
}

int PartiteGraph::validate() const {
  const Vertex n = num_vertices();
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "partite graph needs at least one part");
  std::vector<int> part_of(n, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw Error(ErrorCode::InvalidInput, "parts must be nonempty");
    for (Vertex v : parts[i]) {
      if (v < 0 || v >= n || part_of[v] >= 0) throw Error(ErrorCode::InvalidInput, "parts must partition 0..N-1");
      part_of[v] = static_cast<int>(i);
    }
  }
  std::vector<int> deg(n, 0);
  std::set<Edge> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= n || e.u >= e.v) throw Error(ErrorCode::InvalidInput, "bad edge");
    if (part_of[e.u] == part_of[e.v]) throw Error(ErrorCode::InvalidInput, "edge inside a part");
    if (!seen.insert(e).second) throw Error(ErrorCode::InvalidInput, "duplicate edge");
    ++deg[e.u];
    ++deg[e.v];
  }
  if (std::any_of(deg.begin(), deg.end(), [&](int d) { return d != deg[0]; }))
    throw Error(ErrorCode::NotRegular, "graph is not regular");
  return deg[0];
}

PartiteGraph parse_partite_graph(std::string_view text) {
  LineReader r{text};
  std::string_view l;
  if (!r.next(l, '#')) throw Error(ErrorCode::SyntaxError, "missing part count", 1);
  auto head = ints(l, r.line);
  if (head.size() != 1 || head[0] < 1) throw Error(ErrorCode::SyntaxError, "expected the number of parts", r.line);
  PartiteGraph g;
  for (std::int64_t i = 0; i < head[0]; ++i) {
    if (!r.next(l, '#')) throw Error(ErrorCode::SyntaxError, "missing part line", r.line);
    std::vector<Vertex> part;
    for (auto v : ints(l, r.line)) part.push_back(static_cast<Vertex>(v));
    g.parts.push_back(std::move(part));
  }
  while (r.next(l, '#')) {
    if (l[0] != 'e') throw Error(ErrorCode::SyntaxError, "expected 'e <u> <v>'", r.line);
    auto uv = ints(l, r.line, 1);
    if (uv.size() != 2) throw Error(ErrorCode::SyntaxError, "expected 'e <u> <v>'", r.line);
    g.edges.push_back(Edge::make(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1])));
  }
  return g;
}

Instance gen_from_mis(const PartiteGraph& g, bool sparse) {
  const int d = g.validate();
  const Vertex n = g.num_vertices();
  const int k = static_cast<int>(g.parts.size());
  std::vector<Edge> edges = g.edges;
  std::sort(edges.begin(), edges.end());
  std::vector<std::vector<Vertex>> incident(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].u].push_back(n + static_cast<Vertex>(i));
    incident[edges[i].v].push_back(n + static_cast<Vertex>(i));
  }
  const Vertex nv = n + static_cast<Vertex>(edges.size());
  std::vector<Snapshot> snaps(2 * k);
  for (int i = 1; i <= k; ++i) {
    const auto& part = g.parts[i - 1];
    std::vector<Vertex> merged = part;
    if (i > 1) merged.insert(merged.end(), g.parts[i - 2].begin(), g.parts[i - 2].end());
    add_component(snaps[2 * (i - 1)], merged, sparse);
    for (Vertex v : part) {
      std::vector<Vertex> star{v};
      star.insert(star.end(), incident[v].begin(), incident[v].end());
      add_component(snaps[2 * (i - 1) + 1], star, sparse);
    }
  }
  const Weight target = static_cast<Weight>(n) + static_cast<Weight>(k) * d;
  Vertex source = *std::min_element(g.parts[0].begin(), g.parts[0].end());
  return unit_instance(nv, std::move(snaps), source, target);
}

Instance compose_or(std::span<const Instance> instances) {
  const std::size_t l = instances.size();
  if (l == 0 || (l & (l - 1)) != 0) throw Error(ErrorCode::NotPowerOfTwo, "number of instances must be a power of two");
  int h = 0;
  while ((std::size_t{1} << h) < l) ++h;
  Weight k_max = 0;
  Time L_max = 0;
  for (const auto& in : instances) {
    k_max = std::max(k_max, in.k);
    L_max = std::max(L_max, in.lifetime());
  }
  const Vertex selectors = static_cast<Vertex>(2 * l - 1);
  std::vector<Weight> weights(selectors, 1);
  std::vector<Snapshot> snaps(L_max + h);
  for (int s = 1; s <= h; ++s)
    for (Vertex p = (1 << (s - 1)) - 1; p <= (1 << s) - 2; ++p) {
      snaps[s - 1].push_back({p, 2 * p + 1});
      snaps[s - 1].push_back({p, 2 * p + 2});
    }
  Vertex offset = selectors;
  for (std::size_t i = 0; i < l; ++i) {
    const Instance& in = instances[i];
    const Vertex pads = static_cast<Vertex>(k_max - in.k);
    if (k_max - in.k > 10'000'000) throw Error(ErrorCode::InvalidInput, "target padding too large");
    const Vertex src = offset + in.source;
    for (Vertex v = 0; v < in.num_vertices(); ++v) weights.push_back(in.weights[v]);
    for (Vertex p = 0; p < pads; ++p) weights.push_back(1);
    for (Time t = 1; t <= L_max; ++t) {
      Snapshot& s = snaps[h + t - 1];
      for (const Edge& e : in.graph.snapshot(std::min(t, in.lifetime()))) s.push_back({offset + e.u, offset + e.v});
      for (Vertex p = 0; p < pads; ++p) s.push_back(Edge::make(src, offset + in.num_vertices() + p));
    }
    const Vertex leaf = static_cast<Vertex>(l - 1 + i);
    snaps[h].push_back(Edge::make(leaf, src));
    offset += in.num_vertices() + pads;
  }
  return make_instance(TemporalGraph::build(offset, std::move(snaps)), std::move(weights), 0, k_max + 2 * h + 1);
}

Instance gen_random(const RandomParams& params) {
  const Vertex n = params.n;
  if (n < 1 || params.L < 1 || params.max_weight < 1 || params.edges_per_snapshot < 0)
    throw Error(ErrorCode::InvalidInput, "invalid random instance parameters");
  std::mt19937_64 rng(params.seed);
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  std::vector<Snapshot> snaps(params.L);
  boost::disjoint_sets_with_storage<> ds(n);
  for (auto& snap : snaps) {
    std::int64_t count = 0;
    if (params.edges_per_snapshot > 0) count = std::poisson_distribution<std::int64_t>(params.edges_per_snapshot)(rng);
    count = std::min(count, pairs);
    std::set<Edge> chosen;
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    while (static_cast<std::int64_t>(chosen.size()) < count) {
      Vertex a = pick(rng), b = pick(rng);
      if (a != b) chosen.insert(Edge::make(a, b));
    }
    for (const Edge& e : chosen) {
      snap.push_back(e);
      ds.union_set(e.u, e.v);
    }
  }
  // Join the pieces with a random recursive tree over a shuffled vertex order.
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<Time> when(1, params.L);
  for (Vertex i = 1; i < n; ++i) {
    Vertex v = perm[i];
    Vertex u = perm[std::uniform_int_distribution<Vertex>(0, i - 1)(rng)];
    if (ds.find_set(u) == ds.find_set(v)) continue;
    ds.union_set(u, v);
    snaps[when(rng) - 1].push_back(Edge::make(u, v));
  }
  std::vector<Weight> weights(n);
  std::uniform_int_distribution<Weight> wdist(1, params.max_weight);
  for (auto& w : weights) w = wdist(rng);
  const Vertex source = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
  Weight total = 0;
  for (Weight w : weights) total = checked_add(total, w);
  const Weight k = params.random_target ? std::uniform_int_distribution<Weight>(1, total)(rng) : total;
  return make_instance(TemporalGraph::build(n, std::move(snaps)), std::move(weights), source, k);
}

Instance gen_random_tree(Vertex n, Time L, Weight max_weight, std::uint64_t seed) {
  if (n < 1 || L < 1 || max_weight < 1) throw Error(ErrorCode::InvalidInput, "invalid random tree parameters");
  std::mt19937_64 rng(seed);
  std::vector<Snapshot> snaps(L);
  for (Vertex v = 1; v < n; ++v) {
    Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    snaps[std::uniform_int_distribution<Time>(1, L)(rng) - 1].push_back({u, v});
  }
  std::vector<Weight> weights(n);
  std::uniform_int_distribution<Weight> wdist(1, max_weight);
  for (auto& w : weights) w = wdist(rng);
  return make_instance(TemporalGraph::build(n, std::move(snaps)), std::move(weights), 0);
}

}  // namespace tgx
