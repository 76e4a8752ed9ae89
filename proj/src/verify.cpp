#include "tgx/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <json.hpp>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "tgx/decomposition.hpp"
#include "tgx/generators.hpp"
#include "tgx/io.hpp"

namespace tgx {

namespace {

struct TrialResult {
  std::optional<Counterexample> failure;
  std::map<std::string, std::uint64_t> rules;
  std::uint64_t applications = 0, p_increases = 0, bound_violations = 0, structure_violations = 0;
  double n_ratio = 0, m_ratio = 0, L_ratio = 0;
  std::int64_t p0_vertices = 0;
  std::optional<Instance> current;  // instance under test, reported if a solver throws

  void fail(std::uint64_t trial, const Instance& inst, std::string expected, std::string actual, std::string detail) {
    if (failure) return;
    failure = Counterexample{trial, serialize_instance(inst), std::move(expected), std::move(actual), std::move(detail)};
  }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

bool decide(const Instance& inst, const SolverLimits& limits) {
  if (inst.num_vertices() <= limits.max_oracle_vertices) return solve_oracle(inst, limits).max_weight >= inst.k;
  return solve_search_tree(inst, limits).max_weight >= inst.k;
}

void record_kernel(TrialResult& r, std::uint64_t trial, const Instance& inst, const KernelResult& kr) {
  for (const auto& app : kr.trace.applications) {
    ++r.rules[to_string(app.rule)];
    ++r.applications;
    if (app.after.p > app.before.p) {
      ++r.p_increases;
      r.fail(trial, inst, "p non-increasing", "p increased", std::string("rule ") + to_string(app.rule) + " at " + app.locus);
    }
  }
}

void trial_kernel_p(TrialResult& r, std::uint64_t trial, std::uint64_t seed, const VerifyOptions& o) {
  Instance inst = random_suite_instance(seed, o.max_n, o.max_L, o.max_weight);
  r.current = inst;
  const bool expected = decide(inst, o.limits);
  try {
    decompose(inst);
  } catch (const Error& e) {
    ++r.structure_violations;
    r.fail(trial, inst, "structural bounds hold", to_string(e.code()), e.what());
  }
  KernelOptions ko;
  ko.fault = o.fault;
  KernelResult kr;
  try {
    kr = kernelize(inst, ko);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BoundViolation) ++r.bound_violations;
    r.fail(trial, inst, yes_no(expected), to_string(e.code()), e.what());
    return;
  }
  record_kernel(r, trial, inst, kr);
  const auto& out = kr.output;
  if (out.p >= 1) {
    r.n_ratio = static_cast<double>(out.n) / out.p;
    r.m_ratio = static_cast<double>(out.m) / out.p;
    r.L_ratio = static_cast<double>(out.L) / out.p;
  } else {
    r.p0_vertices = out.n;
  }
  const bool actual = decide(kr.instance, o.limits);
  if (actual != expected) r.fail(trial, inst, yes_no(expected), yes_no(actual), "kernel answer differs from the input answer");
}

void trial_kernel_q(TrialResult& r, std::uint64_t trial, std::uint64_t seed, const VerifyOptions& o) {
  Instance inst = random_suite_instance(seed, o.max_n, o.max_L, o.max_weight);
  r.current = inst;
  const bool expected = decide(inst, o.limits);
  const std::int64_t q = stats(inst.graph).q;
  KernelOptions ko;
  ko.fault = o.fault;
  KernelResult kr;
  try {
    kr = kernelize_q(inst, ko);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BoundViolation) ++r.bound_violations;
    r.fail(trial, inst, yes_no(expected), to_string(e.code()), e.what());
    return;
  }
  record_kernel(r, trial, inst, kr);
  if (!is_trivial_instance(kr.instance) && (kr.instance.num_vertices() > q + 1 || kr.instance.lifetime() > q)) {
    ++r.bound_violations;
    r.fail(trial, inst, "|V| <= q + 1 and L <= q", "bound exceeded", "q = " + std::to_string(q));
  }
  const bool actual = decide(kr.instance, o.limits);
  if (actual != expected) r.fail(trial, inst, yes_no(expected), yes_no(actual), "q-kernel answer differs from the input answer");
}

// Maximum weight of a monotone walk from x ending at each vertex, by exhaustive search over (vertex, visited set).
std::vector<std::optional<Weight>> walk_enumeration(const Instance& inst, Vertex x) {
  const Vertex n = inst.num_vertices();
  const auto& g = inst.graph.underlying();
  const std::size_t masks = std::size_t{1} << n;
  constexpr Time unreached = std::numeric_limits<Time>::max();
  std::vector<Time> best(masks * n, unreached);
  std::vector<std::pair<Vertex, std::uint32_t>> work;
  best[(std::size_t{1} << x) * n + x] = 1;
  work.push_back({x, 1u << x});
  while (!work.empty()) {
    auto [v, mask] = work.back();
    work.pop_back();
    const Time now = best[std::size_t{mask} * n + v];
    for (const Arc& a : g.neighbors(v)) {
      const auto& times = g.appearances(a.edge);
      auto it = std::lower_bound(times.begin(), times.end(), now);
      if (it == times.end()) continue;
      const std::uint32_t next = mask | (1u << a.to);
      Time& slot = best[std::size_t{next} * n + a.to];
      if (*it < slot) {
        slot = *it;
        work.push_back({a.to, next});
      }
    }
  }
  std::vector<std::optional<Weight>> out(n);
  for (std::size_t mask = 1; mask < masks; ++mask)
    for (Vertex v = 0; v < n; ++v) {
      if (best[mask * n + v] == unreached) continue;
      Weight w = 0;
      for (Vertex u = 0; u < n; ++u)
        if (mask >> u & 1) w += inst.weights[u];
      if (!out[v] || *out[v] < w) out[v] = w;
    }
  return out;
}

std::string opt_str(const std::optional<Weight>& w) { return w ? std::to_string(*w) : "none"; }

void trial_tree(TrialResult& r, std::uint64_t trial, std::uint64_t seed, const VerifyOptions& o) {
  std::mt19937_64 rng(seed);
  const Vertex n = std::uniform_int_distribution<Vertex>(1, std::clamp<Vertex>(o.max_n, 1, 9))(rng);
  const Time L = std::uniform_int_distribution<Time>(1, std::max<Time>(o.max_L, 1))(rng);
  Instance inst = gen_random_tree(n, L, o.max_weight, rng());
  r.current = inst;
  const TemporalTree tree = TemporalTree::from_graph(inst.graph);
  for (Vertex x = 0; x < n; ++x) {
    auto truth = walk_enumeration(inst, x);
    for (Vertex y = 0; y < n; ++y) {
      auto got = solve_tree(tree, inst.weights, x, y);
      if (got != truth[y]) {
        r.fail(trial, inst, opt_str(truth[y]), opt_str(got),
               "solve_tree(" + std::to_string(x) + ", " + std::to_string(y) + ")");
        return;
      }
    }
    TreeWalkBest best = best_tree_walk_from(tree, inst.weights, x);
    Weight top = 0;
    Vertex end = 0;
    for (Vertex y = n - 1; y >= 0; --y)
      if (truth[y] && *truth[y] >= top) top = *truth[y], end = y;
    if (best.weight != top || best.end != end)
      r.fail(trial, inst, std::to_string(top) + " at " + std::to_string(end),
             std::to_string(best.weight) + " at " + std::to_string(best.end), "best_tree_walk_from(" + std::to_string(x) + ")");
  }
}

bool satisfiable(const CnfFormula& phi) {
  for (std::uint32_t a = 0; a < (1u << phi.num_vars); ++a) {
    bool all = std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const auto& c) {
      return std::any_of(c.begin(), c.end(), [&](int l) { return ((a >> (std::abs(l) - 1)) & 1) == (l > 0 ? 1u : 0u); });
    });
    if (all) return true;
  }
  return false;
}

bool hitting_set_exists(const HittingSetInput& in) {
  for (std::uint32_t a = 0; a < (1u << in.universe); ++a) {
    if (std::popcount(a) > in.budget) continue;
    bool all = std::all_of(in.sets.begin(), in.sets.end(), [&](const auto& s) {
      return std::any_of(s.begin(), s.end(), [&](int x) { return (a >> (x - 1)) & 1; });
    });
    if (all) return true;
  }
  return false;
}

bool multicolored_independent_set(const PartiteGraph& g) {
  std::vector<std::size_t> pick(g.parts.size(), 0);
  std::set<Edge> edges(g.edges.begin(), g.edges.end());
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < pick.size() && ok; ++i)
      for (std::size_t j = i + 1; j < pick.size() && ok; ++j)
        if (edges.count(Edge::make(g.parts[i][pick[i]], g.parts[j][pick[j]]))) ok = false;
    if (ok) return true;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == g.parts[i].size()) pick[i++] = 0;
    if (i == pick.size()) return false;
  }
}

CnfFormula random_cnf(std::mt19937_64& rng, int max_vars, int max_clauses, bool monotone, int max_width) {
  CnfFormula phi;
  phi.num_vars = std::uniform_int_distribution<int>(1, max_vars)(rng);
  const int m = std::uniform_int_distribution<int>(1, max_clauses)(rng);
  for (int j = 0; j < m; ++j) {
    std::vector<int> vars(phi.num_vars);
    std::iota(vars.begin(), vars.end(), 1);
    std::shuffle(vars.begin(), vars.end(), rng);
    const int width = std::uniform_int_distribution<int>(1, std::min(max_width, phi.num_vars))(rng);
    const bool positive = rng() & 1;
    std::vector<int> clause;
    for (int i = 0; i < width; ++i) clause.push_back((monotone ? positive : (rng() & 1)) ? vars[i] : -vars[i]);
    std::sort(clause.begin(), clause.end());
    phi.clauses.push_back(clause);
  }
  return phi;
}

PartiteGraph random_regular_partite(std::mt19937_64& rng) {
  PartiteGraph g;
  const int k = std::uniform_int_distribution<int>(2, 3)(rng);
  Vertex next = 0;
  for (int i = 0; i < k; ++i) {
    g.parts.emplace_back();
    for (int s = std::uniform_int_distribution<int>(1, 2)(rng); s > 0; --s) g.parts.back().push_back(next++);
  }
  std::vector<int> part_of(next);
  for (int i = 0; i < k; ++i)
    for (Vertex v : g.parts[i]) part_of[v] = i;
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < next; ++u)
    for (Vertex v = u + 1; v < next; ++v)
      if (part_of[u] != part_of[v]) pairs.push_back({u, v});
  std::vector<std::uint32_t> regular;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<int> deg(next, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) ++deg[pairs[i].u], ++deg[pairs[i].v];
    if (std::all_of(deg.begin(), deg.end(), [&](int d) { return d == deg[0]; })) regular.push_back(mask);
  }
  const std::uint32_t mask = regular[std::uniform_int_distribution<std::size_t>(0, regular.size() - 1)(rng)];
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (mask >> i & 1) g.edges.push_back(pairs[i]);
  return g;
}

void trial_generators(TrialResult& r, std::uint64_t trial, std::uint64_t seed, const VerifyOptions& o) {
  std::mt19937_64 rng(seed);
  const bool sparse = rng() & 1;
  switch (trial % 5) {
    case 0: {
      CnfFormula phi = random_cnf(rng, 3, 4, false, 3);
      Instance inst = gen_from_sat(phi, sparse);
      r.current = inst;
      const bool expected = satisfiable(phi);
      const bool actual = solve_full_exploration(inst, o.limits).explorable;
      if (expected != actual) r.fail(trial, inst, yes_no(expected), yes_no(actual), "SAT construction");
      if (stats(inst.graph).gamma > 5) r.fail(trial, inst, "gamma <= 5", "gamma > 5", "SAT construction");
      if (inst.lifetime() != 2 * phi.num_vars + 1) r.fail(trial, inst, "L = 2n + 1", "other", "SAT construction");
      break;
    }
    case 1: {
      CnfFormula phi = random_cnf(rng, 4, 4, true, 3);
      Instance inst = gen_two_stars(phi);
      r.current = inst;
      const bool expected = satisfiable(phi);
      const bool actual = solve_full_exploration(inst, o.limits).explorable;
      if (expected != actual) r.fail(trial, inst, yes_no(expected), yes_no(actual), "two-star construction");
      const auto& g = inst.graph.underlying();
      bool shape = inst.lifetime() == 2 * phi.num_vars && g.find_edge({0, 1}).has_value();
      for (const Edge& e : g.edges()) shape = shape && (e.u <= 1) && (e.v <= 1 || g.degree(e.v) == 1);
      if (!shape) r.fail(trial, inst, "two stars plus a bridge, L = 2n", "other", "two-star construction");
      break;
    }
    case 2: {
      HittingSetInput in;
      in.universe = std::uniform_int_distribution<int>(1, 3)(rng);
      in.budget = std::uniform_int_distribution<int>(1, 2)(rng);
      for (int s = std::uniform_int_distribution<int>(1, 3)(rng); s > 0; --s) {
        std::vector<int> set;
        while (set.empty())
          for (int x = 1; x <= in.universe; ++x)
            if (rng() & 1) set.push_back(x);
        in.sets.push_back(set);
      }
      Instance inst = gen_from_hitting_set(in, sparse);
      r.current = inst;
      const bool expected = hitting_set_exists(in);
      const bool actual = solve_full_exploration(inst, o.limits).explorable;
      if (expected != actual) r.fail(trial, inst, yes_no(expected), yes_no(actual), "hitting set construction");
      if (inst.lifetime() != in.budget * (in.universe + 1) + 1 || stats(inst.graph).gamma > 6)
        r.fail(trial, inst, "L = k(n+1)+1, gamma <= 6", "other", "hitting set construction");
      break;
    }
    case 3: {
      PartiteGraph pg = random_regular_partite(rng);
      Instance inst = gen_from_mis(pg, sparse);
      r.current = inst;
      const bool expected = multicolored_independent_set(pg);
      const bool actual = decide(inst, o.limits);
      if (expected != actual) r.fail(trial, inst, yes_no(expected), yes_no(actual), "independent set construction");
      const Weight target = pg.num_vertices() + static_cast<Weight>(pg.parts.size()) * pg.validate();
      if (inst.k != target || inst.lifetime() != 2 * static_cast<Time>(pg.parts.size()))
        r.fail(trial, inst, "k' = |V| + kd, L = 2k", "other", "independent set construction");
      break;
    }
    default: {
      Instance a = random_suite_instance(rng(), 5, 3, 1), b = random_suite_instance(rng(), 5, 3, 1);
      Instance both[] = {a, b};
      Instance inst = compose_or(both);
      r.current = inst;
      const bool expected = decide(a, o.limits) || decide(b, o.limits);
      const bool actual = decide(inst, o.limits);
      if (expected != actual) r.fail(trial, inst, yes_no(expected), yes_no(actual), "OR-composition");
      if (inst.lifetime() != std::max(a.lifetime(), b.lifetime()) + 1 || inst.k != std::max(a.k, b.k) + 3)
        r.fail(trial, inst, "L = L' + 1, k = k' + 3", "other", "OR-composition");
      break;
    }
  }
}

TrialResult run_trial(std::uint64_t trial, const VerifyOptions& o) {
  const std::uint64_t seed = trial_seed(o.seed, trial);
  TrialResult r;
  try {
    switch (o.suite) {
      case VerifySuite::KernelP: trial_kernel_p(r, trial, seed, o); break;
      case VerifySuite::KernelQ: trial_kernel_q(r, trial, seed, o); break;
      case VerifySuite::TreeSolver: trial_tree(r, trial, seed, o); break;
      case VerifySuite::Generators: trial_generators(r, trial, seed, o); break;
    }
  } catch (const Error& e) {
    if (!r.failure)
      r.failure = Counterexample{trial, r.current ? serialize_instance(*r.current) : "", "an answer", to_string(e.code()), e.what()};
  }
  r.current.reset();
  return r;
}

}  // namespace

const char* to_string(VerifySuite suite) {
  switch (suite) {
    case VerifySuite::KernelP: return "kernel-p";
    case VerifySuite::KernelQ: return "kernel-q";
    case VerifySuite::TreeSolver: return "tree-solver";
    case VerifySuite::Generators: return "generators";
  }
  return "unknown";
}

VerifySuite parse_suite(const std::string& name) {
  for (auto s : {VerifySuite::KernelP, VerifySuite::KernelQ, VerifySuite::TreeSolver, VerifySuite::Generators})
    if (name == to_string(s)) return s;
  throw Error(ErrorCode::InvalidInput, "unknown suite '" + name + "'");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + trial + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Instance random_suite_instance(std::uint64_t seed, Vertex max_n, Time max_L, Weight max_weight) {
  std::mt19937_64 rng(seed);
  RandomParams p;
  p.n = std::uniform_int_distribution<Vertex>(1, std::max<Vertex>(max_n, 1))(rng);
  p.L = std::uniform_int_distribution<Time>(1, std::max<Time>(max_L, 1))(rng);
  p.edges_per_snapshot = std::uniform_real_distribution<double>(0.0, 2.5)(rng);
  p.max_weight = std::max<Weight>(max_weight, 1);
  p.seed = rng();
  p.random_target = true;
  return gen_random(p);
}

VerifyReport run_verify(const VerifyOptions& o) {
  std::vector<TrialResult> results(o.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < o.trials;) results[i] = run_trial(i, o);
  };
  const unsigned threads = std::max(1u, o.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  VerifyReport rep;
  rep.suite = to_string(o.suite);
  rep.seed = o.seed;
  rep.trials = o.trials;
  for (auto& r : results) {
    if (r.failure) {
      if (!rep.counterexample) rep.counterexample = std::move(r.failure);
    } else {
      ++rep.agreements;
    }
    for (auto& [rule, c] : r.rules) rep.rule_counts[rule] += c;
    rep.rule_applications += r.applications;
    rep.p_increases += r.p_increases;
    rep.bound_violations += r.bound_violations;
    rep.structure_violations += r.structure_violations;
    rep.max_n_ratio = std::max(rep.max_n_ratio, r.n_ratio);
    rep.max_m_ratio = std::max(rep.max_m_ratio, r.m_ratio);
    rep.max_L_ratio = std::max(rep.max_L_ratio, r.L_ratio);
    rep.max_p0_vertices = std::max(rep.max_p0_vertices, r.p0_vertices);
  }
  return rep;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j = {{"suite", suite},
                      {"seed", seed},
                      {"trials", trials},
                      {"agreements", agreements},
                      {"rule_counts", rule_counts},
                      {"rule_applications", rule_applications},
                      {"p_increases", p_increases},
                      {"bound_violations", bound_violations},
                      {"structure_violations", structure_violations},
                      {"max_ratios", {{"n_over_p", max_n_ratio}, {"m_over_p", max_m_ratio}, {"L_over_p", max_L_ratio}}},
                      {"max_p0_vertices", max_p0_vertices}};
  if (counterexample) {
    j["counterexample"] = {{"trial", counterexample->trial},
                           {"instance", counterexample->instance},
                           {"expected", counterexample->expected},
                           {"actual", counterexample->actual},
                           {"detail", counterexample->detail}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace tgx
