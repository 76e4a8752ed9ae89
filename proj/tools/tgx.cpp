#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "tgx/generators.hpp"
#include "tgx/io.hpp"
#include "tgx/kernelizer.hpp"
#include "tgx/solvers.hpp"
#include "tgx/verify.hpp"

using namespace tgx;

namespace {

enum Exit { Ok = 0, FoundCounterexample = 1, ParseError = 2, BudgetExceeded = 3, Internal = 4 };

// Errors raised while reading input map to exit 2.
struct InputError {
  Error error;
};

Instance load(const std::string& path) {
  try {
    return read_instance_file(path);
  } catch (const Error& e) {
    throw InputError{e};
  }
}

std::string load_text(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const Error& e) {
    throw InputError{e};
  }
}

template <class F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SyntaxError) throw InputError{e};
    throw;
  }
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

nlohmann::json certificate_json(const ComponentSequence& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& comp : c.components) arr.push_back(comp);
  return arr;
}

void print_certificate(const ComponentSequence& c) {
  for (std::size_t t = 0; t < c.components.size(); ++t) {
    std::cout << "t " << t + 1 << ":";
    for (Vertex v : c.components[t]) std::cout << ' ' << v;
    std::cout << '\n';
  }
}

nlohmann::json graph_stats_json(const GraphStats& s) { return {{"n", s.n}, {"m", s.m}, {"L", s.L}, {"p", s.p}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal graph exploration: solvers, kernelization and instance generators"};
  app.require_subcommand(1);

  std::string file, method = "oracle", out, trace_out, param = "p";
  bool json = false, certificate = false, no_weight_reduction = false;

  auto* solve = app.add_subcommand("solve", "Decide an instance and print 'yes|no <max weight>'");
  solve->add_option("file", file, "Instance file (tg format)")->required();
  solve->add_option("-m,--method", method, "Solver")
      ->check(CLI::IsMember({"oracle", "search-tree", "full", "via-kernel"}));
  solve->add_flag("-c,--certificate", certificate, "Print an optimal component sequence");
  solve->add_flag("--json", json, "JSON output");

  auto* kern = app.add_subcommand("kernelize", "Kernelize an instance");
  kern->add_option("file", file, "Instance file (tg format)")->required();
  kern->add_option("--param", param, "Parameter")->check(CLI::IsMember({"p", "q"}));
  kern->add_flag("--no-weight-reduction", no_weight_reduction, "Skip the weight reduction");
  kern->add_option("-o,--output", out, "Kernel output file (default: stdout)");
  kern->add_option("--trace", trace_out, "JSON-lines trace file (default: <output>.trace.jsonl)");
  kern->add_flag("--json", json, "Print statistics as JSON");

  auto* gen = app.add_subcommand("generate", "Generate an instance");
  gen->require_subcommand(1);
  bool sparse = false;
  std::vector<std::string> inputs;
  RandomParams rp;
  gen->add_option("-o,--output", out, "Output file (default: stdout)");
  gen->add_flag("--sparse", sparse, "Realize components as stars instead of cliques");
  auto* g_sat = gen->add_subcommand("sat", "From a DIMACS CNF formula");
  auto* g_two = gen->add_subcommand("two-stars", "From a monotone 3-CNF formula (DIMACS)");
  auto* g_hs = gen->add_subcommand("hitting-set", "From a hitting set instance");
  auto* g_mis = gen->add_subcommand("mis", "From a regular multicolored independent set instance");
  auto* g_or = gen->add_subcommand("compose", "OR-composition of 2^x tg instances");
  auto* g_rand = gen->add_subcommand("random", "Seeded random connected instance");
  auto* g_tree = gen->add_subcommand("tree", "Seeded random temporal tree");
  for (auto* s : {g_sat, g_two, g_hs, g_mis}) s->add_option("file", file, "Input file")->required();
  g_or->add_option("files", inputs, "Instance files")->required();
  for (auto* s : {g_rand, g_tree}) {
    s->add_option("--n", rp.n, "Vertices")->check(CLI::PositiveNumber);
    s->add_option("--L", rp.L, "Lifetime")->check(CLI::PositiveNumber);
    s->add_option("--max-weight", rp.max_weight, "Largest vertex weight")->check(CLI::PositiveNumber);
    s->add_option("--seed", rp.seed, "Seed");
  }
  g_rand->add_option("--density", rp.edges_per_snapshot, "Mean random edges per snapshot (Poisson)")
      ->check(CLI::NonNegativeNumber);
  g_rand->add_flag("--random-target", rp.random_target, "Draw k uniformly from [1, total weight]");

  auto* ver = app.add_subcommand("verify", "Differential testing suites");
  VerifyOptions vo;
  std::string suite = "kernel-p", fault = "none";
  ver->add_option("--suite", suite, "Suite")->check(CLI::IsMember({"kernel-p", "kernel-q", "tree-solver", "generators"}));
  ver->add_option("--trials", vo.trials, "Number of trials");
  ver->add_option("--seed", vo.seed, "Seed");
  ver->add_option("--max-n", vo.max_n, "Largest random instance")->check(CLI::Range(1, 20));
  ver->add_option("--max-L", vo.max_L, "Largest random lifetime")->check(CLI::PositiveNumber);
  ver->add_option("--max-weight", vo.max_weight, "Largest random weight")->check(CLI::PositiveNumber);
  ver->add_option("--threads", vo.threads, "Worker threads");
  ver->add_option("--fault", fault, "Inject a rule fault (harness self-test)")
      ->check(CLI::IsMember({"none", "drop-last-snapshot"}));

  auto* st = app.add_subcommand("stats", "Print instance statistics");
  st->add_option("file", file, "Instance file (tg format)")->required();
  st->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : ParseError;
  }

  try {
    const SolverLimits limits = limits_from_env();

    if (*solve) {
      Instance inst = load(file);
      nlohmann::json j = {{"method", method}, {"k", inst.k}};
      std::optional<ComponentSequence> cert;
      bool yes = false;
      std::optional<Weight> value;
      if (method == "oracle" || method == "search-tree") {
        OptimalExploration r = method == "oracle" ? solve_oracle(inst, limits) : solve_search_tree(inst, limits);
        yes = r.max_weight >= inst.k;
        value = r.max_weight;
        cert = std::move(r.certificate);
      } else if (method == "full") {
        FullExploration r = solve_full_exploration(inst, limits);
        yes = r.explorable;
        j["visited"] = r.visited;
        cert = std::move(r.certificate);
      } else {
        yes = solve_via_kernel(inst, limits);
      }
      if (json) {
        j["answer"] = yes ? "yes" : "no";
        if (value) j["max_weight"] = *value;
        if (certificate && cert) j["certificate"] = certificate_json(*cert);
        std::cout << j.dump() << '\n';
      } else {
        std::cout << (yes ? "yes" : "no");
        if (value) std::cout << ' ' << *value;
        std::cout << '\n';
        if (certificate && cert) print_certificate(*cert);
      }
      return Ok;
    }

    if (*kern) {
      Instance inst = load(file);
      Restriction restricted = restrict_to_source_component(inst);
      KernelOptions ko;
      ko.weight_reduction = !no_weight_reduction;
      KernelResult kr = param == "p" ? kernelize(restricted.instance, ko) : kernelize_q(restricted.instance, ko);
      emit(out, serialize_instance(kr.instance));
      if (trace_out.empty() && !out.empty() && out != "-") trace_out = out + ".trace.jsonl";
      if (!trace_out.empty()) write_text_file(trace_out, kr.trace.to_json_lines());
      std::ostream& info = (out.empty() || out == "-") ? std::cerr : std::cout;
      if (json) {
        nlohmann::json j = {{"param", param},
                            {"before", graph_stats_json(kr.input)},
                            {"after", graph_stats_json(kr.output)},
                            {"applications", kr.trace.applications.size()},
                            {"weights_within_bound", kr.weights_within_bound}};
        info << j.dump() << '\n';
      } else {
        info << "before: n=" << kr.input.n << " m=" << kr.input.m << " L=" << kr.input.L << " p=" << kr.input.p << '\n'
             << "after:  n=" << kr.output.n << " m=" << kr.output.m << " L=" << kr.output.L << " p=" << kr.output.p
             << '\n'
             << "rule applications: " << kr.trace.applications.size() << '\n';
      }
      return Ok;
    }

    if (*gen) {
      Instance inst;
      if (*g_sat || *g_two) {
        std::string text = load_text(file);
        CnfFormula phi = parsing([&] { return parse_dimacs(text); });
        inst = *g_sat ? gen_from_sat(phi, sparse) : gen_two_stars(phi);
      } else if (*g_hs) {
        std::string text = load_text(file);
        inst = gen_from_hitting_set(parsing([&] { return parse_hitting_set(text); }), sparse);
      } else if (*g_mis) {
        std::string text = load_text(file);
        inst = gen_from_mis(parsing([&] { return parse_partite_graph(text); }), sparse);
      } else if (*g_or) {
        std::vector<Instance> parts;
        for (const auto& f : inputs) parts.push_back(load(f));
        inst = compose_or(parts);
      } else if (*g_rand) {
        inst = gen_random(rp);
      } else {
        inst = gen_random_tree(rp.n, rp.L, rp.max_weight, rp.seed);
      }
      emit(out, serialize_instance(inst));
      return Ok;
    }

    if (*ver) {
      vo.suite = parse_suite(suite);
      vo.fault = fault == "drop-last-snapshot" ? Fault::DropLastSnapshot : Fault::None;
      vo.limits = limits;
      VerifyReport rep = run_verify(vo);
      std::cout << rep.to_json() << '\n';
      return rep.ok() ? Ok : FoundCounterexample;
    }

    if (*st) {
      Instance inst = load(file);
      Stats s = stats(inst.graph);
      if (json) {
        std::cout << stats_json(s) << '\n';
      } else {
        std::cout << "n " << s.n << "\nL " << s.L << "\nappearances " << s.appearances << "\nunderlying_edges "
                  << s.underlying_edges << "\np " << s.p << "\nq " << s.q << "\ngamma " << s.gamma << '\n';
      }
      return Ok;
    }
  } catch (const InputError& e) {
    std::cerr << "tgx: " << to_string(e.error.code()) << ": " << e.error.what() << '\n';
    return ParseError;
  } catch (const Error& e) {
    std::cerr << "tgx: " << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::BudgetExceeded:
      case ErrorCode::InstanceTooLargeForOracle: return BudgetExceeded;
      case ErrorCode::InvalidInput:
      case ErrorCode::EmptyFormula:
      case ErrorCode::NotMonotone:
      case ErrorCode::ClauseTooWide:
      case ErrorCode::NotRegular:
      case ErrorCode::NotPowerOfTwo: return ParseError;
      default: break;
    }
    return Internal;
  } catch (const std::exception& e) {
    std::cerr << "tgx: " << e.what() << '\n';
    return Internal;
  }
  return Ok;
}
