#include <doctest.h>

#include <json.hpp>
#include <set>

#include "tgx/io.hpp"
#include "tgx/verify.hpp"

using namespace tgx;

TEST_CASE("suite names") {
  for (auto s : {VerifySuite::KernelP, VerifySuite::KernelQ, VerifySuite::TreeSolver, VerifySuite::Generators})
    CHECK(parse_suite(to_string(s)) == s);
  CHECK_THROWS_AS(parse_suite("kernel-x"), Error);
}

TEST_CASE("suite instances") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(trial_seed(1, i));
  CHECK(seeds.size() == 1000);
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));

  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Instance inst = random_suite_instance(seed, 12, 8, 10);
    CHECK(inst == random_suite_instance(seed, 12, 8, 10));
    CHECK(inst.num_vertices() <= 12);
    CHECK(inst.lifetime() <= 8);
    CHECK(inst.graph.underlying().is_connected());
    CHECK(*std::max_element(inst.weights.begin(), inst.weights.end()) <= 10);
    CHECK(inst.k >= 1);
  }
}

TEST_CASE("every suite passes and reports parseable JSON") {
  for (auto s : {VerifySuite::KernelP, VerifySuite::KernelQ, VerifySuite::TreeSolver, VerifySuite::Generators}) {
    VerifyOptions o;
    o.suite = s;
    o.trials = 150;
    o.seed = 7;
    VerifyReport r = run_verify(o);
    CHECK(r.ok());
    CHECK(r.agreements == 150);
    CHECK(r.p_increases == 0);
    CHECK(r.bound_violations == 0);
    CHECK(r.structure_violations == 0);
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["suite"] == to_string(s));
    CHECK(j["trials"] == 150);
    CHECK(j["agreements"] == 150);
    CHECK(j["counterexample"].is_null());
    if (s == VerifySuite::KernelP) {
      CHECK(r.rule_applications > 0);
      CHECK(r.max_n_ratio <= 324);
      CHECK(r.max_p0_vertices <= 8);
    }
  }
}

TEST_CASE("reports do not depend on the thread count") {
  VerifyOptions o;
  o.trials = 200;
  o.seed = 3;
  const std::string one = run_verify(o).to_json();
  o.threads = 3;
  CHECK(run_verify(o).to_json() == one);
}

TEST_CASE("an injected fault yields a re-parseable counterexample") {
  VerifyOptions o;
  o.trials = 300;
  o.fault = Fault::DropLastSnapshot;
  VerifyReport r = run_verify(o);
  CHECK_FALSE(r.ok());
  REQUIRE(r.counterexample);
  CHECK(r.agreements < r.trials);
  CHECK(r.counterexample->expected != r.counterexample->actual);
  Instance bad = parse_instance(r.counterexample->instance);
  CHECK(bad == random_suite_instance(trial_seed(o.seed, r.counterexample->trial), o.max_n, o.max_L, o.max_weight));
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["counterexample"]["trial"] == r.counterexample->trial);

  o.threads = 4;
  VerifyReport parallel = run_verify(o);
  REQUIRE(parallel.counterexample);
  CHECK(parallel.counterexample->trial == r.counterexample->trial);
}
