#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "tgx/kernelizer.hpp"
#include "tgx/solvers.hpp"

namespace tgx {

enum class VerifySuite { KernelP, KernelQ, TreeSolver, Generators };

const char* to_string(VerifySuite suite);
VerifySuite parse_suite(const std::string& name);

struct VerifyOptions {
  VerifySuite suite = VerifySuite::KernelP;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  Vertex max_n = 12;
  Time max_L = 8;
  Weight max_weight = 10;
  unsigned threads = 1;
  Fault fault = Fault::None;
  SolverLimits limits;
};

struct Counterexample {
  std::uint64_t trial = 0;
  std::string instance;  // tg text
  std::string expected;
  std::string actual;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t agreements = 0;
  std::optional<Counterexample> counterexample;  // first failing trial
  std::map<std::string, std::uint64_t> rule_counts;
  std::uint64_t rule_applications = 0;
  std::uint64_t p_increases = 0;
  std::uint64_t bound_violations = 0;
  std::uint64_t structure_violations = 0;
  // Largest kernel n/p, m/p and L/p seen over instances with p >= 1; largest n for p = 0.
  double max_n_ratio = 0, max_m_ratio = 0, max_L_ratio = 0;
  std::int64_t max_p0_vertices = 0;

  bool ok() const { return !counterexample && agreements == trials; }
  std::string to_json() const;
};

// Seed of trial i; trials are independent of the thread count.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Connected random instance with n <= max_n, L <= max_L, weights <= max_weight and a random target.
Instance random_suite_instance(std::uint64_t seed, Vertex max_n, Time max_L, Weight max_weight);

VerifyReport run_verify(const VerifyOptions& options);

}  // namespace tgx
