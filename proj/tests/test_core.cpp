#include <doctest.h>

#include <random>

#include "support/brute_force.hpp"
#include "tgx/generators.hpp"
#include "tgx/io.hpp"
#include "tgx/solvers.hpp"
#include "tgx/verify.hpp"

using namespace tgx;

namespace {

using Snaps = std::vector<std::vector<std::pair<Vertex, Vertex>>>;

Instance path_forward() { return build_instance(3, Snaps{{{0, 1}}, {{1, 2}}}, std::nullopt, 0); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InternalError;
}

}  // namespace

TEST_CASE("build_instance defaults and validation") {
  Instance single = build_instance(1, Snaps(1), std::nullopt, 0);
  CHECK(single.k == 1);
  CHECK(single.lifetime() == 1);

  Instance p = path_forward();
  CHECK(p.graph.total_appearances() == 2);
  CHECK(p.k == 3);

  CHECK(code_of([] { build_instance(2, Snaps{{{0, 0}}}, std::nullopt, 0); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { build_instance(2, Snaps{{{0, 2}}}, std::nullopt, 0); }) == ErrorCode::InvalidVertex);
  CHECK(code_of([] { build_instance(2, Snaps{{{0, 1}, {1, 0}}}, std::nullopt, 0); }) ==
        ErrorCode::DuplicateEdgeInSnapshot);
  CHECK(code_of([] { build_instance(2, Snaps{{{0, 1}}}, std::vector<Weight>{1, 0}, 0); }) ==
        ErrorCode::NonPositiveWeight);
  CHECK(code_of([] { build_instance(2, Snaps{}, std::nullopt, 0); }) == ErrorCode::InvalidLifetime);
  CHECK(code_of([] { build_instance(2, Snaps{{{0, 1}}}, std::nullopt, 0, 0); }) == ErrorCode::NonPositiveTarget);
}

TEST_CASE("stats") {
  Stats s = stats(path_forward().graph);
  CHECK(s.appearances == 2);
  CHECK(s.p == 0);
  CHECK(s.q == 2);
  CHECK(s.gamma == 2);

  Stats tri = stats(build_instance(3, Snaps{{{0, 1}}, {{1, 2}}, {{0, 2}}}, std::nullopt, 0).graph);
  CHECK(tri.appearances == 3);
  CHECK(tri.p == 1);
  CHECK(tri.q == 6);

  CHECK(stats(build_instance(3, Snaps(1), std::nullopt, 0).graph).gamma == 3);
}

TEST_CASE("connected components") {
  Instance a = build_instance(3, Snaps{{{0, 1}}}, std::nullopt, 0);
  CHECK(connected_components(a.graph, 1) == std::vector<std::vector<Vertex>>{{0, 1}, {2}});
  Instance b = build_instance(2, Snaps(1), std::nullopt, 0);
  CHECK(connected_components(b.graph, 1) == std::vector<std::vector<Vertex>>{{0}, {1}});
  Instance c = build_instance(4, Snaps{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}, std::nullopt, 0);
  CHECK(connected_components(c.graph, 1) == std::vector<std::vector<Vertex>>{{0, 1, 2, 3}});
  CHECK(code_of([&] { connected_components(c.graph, 2); }) == ErrorCode::TimeStepOutOfRange);
  CHECK(code_of([&] { connected_components(c.graph, 0); }) == ErrorCode::TimeStepOutOfRange);
}

TEST_CASE("restrict to the source component") {
  Instance p = path_forward();
  Restriction same = restrict_to_source_component(p);
  CHECK(same.instance == p);
  CHECK(same.new_to_old == std::vector<Vertex>{0, 1, 2});

  Instance two = build_instance(4, Snaps{{{0, 1}, {2, 3}}}, std::vector<Weight>{1, 2, 3, 4}, 3, 5);
  Restriction r = restrict_to_source_component(two);
  CHECK(r.instance.num_vertices() == 2);
  CHECK(r.new_to_old == std::vector<Vertex>{2, 3});
  CHECK(r.instance.source == 1);
  CHECK(r.instance.weights == std::vector<Weight>{3, 4});
  CHECK(r.instance.k == 5);

  Instance isolated = build_instance(3, Snaps{{{1, 2}}}, std::nullopt, 0);
  CHECK(restrict_to_source_component(isolated).instance.num_vertices() == 1);
}

TEST_CASE("certificate validation") {
  Instance p = path_forward();
  CHECK(validate_certificate(p, ComponentSequence{{{0, 1}, {1, 2}}}) == 3);
  CHECK(validate_certificate(p, ComponentSequence{}) == 1);
  CHECK(code_of([&] { validate_certificate(p, ComponentSequence{{{2}, {1, 2}}}); }) == ErrorCode::SourceNotInFirst);
  CHECK(code_of([&] { validate_certificate(p, ComponentSequence{{{0}}}); }) == ErrorCode::NotAComponent);
  Instance hop = build_instance(4, Snaps{{{0, 1}}, {{2, 3}}}, std::nullopt, 0);
  CHECK(code_of([&] { validate_certificate(hop, ComponentSequence{{{0, 1}, {2, 3}}}); }) ==
        ErrorCode::NonIntersectingConsecutive);
  CHECK(code_of([&] { validate_certificate(p, ComponentSequence{{{0, 1}, {1, 2}, {1, 2}}}); }) ==
        ErrorCode::CertificateTooLong);

  CHECK(validate_certificate(p, MonotoneWalk{{0, 1, 2}, {1, 2}}) == 3);
  CHECK(validate_certificate(p, MonotoneWalk{{0, 1, 0}, {1, 1}}) == 2);
  CHECK(code_of([&] { validate_certificate(p, MonotoneWalk{{0, 1, 2}, {1, 1}}); }) == ErrorCode::EdgeAbsentAtTime);
  CHECK(code_of([&] { validate_certificate(p, MonotoneWalk{{0, 1, 2, 1}, {1, 2, 1}}); }) ==
        ErrorCode::NonMonotoneTimes);
}

TEST_CASE("text format") {
  Instance minimal = parse_instance("tg 1\nsource 0\n");
  CHECK(minimal.num_vertices() == 1);
  CHECK(minimal.lifetime() == 1);
  CHECK(minimal.k == 1);

  Instance p = path_forward();
  CHECK(parse_instance(serialize_instance(p)) == p);

  Instance commented = parse_instance("# header next\ntg 1\n\nn 4 # four\nL 3\nsource 2\nk 7\nw 1 5\nt 3\ne 2 1\n");
  CHECK(commented.num_vertices() == 4);
  CHECK(commented.lifetime() == 3);
  CHECK(commented.source == 2);
  CHECK(commented.k == 7);
  CHECK(commented.weights == std::vector<Weight>{1, 5, 1, 1});
  CHECK(commented.graph.snapshot(1).empty());
  CHECK(commented.graph.has_edge({1, 2}, 3));

  CHECK(code_of([] { parse_instance("tg 1\nsource 0\nt 1\ne 0 1\ne 1 0\n"); }) == ErrorCode::DuplicateEdgeInSnapshot);
  try {
    parse_instance("tg 1\nsource 0\nt 1\ne 0 x\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.line() == std::optional<std::size_t>{4});
  }
  CHECK(code_of([] { parse_instance("tg 2\nsource 0\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_instance("tg 1\nsource 0\nt 2\nt 1\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_instance("tg 1\nsource 0\nbogus 1\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_instance("tg 1\nn 2\nsource 0\nt 1\ne 0 5\n"); }) == ErrorCode::InvalidVertex);
}

TEST_CASE("round trip and appearance count on random instances") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = random_suite_instance(seed, 12, 8, 10);
    CHECK(parse_instance(serialize_instance(inst)) == inst);
    std::int64_t per_snapshot = 0, per_edge = 0;
    for (Time t = 1; t <= inst.lifetime(); ++t) per_snapshot += static_cast<std::int64_t>(inst.graph.snapshot(t).size());
    const auto& g = inst.graph.underlying();
    for (std::size_t i = 0; i < g.num_edges(); ++i) per_edge += static_cast<std::int64_t>(g.multiplicity(i));
    CHECK(per_snapshot == per_edge);
    CHECK(per_edge == stats(inst.graph).appearances);
    for (Time t = 1; t <= inst.lifetime(); ++t) {
      auto comps = connected_components(inst.graph, t);
      CHECK(comps == brute::components(inst, t));
      std::vector<int> seen(inst.num_vertices(), 0);
      for (const auto& c : comps)
        for (Vertex v : c) ++seen[v];
      CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    }
  }
}

TEST_CASE("restriction preserves the answer") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    // Disjoint union of two random instances, source in either part.
    Instance a = random_suite_instance(rng(), 6, 4, 5), b = random_suite_instance(rng(), 6, 4, 5);
    const Vertex na = a.num_vertices(), n = na + b.num_vertices();
    const Time L = std::max(a.lifetime(), b.lifetime());
    Snaps snaps(L);
    for (Time t = 1; t <= a.lifetime(); ++t)
      for (const Edge& e : a.graph.snapshot(t)) snaps[t - 1].push_back({e.u, e.v});
    for (Time t = 1; t <= b.lifetime(); ++t)
      for (const Edge& e : b.graph.snapshot(t)) snaps[t - 1].push_back({na + e.u, na + e.v});
    std::vector<Weight> w = a.weights;
    w.insert(w.end(), b.weights.begin(), b.weights.end());
    const Vertex source = (rng() & 1) ? a.source : na + b.source;
    Instance joint = build_instance(n, snaps, w, source, std::uniform_int_distribution<Weight>(1, 30)(rng));
    Restriction r = restrict_to_source_component(joint);
    CHECK(std::find(r.new_to_old.begin(), r.new_to_old.end(), source) != r.new_to_old.end());
    CHECK((solve_oracle(joint).max_weight >= joint.k) == (solve_oracle(r.instance).max_weight >= r.instance.k));
  }
}
