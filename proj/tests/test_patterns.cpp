#include <doctest.h>

#include "fixtures.hpp"
#include "netident/errors.hpp"
#include "netident/patterns.hpp"
#include "oracles.hpp"

using namespace netident;

TEST_CASE("action counting") {
  CHECK(count_actions({{1}, {2, 3, 4}}) == 4);
  CHECK(count_actions({{}, {}}) == 0);
  CHECK(count_actions({{1}, {1}}) == 2);  // dual role counts twice
}

TEST_CASE("necessary conditions") {
  const Dag bridge = fixtures::bridge4();
  CHECK(check_necessary(bridge, fixtures::bridge4_pattern()).ok);

  SUBCASE("unexcited source") {
    const auto r = check_necessary(bridge, {{}, {1, 2, 3, 4}});
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == PatternViolation::Kind::UnexcitedSource);
    CHECK(r.violations[0].node == 1);
  }
  SUBCASE("uncovered interior node") {
    const auto r = check_necessary(fixtures::chain3(), {{1}, {3}});
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == PatternViolation::Kind::Uncovered);
    CHECK(r.violations[0].node == 2);
  }
  SUBCASE("unmeasured sink") {
    const auto r = check_necessary(fixtures::chain3(), {{1, 2, 3}, {}});
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations[0].kind == PatternViolation::Kind::UnmeasuredSink);
    CHECK(r.violations[0].node == 3);
  }
}

TEST_CASE("canonical full excitation") {
  CHECK(canonical_full_excitation(fixtures::bridge4()) ==
        IdentificationPattern{{1, 2, 3}, {4}});
  CHECK(canonical_full_excitation(fixtures::single_edge()) ==
        IdentificationPattern{{1}, {2}});
  CHECK(canonical_full_excitation(fixtures::join6()) ==
        IdentificationPattern{{1, 2, 3, 4, 5}, {6}});
}

TEST_CASE("canonical pattern always passes with n actions") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Dag dag = oracle::random_dag(seed, 10);
    const auto p = canonical_full_excitation(dag);
    CHECK(check_necessary(dag, p).ok);
    CHECK(count_actions(p) == dag.node_count());
  }
}

TEST_CASE("full-measurement reduction") {
  const Dag bridge = fixtures::bridge4();
  CHECK(reduce_to_full_measurement(fixtures::bridge4_pattern(), bridge) ==
        IdentificationPattern{{1}, {1, 2, 3, 4}});

  // Already-full measurement is a fixed point.
  const IdentificationPattern full{{1}, {1, 2, 3, 4}};
  CHECK(reduce_to_full_measurement(full, bridge) == full);

  const Dag order8 = fixtures::order8();
  const auto reduced = reduce_to_full_measurement(fixtures::order8_pattern(), order8);
  CHECK(reduced.excited == fixtures::order8_pattern().excited);
  CHECK(reduced.measured.size() == 8);

  CHECK_THROWS_AS(reduce_to_full_measurement({{}, {1, 2, 3, 4}}, bridge), Error);
}

TEST_CASE("stripping redundant measurements") {
  CHECK(strip_redundant_measurements({{1}, {1, 2}}) ==
        IdentificationPattern{{1}, {2}});
  CHECK(strip_redundant_measurements({{1}, {2, 3}}) ==
        IdentificationPattern{{1}, {2, 3}});
  CHECK(strip_redundant_measurements({{1}, {1}}) == IdentificationPattern{{1}, {}});

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Dag dag = oracle::random_dag(seed, 8);
    IdentificationPattern p = canonical_full_excitation(dag);
    p.measured.insert(p.excited.begin(), p.excited.end());
    const auto stripped = strip_redundant_measurements(p);
    CHECK(stripped.excited == p.excited);
    CHECK(strip_redundant_measurements(stripped) == stripped);  // idempotent
  }
}

TEST_CASE("pattern enumeration") {
  SUBCASE("chain emits the all-excited-interior pattern first") {
    const auto patterns = enumerate_valid_patterns(fixtures::chain3(), 100);
    REQUIRE(patterns.size() == 2);
    CHECK(patterns[0] == IdentificationPattern{{1, 2}, {3}});
    CHECK(patterns[1] == IdentificationPattern{{1}, {2, 3}});
  }
  SUBCASE("single edge") {
    const auto patterns = enumerate_valid_patterns(fixtures::single_edge(), 100);
    REQUIRE(patterns.size() == 1);
    CHECK(patterns[0] == IdentificationPattern{{1}, {2}});
  }
  SUBCASE("bridge has two free interior nodes") {
    const auto patterns = enumerate_valid_patterns(fixtures::bridge4(), 100);
    CHECK(patterns.size() == 4);
  }
  SUBCASE("truncation") {
    CHECK(enumerate_valid_patterns(fixtures::bridge4(), 3).size() == 3);
  }
  SUBCASE("size guard") {
    std::vector<Edge> edges;
    for (NodeId i = 2; i <= 21; ++i) edges.push_back({i, i - 1, 1});
    const Dag big = Dag::create(21, edges);
    CHECK_THROWS_AS(enumerate_valid_patterns(big, 10), Error);
  }
}

TEST_CASE("enumerated patterns pass the checks with exactly n actions") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Dag dag = oracle::random_dag(seed, 9);
    for (const auto& p : enumerate_valid_patterns(dag, 64)) {
      CHECK(check_necessary(dag, p).ok);
      CHECK(count_actions(p) == dag.node_count());
    }
  }
}
