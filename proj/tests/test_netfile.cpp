#include <doctest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "netident/cli.hpp"
#include "netident/errors.hpp"
#include "netident/netfile.hpp"
#include "oracles.hpp"

using namespace netident;

namespace {

std::string fixture(const std::string& name) {
  return std::string(NETIDENT_FIXTURE_DIR) + "/" + name;
}

std::string test_data(const std::string& name) {
  return std::string(NETIDENT_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("parsing the shipped fixtures") {
  for (const char* name : {"model6.net", "multipartite9.net", "order8.net",
                           "join6.net", "join6_collinear.net", "bridge4.net",
                           "funnel5.net", "triangle_collide.net",
                           "triangle_distinct.net", "chain3.net", "single_edge.net"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_network_file(fixture(name)));
  }
  const NetworkModel bridge = load_network_file(fixture("bridge4.net"));
  CHECK(bridge.dag.node_count() == 4);
  CHECK(bridge.pattern == fixtures::bridge4_pattern());
  REQUIRE(bridge.functions.has_value());
  CHECK(bridge.functions->at(3, 1).leading_coefficient() == 2.0);
}

TEST_CASE("print and parse round-trip exactly") {
  for (const char* name : {"model6.net", "order8.net", "join6_collinear.net",
                           "bridge4.net", "funnel5.net"}) {
    CAPTURE(name);
    const NetworkModel model = load_network_file(fixture(name));
    const std::string printed = print_network_file(model);
    const NetworkModel reparsed = parse_network_file(printed);
    CHECK(reparsed == model);
    CHECK(print_network_file(reparsed) == printed);
  }
}

TEST_CASE("round-trip holds for generated models with odd coefficients") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Dag dag = oracle::random_dag(seed, 7);
    NetworkModel model{{}, dag, FunctionSet::random_cubics(dag, seed),
                       canonical_full_excitation(dag)};
    for (int i = 1; i <= dag.node_count(); ++i) {
      model.names.push_back("n" + std::to_string(i));
    }
    const std::string printed = print_network_file(model);
    CHECK(parse_network_file(printed) == model);
  }
}

TEST_CASE("parse errors point at their line") {
  SUBCASE("unknown keyword") {
    try {
      parse_network_file("netident v1\nnode a\nnode b\nedgo b a delay 1\n", "x.net");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
      CHECK(std::string(e.what()).find("x.net:4") != std::string::npos);
      CHECK(std::string(e.what()).find("edgo") != std::string::npos);
    }
  }
  SUBCASE("unknown node reference") {
    try {
      parse_network_file("netident v1\nnode a\nedge a z delay 1\n", "y.net");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("y.net:3") != std::string::npos);
    }
  }
  SUBCASE("missing header") {
    CHECK_THROWS_AS(parse_network_file("node a\n"), Error);
  }
  SUBCASE("duplicate node") {
    CHECK_THROWS_AS(parse_network_file("netident v1\nnode a\nnode a\n"), Error);
  }
  SUBCASE("partial coefficients") {
    const std::string text =
        "netident v1\nnode a\nnode b\nnode c\n"
        "edge b a delay 1 coeffs 0 0 1\nedge c b delay 1\n";
    try {
      parse_network_file(text, "z.net");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("z.net:6") != std::string::npos);
    }
  }
}

TEST_CASE("validate exit codes distinguish failure families") {
  using namespace netident::cli;
  CHECK(cmd_validate(fixture("bridge4.net")).exit_code == kOk);
  CHECK(cmd_validate(test_data("bad_unknown_field.net")).exit_code == kParseError);
  CHECK(cmd_validate(test_data("bad_cycle.net")).exit_code == kCycle);
  CHECK(cmd_validate(test_data("bad_square.net")).exit_code == kClassViolation);
  CHECK(cmd_validate(test_data("bad_delay.net")).exit_code == kParseError);
  CHECK(cmd_validate("no_such_file.net").exit_code == kParseError);
}

TEST_CASE("analyze command exit codes follow the summary") {
  using namespace netident::cli;
  CommonOptions options;
  options.trials = 200;
  CHECK(cmd_analyze(fixture("funnel5.net"), options).exit_code == kOk);
  CHECK(cmd_analyze(fixture("bridge4.net"), options).exit_code == kUnidentifiable);

  const auto collinear = cmd_analyze(fixture("join6_collinear.net"), options);
  CHECK(collinear.exit_code == kUnidentifiable);
  CHECK(collinear.out.find("CollinearNeighbors") != std::string::npos);

  // A bound failure with non-monomial functions stays inconclusive.
  const auto inconclusive = cmd_analyze(test_data("bridge4_general.net"), options);
  CHECK(inconclusive.exit_code == kInconclusive);
}

TEST_CASE("analyze output is deterministic and the json is well-formed") {
  using namespace netident::cli;
  CommonOptions options;
  options.trials = 150;
  const auto a = cmd_analyze(fixture("bridge4.net"), options);
  const auto b = cmd_analyze(fixture("bridge4.net"), options);
  CHECK(a.out == b.out);

  options.json = true;
  const auto j1 = cmd_analyze(fixture("bridge4.net"), options);
  const auto j2 = cmd_analyze(fixture("bridge4.net"), options);
  CHECK(j1.out == j2.out);

  const auto parsed = nlohmann::json::parse(j1.out);
  // Structural conformance against the shipped schema: every required key of
  // the top-level object is present with the advertised type.
  std::ifstream schema_file(std::string(NETIDENT_FIXTURE_DIR) +
                            "/../docs/report.schema.json");
  REQUIRE(schema_file.good());
  const auto schema = nlohmann::json::parse(schema_file);
  for (const auto& key : schema.at("required")) {
    CAPTURE(key.get<std::string>());
    CHECK(parsed.contains(key.get<std::string>()));
  }
  CHECK(parsed["summary"] == "Unidentifiable");
  CHECK(parsed["seed"] == 42);
  CHECK(parsed["edges"].is_array());
  CHECK(parsed["edges"].size() == 4);
  CHECK(parsed["witnesses"].size() == 1);
  CHECK(parsed["witnesses"][0]["kind"] == "CubicBridge");
  CHECK(parsed["witnesses"][0]["verified"] == true);
}

TEST_CASE("patterns command enumerates with verdicts") {
  using namespace netident::cli;
  CommonOptions options;
  options.trials = 150;
  const auto chain = cmd_patterns(fixture("chain3.net"), options);
  CHECK(chain.exit_code == kOk);
  CHECK(chain.out.find("[0]") != std::string::npos);
  CHECK(chain.out.find("[1]") != std::string::npos);
  CHECK(chain.out.find("[2]") == std::string::npos);  // exactly two patterns
  CHECK(chain.out.find("Identifiable") != std::string::npos);
  CHECK(chain.out.find("Unidentifiable") == std::string::npos);

  const auto bridge = cmd_patterns(fixture("bridge4.net"), options);
  CHECK(bridge.out.find("[3]") != std::string::npos);  // four patterns
  // Exciting a relay gives the join's in-neighbors their own signals, so
  // three of the four patterns identify; only the single-excitation pattern
  // is obstructed by the parallel-path trade.
  CHECK(bridge.out.find("excited {1} measured {2,3,4} -> Unidentifiable") !=
        std::string::npos);
  CHECK(bridge.out.find("excited {1,2,3} measured {4} -> Identifiable") !=
        std::string::npos);

  const auto single = cmd_patterns(fixture("single_edge.net"), options);
  CHECK(single.out.find("[0]") != std::string::npos);
  CHECK(single.out.find("[1]") == std::string::npos);
}

TEST_CASE("witness command") {
  using namespace netident::cli;
  CommonOptions options;
  options.trials = 300;

  SUBCASE("bridge trade verifies and prints a parseable document") {
    options.kind = "CubicBridge";
    options.gamma = 0.5;
    const auto r = cmd_witness(fixture("bridge4.net"), options);
    CHECK(r.exit_code == kOk);
    CHECK(r.out.find("verified=yes") != std::string::npos);
    const NetworkModel modified = parse_network_file(r.out);
    REQUIRE(modified.functions.has_value());
    CHECK(modified.functions->at(4, 2).leading_coefficient() == doctest::Approx(5.0));
    CHECK(modified.functions->at(4, 3).leading_coefficient() == doctest::Approx(0.5));
  }
  SUBCASE("scaling refuses covered nodes with a precondition message") {
    options.kind = "ScalingGamma";
    options.gamma = 2.0;
    options.node = "2";
    const auto r = cmd_witness(fixture("chain3.net"), options);
    CHECK(r.exit_code == kRefused);
    CHECK(r.err.find("neither excited nor measured") != std::string::npos);
  }
  SUBCASE("scaling succeeds on an uncovered node") {
    options.kind = "ScalingGamma";
    options.gamma = 2.0;
    options.node = "2";
    const auto r = cmd_witness(test_data("chain3_uncovered.net"), options);
    CHECK(r.exit_code == kOk);
    CHECK(r.out.find("verified=yes") != std::string::npos);
  }
  SUBCASE("collinear swap from the file") {
    options.kind = "CollinearNeighbors";
    options.gamma = 2.0;
    const auto r = cmd_witness(fixture("join6_collinear.net"), options);
    CHECK(r.exit_code == kOk);
  }
}

TEST_CASE("simulate command prints csv with node names") {
  using namespace netident::cli;
  CommonOptions options;
  options.horizon = 6;
  const auto r = cmd_simulate(fixture("bridge4.net"), options);
  CHECK(r.exit_code == kOk);
  CHECK(r.out.rfind("1,2,3,4\n", 0) == 0);
  int rows = 0;
  for (char c : r.out)
    if (c == '\n') ++rows;
  CHECK(rows == 7);  // header + horizon
}

TEST_CASE("export command renders the coloring convention") {
  using namespace netident::cli;
  const auto model = cmd_export(fixture("model6.net"));
  CHECK(model.exit_code == kOk);
  CHECK(model.out.find("digraph") != std::string::npos);
  // Node 4 is excited and measured: half-filled.
  CHECK(model.out.find("\"4\" [style=filled, fillcolor=\"white;0.5:gray70\"") !=
        std::string::npos);
  // Eight labeled edges.
  int edges = 0;
  std::size_t at = 0;
  while ((at = model.out.find("->", at)) != std::string::npos) {
    ++edges;
    at += 2;
  }
  CHECK(edges == 8);

  const auto bridge = cmd_export(fixture("bridge4.net"));
  CHECK(bridge.out.find("\"1\" [style=filled, fillcolor=white]") != std::string::npos);
  CHECK(bridge.out.find("\"2\" [style=filled, fillcolor=gray70]") != std::string::npos);
  CHECK(bridge.out.find("\"4\" [style=filled, fillcolor=gray70]") != std::string::npos);

  const auto single = cmd_export(fixture("single_edge.net"));
  CHECK(single.out.find("->") != std::string::npos);
}

TEST_CASE("a single isolated node parses and exports") {
  const NetworkModel model = parse_network_file(
      "netident v1\nnode only\npattern excited only\npattern measured only\n");
  CHECK(model.dag.node_count() == 1);
  CHECK(model.dag.edges().empty());
  const std::string dot = to_dot(model);
  CHECK(dot.find("\"only\"") != std::string::npos);
  CHECK(dot.find("->") == std::string::npos);
  CHECK(parse_network_file(print_network_file(model)) == model);
}
