#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netident/engine.hpp"
#include "netident/funclib.hpp"
#include "netident/graph.hpp"
#include "netident/patterns.hpp"
#include "netident/simkit.hpp"

namespace netident {

// A parsed network document: node names (index k names node k+1), topology,
// optional edge functions, and the identification pattern.
struct NetworkModel {
  std::vector<std::string> names;
  Dag dag;
  std::optional<FunctionSet> functions;
  IdentificationPattern pattern;

  NodeId id_of(const std::string& name) const;  // throws ErrorCode::Parse
  const std::string& name_of(NodeId id) const;

  friend bool operator==(const NetworkModel&, const NetworkModel&) = default;
};

// Line-oriented self-describing format:
//
//   netident v1
//   node <name>
//   edge <head> <tail> delay <m> [coeffs <a_1> ... <a_d>]
//   pattern excited <name> ...
//   pattern measured <name> ...
//
// '#' starts a comment. Unknown keywords and bad references are rejected with
// file:line positions. Either every edge carries coefficients or none does.
NetworkModel parse_network_file(const std::string& text,
                                const std::string& filename = "<memory>");
NetworkModel load_network_file(const std::string& path);

// Canonical rendering; parse(print_network_file(m)) == m.
std::string print_network_file(const NetworkModel& model);

// Graphviz rendering: excited nodes unfilled, measured nodes filled, dual-role
// nodes half-filled, uncovered nodes dashed; edges labeled with their function
// name and delay.
std::string to_dot(const NetworkModel& model);

// Report renderings. The JSON layout is described by docs/report.schema.json.
std::string report_table(const Report& report, const NetworkModel& model);
std::string report_json(const Report& report, const NetworkModel& model);

// Shortest decimal rendering that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace netident
