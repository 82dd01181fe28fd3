#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "netident/graph.hpp"

namespace netident {

// An experiment design: which nodes receive an excitation signal and which
// are measured. A node may be both at once.
struct IdentificationPattern {
  std::set<NodeId> excited;
  std::set<NodeId> measured;

  bool is_excited(NodeId i) const { return excited.count(i) != 0; }
  bool is_measured(NodeId i) const { return measured.count(i) != 0; }

  friend bool operator==(const IdentificationPattern&,
                         const IdentificationPattern&) = default;
};

// Number of identification actions |N^e| + |N^m|; a node that is both excited
// and measured counts twice.
int count_actions(const IdentificationPattern& p);

struct PatternViolation {
  enum class Kind { UnexcitedSource, UnmeasuredSink, Uncovered };
  Kind kind;
  NodeId node;

  friend bool operator==(const PatternViolation&, const PatternViolation&) = default;
};

std::string to_string(PatternViolation::Kind kind);

struct NecessaryCheckResult {
  bool ok = false;
  std::vector<PatternViolation> violations;
};

// Necessary conditions for identifiability: every source excited, every sink
// measured, every node excited or measured. Reports all offenders.
NecessaryCheckResult check_necessary(const Dag& dag, const IdentificationPattern& p);

// Measure the sinks, excite everything else; always passes the necessary
// checks and uses exactly n actions.
IdentificationPattern canonical_full_excitation(const Dag& dag);

// The full-measurement companion (N^e, V). Identifiability verdicts agree
// between the original pattern and this one, so the engine analyzes here.
// Refuses patterns that fail the necessary checks.
IdentificationPattern reduce_to_full_measurement(const IdentificationPattern& p,
                                                 const Dag& dag);

// Drops every excited node from the measured set. Pure set operation; the
// result may need re-validation by the caller.
IdentificationPattern strip_redundant_measurements(const IdentificationPattern& p);

// All patterns with exactly n actions that pass the necessary checks: sources
// are forced excited, sinks forced measured, and each interior node takes one
// of the two roles. Emitted with all-interior-excited first, then counting up
// through the interior measured-set choices; truncated at max_results.
// Refuses graphs with more than 20 nodes.
std::vector<IdentificationPattern> enumerate_valid_patterns(const Dag& dag,
                                                            std::size_t max_results);

// Pattern-taking conveniences for the graph queries.
inline std::vector<NodeId> measured_aware_order(const Dag& dag,
                                                const IdentificationPattern& p) {
  return measured_aware_order(dag, p.measured);
}
inline std::set<NodeId> reachable_excited(const Dag& dag, NodeId i,
                                          const IdentificationPattern& p) {
  return reachable_excited(dag, i, p.excited);
}
inline LagTable lag_table(const Dag& dag, const IdentificationPattern& p) {
  return lag_table(dag, p.excited);
}

}  // namespace netident
