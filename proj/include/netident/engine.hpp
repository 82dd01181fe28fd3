#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netident/funclib.hpp"
#include "netident/graph.hpp"
#include "netident/patterns.hpp"
#include "netident/simkit.hpp"
#include "netident/structural.hpp"

namespace netident {

enum class WitnessKind {
  UnexcitedSource,     // free replacement behind a silent source
  UnmeasuredSink,      // free replacement into an unobserved sink
  ScalingGamma,        // scale into / unscale out of an uncovered node
  CollinearNeighbors,  // swap across proportional parallel branches
  CubicBridge,         // coefficient shift across equal-degree parallel paths
};

std::string to_string(WitnessKind kind);

// A constructive unidentifiability certificate: a second admissible function
// set whose measured responses coincide with the original's. `verified` is
// set only after the simulation equality check has passed.
struct Witness {
  WitnessKind kind = WitnessKind::UnexcitedSource;
  FunctionSet original;
  FunctionSet modified;
  std::vector<EdgeKey> modified_edges;
  std::optional<double> gamma;
  bool verified = false;
  double max_deviation = -1.0;  // from the last verification run
};

// Witness constructors. Each validates its preconditions and throws
// ErrorCode::Refused when the construction does not apply; returned witnesses
// are unverified until run through verify_witness.

// The source is silent under the pattern, so its output is identically zero
// and the function on (out_neighbor, source) can be replaced freely.
Witness witness_unexcited_source(const Dag& dag, const FunctionSet& funcs,
                                 const IdentificationPattern& p, NodeId source,
                                 NodeId out_neighbor, std::uint64_t seed);

// The sink is never observed, so the function on (sink, in_neighbor) can be
// replaced freely.
Witness witness_unmeasured_sink(const Dag& dag, const FunctionSet& funcs,
                                const IdentificationPattern& p, NodeId sink,
                                NodeId in_neighbor, std::uint64_t seed);

// Scales every function into an uncovered interior node by gamma and
// precomposes every function out of it with x/gamma; the node's rescaled
// output is never observed and cancels downstream.
Witness witness_scaling(const Dag& dag, const FunctionSet& funcs,
                        const IdentificationPattern& p, NodeId node, double gamma);

// Two in-neighbor branches of a join carry edge-wise proportional functions
// (factor gamma) with one of them routed through an invertible monomial
// relay; the two join functions can then be traded against each other.
Witness witness_collinear(const Dag& dag, const FunctionSet& funcs,
                          const IdentificationPattern& p, double gamma);

// The four-node bridge: one source feeding a join through two relays with
// pure cubics a = (a_lower_relay_in, a_upper_relay_in, a_join_from_lower,
// a_join_from_upper) indexed as (a21, a31, a42, a43). Shifts weight gamma
// between the join functions without changing the join's response.
Witness witness_cubic_bridge(const Dag& dag, const std::array<double, 4>& coeffs,
                             double gamma);

// Runs the response-equality oracle on the witness pair and records the
// verdict. horizon <= 0 picks one safely past the largest accumulated lag.
Witness verify_witness(const Dag& dag, const IdentificationPattern& p, Witness w,
                       int trials, int horizon, double tol, std::uint64_t seed);

enum class VerdictState { Identifiable, Unidentifiable, Inconclusive };

std::string to_string(VerdictState state);

struct EdgeVerdict {
  VerdictState state = VerdictState::Inconclusive;
  std::string reason;
  int witness_index = -1;  // into Report::witnesses when state is Unidentifiable
};

struct NodeDiagnostic {
  NodeId node = 0;
  DisjointPathCertificate certificate;
  std::optional<GenericityProbeResult> probe;
};

struct AnalyzeOptions {
  int draws = 10;        // genericity probe sample points
  int trials = 1000;     // witness verification schedules
  double tol = 1e-9;     // witness verification tolerance
  int horizon = 0;       // 0 = auto from the graph's lag structure
  double scaling_gamma = 2.0;
};

struct Report {
  std::uint64_t seed = 0;
  IdentificationPattern pattern_given;
  IdentificationPattern pattern_used;  // after the full-measurement reduction
  bool reduced = false;
  std::string reduction_note;
  NecessaryCheckResult necessary;
  bool tree_fast_path = false;
  bool functions_generated = false;  // random cubics were supplied internally
  VerdictState summary = VerdictState::Inconclusive;
  std::map<EdgeKey, EdgeVerdict> per_edge;
  std::vector<NodeDiagnostic> diagnostics;
  std::vector<Witness> witnesses;
};

// The verdict pipeline: necessary checks (violations yield verified witnesses
// of the matching kind), the full-measurement reduction, the tree fast path,
// and per-node vertex-disjoint-path plus generic-rank checks, with
// constructive witness upgrades where a known obstruction pattern applies.
// When funcs is absent, independent random cubics derived from `seed` stand
// in for the generic-rank probe.
Report analyze(const Dag& dag, const IdentificationPattern& p,
               const std::optional<FunctionSet>& funcs, std::uint64_t seed,
               const AnalyzeOptions& options = {});

}  // namespace netident
