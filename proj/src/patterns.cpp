#include "netident/patterns.hpp"

#include <algorithm>

#include "netident/errors.hpp"

namespace netident {

int count_actions(const IdentificationPattern& p) {
  return static_cast<int>(p.excited.size() + p.measured.size());
}

std::string to_string(PatternViolation::Kind kind) {
  switch (kind) {
    case PatternViolation::Kind::UnexcitedSource: return "UnexcitedSource";
    case PatternViolation::Kind::UnmeasuredSink: return "UnmeasuredSink";
    case PatternViolation::Kind::Uncovered: return "Uncovered";
  }
  return "?";
}

NecessaryCheckResult check_necessary(const Dag& dag, const IdentificationPattern& p) {
  for (NodeId i : p.excited) dag.require_node(i);
  for (NodeId i : p.measured) dag.require_node(i);

  NecessaryCheckResult result;
  for (NodeId s : dag.sources()) {
    if (!p.is_excited(s)) {
      result.violations.push_back({PatternViolation::Kind::UnexcitedSource, s});
    }
  }
  for (NodeId t : dag.sinks()) {
    if (!p.is_measured(t)) {
      result.violations.push_back({PatternViolation::Kind::UnmeasuredSink, t});
    }
  }
  for (NodeId i = 1; i <= dag.node_count(); ++i) {
    if (!p.is_excited(i) && !p.is_measured(i)) {
      result.violations.push_back({PatternViolation::Kind::Uncovered, i});
    }
  }
  result.ok = result.violations.empty();
  return result;
}

IdentificationPattern canonical_full_excitation(const Dag& dag) {
  IdentificationPattern p;
  const std::vector<NodeId> sink_list = dag.sinks();
  p.measured.insert(sink_list.begin(), sink_list.end());
  for (NodeId i = 1; i <= dag.node_count(); ++i) {
    if (!p.measured.count(i)) p.excited.insert(i);
  }
  return p;
}

IdentificationPattern reduce_to_full_measurement(const IdentificationPattern& p,
                                                 const Dag& dag) {
  const NecessaryCheckResult check = check_necessary(dag, p);
  if (!check.ok) {
    std::string detail;
    for (const auto& v : check.violations) {
      if (!detail.empty()) detail += ", ";
      detail += to_string(v.kind) + "(" + std::to_string(v.node) + ")";
    }
    throw Error(ErrorCode::Refused,
                "full-measurement reduction needs a pattern passing the necessary "
                "checks; violations: " + detail);
  }
  IdentificationPattern full;
  full.excited = p.excited;
  for (NodeId i = 1; i <= dag.node_count(); ++i) full.measured.insert(i);
  return full;
}

IdentificationPattern strip_redundant_measurements(const IdentificationPattern& p) {
  IdentificationPattern out;
  out.excited = p.excited;
  for (NodeId m : p.measured) {
    if (!p.is_excited(m)) out.measured.insert(m);
  }
  return out;
}

std::vector<IdentificationPattern> enumerate_valid_patterns(const Dag& dag,
                                                            std::size_t max_results) {
  const int n = dag.node_count();
  if (n > 20) {
    throw Error(ErrorCode::Refused,
                "pattern enumeration is exponential in the interior size; refusing "
                "graphs with more than 20 nodes (got " + std::to_string(n) + ")");
  }
  std::vector<NodeId> interior;
  IdentificationPattern base;
  for (NodeId i = 1; i <= n; ++i) {
    const bool src = dag.is_source(i);
    const bool snk = dag.is_sink(i);
    if (src) base.excited.insert(i);
    if (snk) base.measured.insert(i);  // the n = 1 node is both
    if (!src && !snk) interior.push_back(i);
  }

  std::vector<IdentificationPattern> out;
  const std::uint64_t total = 1ull << interior.size();
  for (std::uint64_t mask = 0; mask < total && out.size() < max_results; ++mask) {
    IdentificationPattern p = base;
    for (std::size_t b = 0; b < interior.size(); ++b) {
      if (mask & (1ull << b)) {
        p.measured.insert(interior[b]);
      } else {
        p.excited.insert(interior[b]);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace netident
