#include "netident/engine.hpp"

#include <algorithm>
#include <cmath>

#include "netident/errors.hpp"
#include "netident/rng.hpp"

namespace netident {

namespace {

std::string edge_str(const EdgeKey& key) {
  return "(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
}

void refuse(const std::string& message) { throw Error(ErrorCode::Refused, message); }

// A class member visibly different from `original` for the same edge slot.
EdgeFunction different_random_function(const EdgeFunction& original,
                                       std::uint64_t seed) {
  const int degree = original.degree() == 3 ? 5 : 3;
  return random_function(seed, degree, original.delay());
}

int auto_horizon(const Dag& dag, int requested) {
  if (requested > 0) return requested;
  return min_required_horizon(dag) + 4;
}

void check_witness_sets(const Dag& dag, const Witness& w) {
  // Both sides must stay admissible and differ somewhere.
  FunctionSet::for_dag(dag, w.modified.map());
  if (w.original == w.modified) {
    refuse("witness would not change any function");
  }
}

}  // namespace

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::UnexcitedSource: return "UnexcitedSource";
    case WitnessKind::UnmeasuredSink: return "UnmeasuredSink";
    case WitnessKind::ScalingGamma: return "ScalingGamma";
    case WitnessKind::CollinearNeighbors: return "CollinearNeighbors";
    case WitnessKind::CubicBridge: return "CubicBridge";
  }
  return "?";
}

std::string to_string(VerdictState state) {
  switch (state) {
    case VerdictState::Identifiable: return "Identifiable";
    case VerdictState::Unidentifiable: return "Unidentifiable";
    case VerdictState::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Witness witness_unexcited_source(const Dag& dag, const FunctionSet& funcs,
                                 const IdentificationPattern& p, NodeId source,
                                 NodeId out_neighbor, std::uint64_t seed) {
  dag.require_node(source);
  dag.require_node(out_neighbor);
  if (!dag.is_source(source)) {
    refuse("node " + std::to_string(source) + " has in-neighbors; the free "
           "replacement needs a silent source");
  }
  if (p.is_excited(source)) {
    refuse("source " + std::to_string(source) + " is excited under this pattern");
  }
  if (!dag.has_edge(out_neighbor, source)) {
    refuse("no edge " + edge_str({out_neighbor, source}));
  }
  const EdgeKey key{out_neighbor, source};
  Witness w;
  w.kind = WitnessKind::UnexcitedSource;
  w.original = funcs;
  w.modified = funcs.with_replaced(key, different_random_function(funcs.at(key), seed));
  w.modified_edges = {key};
  check_witness_sets(dag, w);
  return w;
}

Witness witness_unmeasured_sink(const Dag& dag, const FunctionSet& funcs,
                                const IdentificationPattern& p, NodeId sink,
                                NodeId in_neighbor, std::uint64_t seed) {
  dag.require_node(sink);
  dag.require_node(in_neighbor);
  if (!dag.is_sink(sink)) {
    refuse("node " + std::to_string(sink) + " has out-neighbors; the free "
           "replacement needs an unobserved sink");
  }
  if (p.is_measured(sink)) {
    refuse("sink " + std::to_string(sink) + " is measured under this pattern");
  }
  if (!dag.has_edge(sink, in_neighbor)) {
    refuse("no edge " + edge_str({sink, in_neighbor}));
  }
  const EdgeKey key{sink, in_neighbor};
  Witness w;
  w.kind = WitnessKind::UnmeasuredSink;
  w.original = funcs;
  w.modified = funcs.with_replaced(key, different_random_function(funcs.at(key), seed));
  w.modified_edges = {key};
  check_witness_sets(dag, w);
  return w;
}

Witness witness_scaling(const Dag& dag, const FunctionSet& funcs,
                        const IdentificationPattern& p, NodeId node, double gamma) {
  dag.require_node(node);
  if (gamma == 0.0) refuse("gamma must be nonzero");
  if (gamma == 1.0) refuse("gamma = 1 would leave every function unchanged");
  if (p.is_excited(node) || p.is_measured(node)) {
    refuse("scaling witness needs a node that is neither excited nor measured; "
           "node " + std::to_string(node) + " is covered by the pattern");
  }
  if (dag.is_source(node) || dag.is_sink(node)) {
    refuse("scaling witness needs an interior node; node " + std::to_string(node) +
           " is a source or a sink");
  }

  Witness w;
  w.kind = WitnessKind::ScalingGamma;
  w.gamma = gamma;
  w.original = funcs;
  w.modified = funcs;
  for (NodeId j : dag.in_neighbors(node)) {
    const EdgeKey key{node, j};
    std::vector<double> coeffs = funcs.at(key).coefficients();
    for (double& a : coeffs) a *= gamma;
    w.modified = w.modified.with_replaced(key, EdgeFunction(coeffs, funcs.at(key).delay()));
    w.modified_edges.push_back(key);
  }
  for (NodeId j : dag.out_neighbors(node)) {
    const EdgeKey key{j, node};
    std::vector<double> coeffs = funcs.at(key).coefficients();
    double scale = gamma;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      coeffs[n] /= scale;  // a_n / gamma^n precomposes with x / gamma
      scale *= gamma;
    }
    w.modified = w.modified.with_replaced(key, EdgeFunction(coeffs, funcs.at(key).delay()));
    w.modified_edges.push_back(key);
  }
  std::sort(w.modified_edges.begin(), w.modified_edges.end());
  check_witness_sets(dag, w);
  return w;
}

namespace {

// One admissible branch-swap site: `relay_head` feeds the join through the
// invertible monomial on (relay_head, relay_tail); `direct` feeds it straight.
// The two tails carry edge-wise proportional functions with factor `ratio`.
struct CollinearSite {
  NodeId join = 0;
  NodeId relay_head = 0;  // in-neighbor of the join behind the relay edge
  NodeId relay_tail = 0;  // tail of the relay edge; proportional to `direct`
  NodeId direct = 0;      // the other in-neighbor of the join
  double ratio = 0.0;     // f_{relay_tail,*} = ratio * f_{direct,*}
};

// Common proportionality factor of two coefficient vectors, or nothing.
std::optional<double> proportionality(const EdgeFunction& a, const EdgeFunction& b) {
  if (a.degree() != b.degree() || a.degree() == 0) return std::nullopt;
  double ratio = 0.0;
  for (int n = 1; n <= a.degree(); ++n) {
    const double x = a.coefficient(n);
    const double y = b.coefficient(n);
    if ((x == 0.0) != (y == 0.0)) return std::nullopt;
    if (y == 0.0) continue;
    const double r = x / y;
    if (ratio == 0.0) {
      ratio = r;
    } else if (std::abs(r - ratio) > 1e-12 * std::max(1.0, std::abs(ratio))) {
      return std::nullopt;
    }
  }
  if (ratio == 0.0) return std::nullopt;
  return ratio;
}

std::optional<CollinearSite> find_collinear_site(const Dag& dag,
                                                 const FunctionSet& funcs,
                                                 const IdentificationPattern& p,
                                                 NodeId join) {
  const auto& in = dag.in_neighbors(join);
  for (NodeId relay_head : in) {
    if (p.is_excited(relay_head)) continue;
    if (dag.in_neighbors(relay_head).size() != 1) continue;
    const NodeId relay_tail = dag.in_neighbors(relay_head).front();
    if (p.is_excited(relay_tail)) continue;
    for (NodeId direct : in) {
      if (direct == relay_head || p.is_excited(direct)) continue;
      const auto& feed_a = dag.in_neighbors(relay_tail);
      const auto& feed_b = dag.in_neighbors(direct);
      if (feed_a.empty() || feed_a != feed_b) continue;
      // The branch pair must sample the shared parents at aligned times.
      if (dag.delay(join, relay_head) + dag.delay(relay_head, relay_tail) !=
          dag.delay(join, direct)) {
        continue;
      }
      bool aligned = true;
      std::optional<double> ratio;
      for (NodeId parent : feed_a) {
        if (dag.delay(relay_tail, parent) != dag.delay(direct, parent)) {
          aligned = false;
          break;
        }
        const auto r =
            proportionality(funcs.at(relay_tail, parent), funcs.at(direct, parent));
        if (!r) {
          aligned = false;
          break;
        }
        if (!ratio) {
          ratio = r;
        } else if (std::abs(*r - *ratio) > 1e-12 * std::max(1.0, std::abs(*ratio))) {
          aligned = false;
          break;
        }
      }
      if (!aligned || !ratio) continue;
      return CollinearSite{join, relay_head, relay_tail, direct, *ratio};
    }
  }
  return std::nullopt;
}

// Builds the swapped pair at a detected site, or refuses when the composed
// functions leave the polynomial class.
Witness build_collinear_witness(const Dag& dag, const FunctionSet& funcs,
                                const CollinearSite& site) {
  const double gamma = site.ratio;
  if (gamma == 0.0) refuse("collinearity ratio is zero");
  const EdgeFunction& relay = funcs.at(site.relay_head, site.relay_tail);
  if (!relay.is_monomial() || relay.degree() % 2 == 0) {
    refuse("InversionUnsupported: the relay function must be an invertible odd "
           "monomial");
  }
  const int p_deg = relay.degree();
  const double s_coeff = relay.leading_coefficient();
  const EdgeFunction& via_relay = funcs.at(site.join, site.relay_head);
  const EdgeFunction& via_direct = funcs.at(site.join, site.direct);

  // Replacement for the relay-side join function: compose the direct-side one
  // with the relay's inverse and divide the argument by gamma. Polynomial only
  // when every exponent of the direct-side function is a multiple of the relay
  // degree.
  std::vector<double> swapped_in(via_direct.degree() / p_deg, 0.0);
  for (int k = 1; k <= via_direct.degree(); ++k) {
    const double c = via_direct.coefficient(k);
    if (c == 0.0) continue;
    if (k % p_deg != 0) {
      refuse("swap leaves the polynomial class: exponent " + std::to_string(k) +
             " is not a multiple of the relay degree " + std::to_string(p_deg));
    }
    const int e = k / p_deg;
    swapped_in[e - 1] = c / (std::pow(gamma, k) * std::pow(s_coeff, e));
  }
  EdgeFunction new_via_relay(swapped_in, via_relay.delay());

  // Replacement for the direct-side join function: feed the relay-side one
  // through the relay at a gamma-scaled argument.
  std::vector<double> swapped_out;
  for (int r = 1; r <= via_relay.degree(); ++r) {
    const double b = via_relay.coefficient(r);
    if (b == 0.0) continue;
    const int exponent = p_deg * r;
    if (exponent > EdgeFunction::kDegreeCap) {
      refuse("swap exceeds the degree cap: composed exponent " +
             std::to_string(exponent));
    }
    if (static_cast<int>(swapped_out.size()) < exponent) swapped_out.resize(exponent, 0.0);
    swapped_out[exponent - 1] = b * std::pow(s_coeff * std::pow(gamma, p_deg), r);
  }
  EdgeFunction new_via_direct(swapped_out, via_direct.delay());

  for (const EdgeFunction* f : {&new_via_relay, &new_via_direct}) {
    const ClassCheckResult check = validate_class(*f);
    if (!check.ok) {
      refuse("swap leaves the admissible class: " + to_string(check.first_violation));
    }
  }

  Witness w;
  w.kind = WitnessKind::CollinearNeighbors;
  w.gamma = gamma;
  w.original = funcs;
  w.modified = funcs.with_replaced({site.join, site.relay_head}, new_via_relay)
                   .with_replaced({site.join, site.direct}, new_via_direct);
  w.modified_edges = {{site.join, site.direct}, {site.join, site.relay_head}};
  std::sort(w.modified_edges.begin(), w.modified_edges.end());
  check_witness_sets(dag, w);
  return w;
}

}  // namespace

Witness witness_collinear(const Dag& dag, const FunctionSet& funcs,
                          const IdentificationPattern& p, double gamma) {
  if (gamma == 0.0) refuse("gamma must be nonzero");
  std::optional<CollinearSite> mismatch;
  for (NodeId join = 1; join <= dag.node_count(); ++join) {
    if (dag.in_neighbors(join).size() < 2) continue;
    const auto site = find_collinear_site(dag, funcs, p, join);
    if (!site) continue;
    if (std::abs(site->ratio - gamma) <= 1e-9 * std::max(1.0, std::abs(gamma))) {
      return build_collinear_witness(dag, funcs, *site);
    }
    if (!mismatch) mismatch = site;
  }
  if (mismatch) {
    refuse("collinear branches found at node " + std::to_string(mismatch->join) +
           " but their ratio is " + std::to_string(mismatch->ratio) +
           ", not the requested gamma");
  }
  refuse("collinearity precondition not detected: no join has proportional "
         "parallel branches behind an invertible relay");
  return {};  // unreachable
}

Witness witness_cubic_bridge(const Dag& dag, const std::array<double, 4>& coeffs,
                             double gamma) {
  const std::vector<Edge> expected = {{2, 1, dag.has_edge(2, 1) ? dag.delay(2, 1) : 1},
                                      {3, 1, dag.has_edge(3, 1) ? dag.delay(3, 1) : 1},
                                      {4, 2, dag.has_edge(4, 2) ? dag.delay(4, 2) : 1},
                                      {4, 3, dag.has_edge(4, 3) ? dag.delay(4, 3) : 1}};
  if (dag.node_count() != 4 || dag.edges() != expected) {
    refuse("cubic bridge needs the four-node bridge shape: edges (2,1), (3,1), "
           "(4,2), (4,3)");
  }
  if (dag.delay(2, 1) + dag.delay(4, 2) != dag.delay(3, 1) + dag.delay(4, 3)) {
    refuse("cubic bridge needs colliding branch lags; the two paths from the "
           "source accumulate different delays");
  }
  const double a21 = coeffs[0], a31 = coeffs[1], a42 = coeffs[2], a43 = coeffs[3];
  for (double a : coeffs) {
    if (a == 0.0) refuse("all four cubic coefficients must be nonzero");
  }
  if (gamma == 0.0) refuse("gamma must be nonzero");
  if (gamma == a43) {
    refuse("gamma equals the join coefficient a43; the replacement would be the "
           "zero function");
  }
  const double shifted = a42 + gamma * (a31 * a31 * a31) / (a21 * a21 * a21);
  if (shifted == 0.0) {
    refuse("this gamma zeroes the other join function; pick a different gamma");
  }

  auto cubic = [](double a, int delay) {
    return EdgeFunction({0.0, 0.0, a}, delay);
  };
  std::map<EdgeKey, EdgeFunction> original;
  original.emplace(EdgeKey{2, 1}, cubic(a21, dag.delay(2, 1)));
  original.emplace(EdgeKey{3, 1}, cubic(a31, dag.delay(3, 1)));
  original.emplace(EdgeKey{4, 2}, cubic(a42, dag.delay(4, 2)));
  original.emplace(EdgeKey{4, 3}, cubic(a43, dag.delay(4, 3)));

  Witness w;
  w.kind = WitnessKind::CubicBridge;
  w.gamma = gamma;
  w.original = FunctionSet::for_dag(dag, original);
  w.modified = w.original.with_replaced({4, 2}, cubic(shifted, dag.delay(4, 2)))
                   .with_replaced({4, 3}, cubic(a43 - gamma, dag.delay(4, 3)));
  w.modified_edges = {{4, 2}, {4, 3}};
  check_witness_sets(dag, w);
  return w;
}

Witness verify_witness(const Dag& dag, const IdentificationPattern& p, Witness w,
                       int trials, int horizon, double tol, std::uint64_t seed) {
  const ResponseEqualityResult eq =
      response_equal(dag, p, w.original, w.modified, trials,
                     auto_horizon(dag, horizon), tol, seed);
  w.verified = eq.equal;
  w.max_deviation = eq.max_deviation;
  return w;
}

namespace {

// One traced branch of a suspected bridge: the in-neighbor's output equals
// coeff * u^degree, sampled `lag` steps back, as a function of the single
// excitation variable.
struct BridgeBranch {
  NodeId in_neighbor = 0;
  double coeff = 1.0;
  int degree = 1;
  int lag = 1;
};

std::optional<BridgeBranch> trace_monomial_branch(const Dag& dag,
                                                  const FunctionSet& funcs,
                                                  const IdentificationPattern& p,
                                                  NodeId from_excited, NodeId q) {
  BridgeBranch branch;
  branch.in_neighbor = q;
  // Walk backwards through single-input unexcited relays until the excited
  // ancestor; compose the monomials forward.
  std::vector<EdgeKey> chain;
  NodeId cur = q;
  while (cur != from_excited) {
    if (p.is_excited(cur)) return std::nullopt;  // extra input breaks monomiality
    const auto& in = dag.in_neighbors(cur);
    if (in.size() != 1) return std::nullopt;
    chain.push_back({cur, in.front()});
    cur = in.front();
  }
  double coeff = 1.0;
  int degree = 1;
  int lag = 1;  // the excitation enters its node one step back
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const EdgeFunction& f = funcs.at(*it);
    if (!f.is_monomial()) return std::nullopt;
    coeff = f.leading_coefficient() * std::pow(coeff, f.degree());
    degree *= f.degree();
    lag += f.delay();
  }
  branch.coeff = coeff;
  branch.degree = degree;
  branch.lag = lag;
  return branch;
}

// Attempts the coefficient-shift witness at a join whose vertex-disjoint-path
// bound failed. Applies only to monomial function sets where one excitation
// feeds the join through parallel relay chains of equal composite degree and
// equal accumulated lag.
std::optional<Witness> try_bridge_witness(const Dag& dag, const FunctionSet& funcs,
                                          const IdentificationPattern& p,
                                          NodeId join) {
  if (!funcs.all_monomials()) return std::nullopt;
  const std::set<NodeId> above = ancestors(dag, join);
  std::set<NodeId> feeding;
  for (NodeId e : p.excited) {
    if (e != join && above.count(e)) feeding.insert(e);
  }
  if (feeding.size() != 1) return std::nullopt;
  const NodeId s = *feeding.begin();

  std::vector<BridgeBranch> branches;
  for (NodeId q : dag.in_neighbors(join)) {
    if (auto b = trace_monomial_branch(dag, funcs, p, s, q)) branches.push_back(*b);
  }
  // Need two branches whose terms merge into one monomial of the collapsed
  // excitation: same composite degree and same accumulated lag at the join.
  for (std::size_t i = 0; i < branches.size(); ++i) {
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      const BridgeBranch& bp = branches[i];
      const BridgeBranch& bq = branches[j];
      const EdgeFunction& fp = funcs.at(join, bp.in_neighbor);
      const EdgeFunction& fq = funcs.at(join, bq.in_neighbor);
      if (bp.degree * fp.degree() != bq.degree * fq.degree()) continue;
      if (bp.lag + fp.delay() != bq.lag + fq.delay()) continue;

      const double ap = fp.leading_coefficient();
      const double aq = fq.leading_coefficient();
      const double weight = std::pow(bq.coeff, fq.degree()) /
                            std::pow(bp.coeff, fp.degree());
      double gamma = aq / 2.0;
      if (ap + gamma * weight == 0.0) gamma = aq / 4.0;
      if (gamma == 0.0 || gamma == aq || ap + gamma * weight == 0.0) continue;

      auto monomial = [](double coeff, int degree, int delay) {
        std::vector<double> c(degree, 0.0);
        c[degree - 1] = coeff;
        return EdgeFunction(c, delay);
      };
      Witness w;
      w.kind = WitnessKind::CubicBridge;
      w.gamma = gamma;
      w.original = funcs;
      w.modified =
          funcs
              .with_replaced({join, bp.in_neighbor},
                             monomial(ap + gamma * weight, fp.degree(), fp.delay()))
              .with_replaced({join, bq.in_neighbor},
                             monomial(aq - gamma, fq.degree(), fq.delay()));
      w.modified_edges = {{join, bp.in_neighbor}, {join, bq.in_neighbor}};
      std::sort(w.modified_edges.begin(), w.modified_edges.end());
      check_witness_sets(dag, w);
      return w;
    }
  }
  return std::nullopt;
}

void mark_edges(Report& report, const std::vector<EdgeKey>& keys, VerdictState state,
                const std::string& reason, int witness_index = -1) {
  for (const EdgeKey& key : keys) {
    EdgeVerdict& v = report.per_edge[key];
    if (v.state == VerdictState::Unidentifiable) continue;  // keep the stronger verdict
    v.state = state;
    v.reason = reason;
    v.witness_index = witness_index;
  }
}

// Adds the witness to the report if it survives verification and marks its
// modified edges; returns whether it was kept.
bool adopt_witness(Report& report, const Dag& dag, const IdentificationPattern& p,
                   Witness w, const AnalyzeOptions& options, std::uint64_t seed,
                   const std::string& reason) {
  w = verify_witness(dag, p, std::move(w), options.trials, options.horizon,
                     options.tol, seed);
  if (!w.verified) return false;
  const int index = static_cast<int>(report.witnesses.size());
  mark_edges(report, w.modified_edges, VerdictState::Unidentifiable, reason, index);
  report.witnesses.push_back(std::move(w));
  return true;
}

}  // namespace

Report analyze(const Dag& dag, const IdentificationPattern& p,
               const std::optional<FunctionSet>& funcs, std::uint64_t seed,
               const AnalyzeOptions& options) {
  Report report;
  report.seed = seed;
  report.pattern_given = p;
  report.pattern_used = p;

  for (const Edge& e : dag.edges()) {
    report.per_edge[key_of(e)] = {VerdictState::Inconclusive, "not analyzed", -1};
  }

  const FunctionSet working =
      funcs ? *funcs : FunctionSet::random_cubics(dag, mix_seed(seed, 0x67656eull));
  report.functions_generated = !funcs.has_value();

  report.necessary = check_necessary(dag, p);
  if (!report.necessary.ok) {
    // Each violated necessary condition yields the matching constructive
    // witness; edges the violations do not touch stay unanalyzed.
    for (auto& [key, verdict] : report.per_edge) {
      verdict.reason = "pattern fails a necessary condition; edge not analyzed";
    }
    std::uint64_t stream = 1;
    for (const PatternViolation& violation : report.necessary.violations) {
      const NodeId node = violation.node;
      switch (violation.kind) {
        case PatternViolation::Kind::UnexcitedSource:
          for (NodeId j : dag.out_neighbors(node)) {
            const std::uint64_t construct_seed = mix_seed(seed, stream++);
            const std::uint64_t verify_seed = mix_seed(seed, stream++);
            adopt_witness(report, dag, p,
                          witness_unexcited_source(dag, working, p, node, j,
                                                   construct_seed),
                          options, verify_seed,
                          "silent source " + std::to_string(node) +
                              ": verified witness (UnexcitedSource)");
          }
          break;
        case PatternViolation::Kind::UnmeasuredSink:
          for (NodeId j : dag.in_neighbors(node)) {
            const std::uint64_t construct_seed = mix_seed(seed, stream++);
            const std::uint64_t verify_seed = mix_seed(seed, stream++);
            adopt_witness(report, dag, p,
                          witness_unmeasured_sink(dag, working, p, node, j,
                                                  construct_seed),
                          options, verify_seed,
                          "unobserved sink " + std::to_string(node) +
                              ": verified witness (UnmeasuredSink)");
          }
          break;
        case PatternViolation::Kind::Uncovered:
          if (dag.is_source(node) || dag.is_sink(node)) break;  // handled above
          adopt_witness(report, dag, p,
                        witness_scaling(dag, working, p, node, options.scaling_gamma),
                        options, mix_seed(seed, stream++),
                        "uncovered node " + std::to_string(node) +
                            ": verified witness (ScalingGamma)");
          break;
      }
    }
    report.summary = report.witnesses.empty() ? VerdictState::Inconclusive
                                              : VerdictState::Unidentifiable;
    return report;
  }

  report.pattern_used = reduce_to_full_measurement(p, dag);
  report.reduced = report.pattern_used.measured != p.measured;
  if (report.reduced) {
    report.reduction_note =
        "verdicts computed under the full-measurement companion pattern "
        "(excited set unchanged, all nodes measured); the two patterns agree";
  }

  if (is_tree(dag)) {
    report.tree_fast_path = true;
    for (auto& [key, verdict] : report.per_edge) {
      verdict = {VerdictState::Identifiable,
                 "tree: any pattern meeting the necessary conditions identifies "
                 "every edge",
                 -1};
    }
    report.summary = VerdictState::Identifiable;
    return report;
  }

  // Per-node sufficiency: vertex-disjoint paths onto the in-neighbors plus
  // generic-rank evidence at sampled points. Nodes are independent; failures
  // localize to the node's incoming edges.
  std::uint64_t stream = 0x10000;
  for (NodeId node = 1; node <= dag.node_count(); ++node) {
    const auto& in = dag.in_neighbors(node);
    if (in.empty()) continue;
    std::vector<EdgeKey> incoming;
    for (NodeId j : in) incoming.push_back({node, j});

    NodeDiagnostic diag;
    diag.node = node;
    diag.certificate = disjoint_paths_to_in_neighbors(dag, p.excited, node);

    if (!diag.certificate.satisfied()) {
      if (auto w = try_bridge_witness(dag, working, report.pattern_used, node)) {
        adopt_witness(report, dag, report.pattern_used, std::move(*w), options,
                      mix_seed(seed, stream++),
                      "parallel-path obstruction at node " + std::to_string(node) +
                          ": verified witness (CubicBridge)");
      }
      // Whatever the witness did not claim stays honestly open.
      mark_edges(report, incoming, VerdictState::Inconclusive,
                 "vertex-disjoint path bound unmet at node " + std::to_string(node) +
                     " (achieved " + std::to_string(diag.certificate.achieved) +
                     " < required " + std::to_string(diag.certificate.required) +
                     "); sufficiency not established");
      report.diagnostics.push_back(std::move(diag));
      continue;
    }

    diag.probe = genericity_probe(dag, working, p, node, options.draws,
                                  mix_seed(seed, stream++));
    if (diag.probe->undetermined) {
      mark_edges(report, incoming, VerdictState::Inconclusive,
                 "genericity undetermined at node " + std::to_string(node) +
                     ": every probe draw overflowed");
    } else if (diag.probe->attained) {
      mark_edges(report, incoming, VerdictState::Identifiable,
                 "vertex-disjoint paths cover the in-neighbors of node " +
                     std::to_string(node) + " and the generic rank is attained");
    } else {
      // Structural bound met but every sampled point was rank-deficient:
      // the classic cause is proportional parallel branches.
      if (auto site = find_collinear_site(dag, working, p, node)) {
        try {
          adopt_witness(report, dag, report.pattern_used,
                        build_collinear_witness(dag, working, *site), options,
                        mix_seed(seed, stream++),
                        "proportional branches at node " + std::to_string(node) +
                            ": verified witness (CollinearNeighbors)");
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Refused) throw;
        }
      }
      mark_edges(report, incoming, VerdictState::Inconclusive,
                 "numeric rank stayed below the structural bound at node " +
                     std::to_string(node) +
                     " in all draws; generic-rank evidence failed");
    }
    report.diagnostics.push_back(std::move(diag));
  }

  bool any_witnessed = false;
  bool all_identifiable = true;
  for (const auto& [key, verdict] : report.per_edge) {
    any_witnessed |= verdict.state == VerdictState::Unidentifiable;
    all_identifiable &= verdict.state == VerdictState::Identifiable;
  }
  report.summary = any_witnessed     ? VerdictState::Unidentifiable
                   : all_identifiable ? VerdictState::Identifiable
                                      : VerdictState::Inconclusive;
  return report;
}

}  // namespace netident
