#include "netident/structural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <Eigen/SVD>

#include "netident/errors.hpp"
#include "netident/rng.hpp"

namespace netident {

namespace {

constexpr double kValueGuard = 1e100;  // steady values beyond this count as overflow

}  // namespace

NonlinearNetworkMatrix evaluate_network_matrix(const Dag& dag,
                                               const FunctionSet& funcs,
                                               const IdentificationPattern& p,
                                               const Eigen::VectorXd& v) {
  const int n = dag.node_count();
  NonlinearNetworkMatrix m;
  m.excited.assign(p.excited.begin(), p.excited.end());
  if (v.size() != static_cast<Eigen::Index>(m.excited.size())) {
    throw Error(ErrorCode::Invariant,
                "evaluation point has " + std::to_string(v.size()) +
                    " components but the pattern excites " +
                    std::to_string(m.excited.size()) + " nodes");
  }
  m.point = v;

  // Constant inputs collapse all delayed excitation copies onto one variable,
  // so node outputs follow from a single pass in topological order.
  m.steady = Eigen::VectorXd::Zero(n);
  std::vector<double> input(n + 1, 0.0);
  for (Eigen::Index k = 0; k < v.size(); ++k) input[m.excited[k]] = v[k];
  for (NodeId i : topological_order(dag)) {
    double y = input[i];
    for (NodeId j : dag.in_neighbors(i)) {
      y += eval(funcs.at(i, j), m.steady[j - 1]);
    }
    if (!std::isfinite(y) || std::abs(y) > kValueGuard) {
      throw Error(ErrorCode::Overflow,
                  "EvaluationOverflow: collapsed output of node " + std::to_string(i) +
                      " left the finite range; retry with a smaller v");
    }
    m.steady[i - 1] = y;
  }

  m.jacobian = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : dag.edges()) {
    const double d = derivative(funcs.at(key_of(e)), m.steady[e.tail - 1]);
    if (!std::isfinite(d)) {
      throw Error(ErrorCode::Overflow, "EvaluationOverflow: derivative not finite");
    }
    m.jacobian(e.head - 1, e.tail - 1) = d;
  }

  // Neumann sum; the jacobian is nilpotent on a DAG so n-1 powers are exact.
  m.transfer = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k < n; ++k) {
    power = m.jacobian * power;
    m.transfer += power;
  }
  if (!m.transfer.allFinite()) {
    throw Error(ErrorCode::Overflow, "EvaluationOverflow: transfer matrix not finite");
  }
  return m;
}

int submatrix_rank(const NonlinearNetworkMatrix& m, const std::set<NodeId>& rows,
                   const std::set<NodeId>& cols, double tol) {
  if (rows.empty() || cols.empty()) {
    throw Error(ErrorCode::Invariant, "submatrix rank needs nonempty row and column sets");
  }
  Eigen::MatrixXd block(rows.size(), cols.size());
  Eigen::Index r = 0;
  for (NodeId i : rows) {
    Eigen::Index c = 0;
    for (NodeId j : cols) {
      block(r, c++) = m.transfer(i - 1, j - 1);
    }
    ++r;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > tol * sigma(0)) ++rank;
  }
  return rank;
}

namespace {

// Unit-capacity max flow on the node-split graph. Vertex x becomes
// x_in -> x_out with capacity one, so no vertex serves two paths.
class UnitFlowNetwork {
 public:
  explicit UnitFlowNetwork(int vertex_count) : head_(vertex_count, -1) {}

  void add_arc(int from, int to) {
    arcs_.push_back({to, head_[from], 1});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});  // residual
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  int max_flow(int source, int sink) {
    int total = 0;
    while (augment(source, sink)) ++total;
    return total;
  }

  // Outgoing arcs of `from` that carry one unit of flow.
  std::vector<int> flow_targets(int from) const {
    std::vector<int> out;
    for (int a = head_[from]; a != -1; a = arcs_[a].next) {
      if (a % 2 == 0 && arcs_[a].capacity == 0) out.push_back(arcs_[a].to);
    }
    return out;
  }

 private:
  struct Arc {
    int to;
    int next;
    int capacity;
  };

  bool augment(int source, int sink) {
    std::vector<int> via(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> bfs;
    bfs.push(source);
    seen[source] = 1;
    while (!bfs.empty() && !seen[sink]) {
      const int v = bfs.front();
      bfs.pop();
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].capacity > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          via[arcs_[a].to] = a;
          bfs.push(arcs_[a].to);
        }
      }
    }
    if (!seen[sink]) return false;
    for (int v = sink; v != source;) {
      const int a = via[v];
      arcs_[a].capacity -= 1;
      arcs_[a ^ 1].capacity += 1;
      v = arcs_[a ^ 1].to;
    }
    return true;
  }

  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

}  // namespace

DisjointPathCertificate max_vertex_disjoint_paths(const Dag& dag,
                                                  const std::set<NodeId>& sources,
                                                  const std::set<NodeId>& targets) {
  for (NodeId s : sources) dag.require_node(s);
  for (NodeId t : targets) dag.require_node(t);

  const int n = dag.node_count();
  const int super_source = 0;
  const int super_sink = 1;
  auto node_in = [](NodeId x) { return 2 * x; };
  auto node_out = [](NodeId x) { return 2 * x + 1; };

  UnitFlowNetwork net(2 * n + 2);
  for (NodeId x = 1; x <= n; ++x) net.add_arc(node_in(x), node_out(x));
  for (const Edge& e : dag.edges()) net.add_arc(node_out(e.tail), node_in(e.head));
  for (NodeId s : sources) net.add_arc(super_source, node_in(s));
  for (NodeId t : targets) net.add_arc(node_out(t), super_sink);

  DisjointPathCertificate cert;
  cert.required = static_cast<int>(targets.size());
  cert.achieved = net.max_flow(super_source, super_sink);

  if (cert.achieved >= cert.required) {
    // Decompose the flow into one path per saturated source arc. A node both
    // excited and targeted can yield the zero-length path [node].
    for (int entry : net.flow_targets(super_source)) {
      std::vector<NodeId> path;
      int at = entry;  // some node_in
      while (at != super_sink) {
        const NodeId x = at / 2;
        path.push_back(x);
        const std::vector<int> next = net.flow_targets(node_out(x));
        if (next.empty()) break;
        at = next.front();
      }
      cert.paths.push_back(std::move(path));
    }
    std::sort(cert.paths.begin(), cert.paths.end());
  }
  return cert;
}

DisjointPathCertificate disjoint_paths_to_in_neighbors(const Dag& dag,
                                                       const std::set<NodeId>& excited,
                                                       NodeId node) {
  dag.require_node(node);
  const auto& in = dag.in_neighbors(node);
  const std::set<NodeId> targets(in.begin(), in.end());
  DisjointPathCertificate cert;
  if (targets.empty()) {
    cert.target = node;
    return cert;  // sources have nothing to certify
  }
  cert = max_vertex_disjoint_paths(dag, excited, targets);
  cert.target = node;
  return cert;
}

GenericityProbeResult genericity_probe(const Dag& dag, const FunctionSet& funcs,
                                       const IdentificationPattern& p, NodeId node,
                                       int draws, std::uint64_t seed) {
  dag.require_node(node);
  if (draws < 1) {
    throw Error(ErrorCode::Invariant, "genericity probe needs at least one draw");
  }

  GenericityProbeResult result;
  result.node = node;
  const DisjointPathCertificate cert =
      disjoint_paths_to_in_neighbors(dag, p.excited, node);
  result.structural_bound = cert.achieved;

  const auto& in = dag.in_neighbors(node);
  const std::set<NodeId> rows(in.begin(), in.end());
  if (rows.empty() || p.excited.empty() || result.structural_bound == 0) {
    result.attained = (result.structural_bound == 0);
    return result;
  }

  int overflowed_draws = 0;
  for (int d = 0; d < draws; ++d) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(d)));
    Eigen::VectorXd v(p.excited.size());
    // Components stay away from zero: pure nonlinear functions all have a
    // vanishing derivative at the origin.
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = rng.uniform_excluding(0.05, 1.0);

    bool evaluated = false;
    for (int shrink = 0; shrink < 6 && !evaluated; ++shrink) {
      try {
        const NonlinearNetworkMatrix m = evaluate_network_matrix(dag, funcs, p, v);
        evaluated = true;
        ++result.draws_used;
        const int rank = submatrix_rank(m, rows, p.excited);
        if (rank > result.max_rank) {
          result.max_rank = rank;
          result.witness_point = v;
          result.has_witness_point = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Overflow) throw;
        v *= 0.5;
      }
    }
    if (!evaluated) ++overflowed_draws;
    if (result.max_rank >= result.structural_bound) break;  // bound certified
  }

  result.attained = result.max_rank >= result.structural_bound;
  result.undetermined = (result.draws_used == 0 && overflowed_draws > 0);
  return result;
}

}  // namespace netident
