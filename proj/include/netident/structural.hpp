#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "netident/funclib.hpp"
#include "netident/graph.hpp"
#include "netident/patterns.hpp"

namespace netident {

// Jacobian-structured picture of the network at one collapsed excitation
// point v: entry (i,j) of `jacobian` is f'_{i,j} evaluated at node j's output
// when every excitation signal is held constant at its v component. The
// transfer matrix (I - J)^-1 aggregates derivative products over all walks.
struct NonlinearNetworkMatrix {
  std::vector<NodeId> excited;  // ascending; fixes the order of `point`
  Eigen::VectorXd point;        // v, one component per excited node
  Eigen::VectorXd steady;       // collapsed node outputs, index node-1
  Eigen::MatrixXd jacobian;     // n x n, (i-1, j-1) = f'_{i,j}(steady_j)
  Eigen::MatrixXd transfer;     // Neumann sum of jacobian powers
};

// Evaluates the collapsed network at constant inputs u_i == v_i (which makes
// every delayed copy of an excitation equal to one variable) and assembles
// jacobian and transfer. v is indexed by the excited nodes in ascending id
// order. Throws ErrorCode::Overflow when an intermediate value leaves the
// finite range; callers retry with a smaller v.
NonlinearNetworkMatrix evaluate_network_matrix(const Dag& dag,
                                               const FunctionSet& funcs,
                                               const IdentificationPattern& p,
                                               const Eigen::VectorXd& v);

// Numeric rank of the transfer submatrix on `rows` x `cols`: singular values
// above tol times the largest one. An all-zero block has rank 0.
int submatrix_rank(const NonlinearNetworkMatrix& m, const std::set<NodeId>& rows,
                   const std::set<NodeId>& cols, double tol = 1e-8);

// Certificate for the vertex-disjoint path condition at one target node.
// A node that is both a source and a target supplies itself as a path of
// length zero: its own excitation enters its output directly.
struct DisjointPathCertificate {
  NodeId target = 0;  // 0 for free-form source/target queries
  int required = 0;
  int achieved = 0;
  // Explicit mutually vertex-disjoint paths, present only when
  // achieved >= required.
  std::vector<std::vector<NodeId>> paths;

  bool satisfied() const { return achieved >= required; }
};

// Maximum number of mutually vertex-disjoint paths from `sources` to
// `targets` via unit-vertex-capacity max flow (node splitting).
DisjointPathCertificate max_vertex_disjoint_paths(const Dag& dag,
                                                  const std::set<NodeId>& sources,
                                                  const std::set<NodeId>& targets);

// The per-node query the identifiability theorem needs: paths from the
// excited nodes to all in-neighbors of `node`.
DisjointPathCertificate disjoint_paths_to_in_neighbors(const Dag& dag,
                                                       const std::set<NodeId>& excited,
                                                       NodeId node);

// Evidence about the generic-rank assumption at one node: the max numeric
// rank of the transfer block (rows = in-neighbors, cols = excited nodes) over
// seeded random points, versus the structural bound from vertex-disjoint
// paths. Rank is lower-semicontinuous, so one point attaining the bound
// certifies genericity; never attaining it across all draws is reported as
// evidence against, not proof.
struct GenericityProbeResult {
  NodeId node = 0;
  int structural_bound = 0;
  int max_rank = 0;
  bool attained = false;
  bool undetermined = false;  // every draw overflowed
  int draws_used = 0;
  bool has_witness_point = false;
  Eigen::VectorXd witness_point;  // a v attaining the bound, when found
};

GenericityProbeResult genericity_probe(const Dag& dag, const FunctionSet& funcs,
                                       const IdentificationPattern& p, NodeId node,
                                       int draws, std::uint64_t seed);

}  // namespace netident
