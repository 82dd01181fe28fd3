#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace netident {

// Nodes are dense integers 1..n; external names are mapped at the CLI
// boundary so matrices can be indexed directly.
using NodeId = int;

// Edge (head, tail) carries the function f_{head,tail}: signal flows
// tail -> head with an integer delay of `delay` time steps.
struct Edge {
  NodeId head = 0;
  NodeId tail = 0;
  int delay = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgeKey = std::pair<NodeId, NodeId>;  // (head, tail)

inline EdgeKey key_of(const Edge& e) { return {e.head, e.tail}; }

// Immutable directed acyclic graph. Checked at construction: acyclicity,
// no duplicate edges, delays >= 1, and (unless relaxed) weak connectivity.
// All queries are const; instances are safe to share across threads.
class Dag {
 public:
  // Fully validated construction.
  static Dag create(int node_count, std::vector<Edge> edges);

  // Same checks except weak connectivity; used for induced subgraphs,
  // which are internal proof artifacts and may fall apart.
  static Dag create_relaxed(int node_count, std::vector<Edge> edges);

  int node_count() const { return n_; }

  // Sorted by (head, tail).
  const std::vector<Edge>& edges() const { return edges_; }

  // Ascending node ids.
  const std::vector<NodeId>& in_neighbors(NodeId i) const;
  const std::vector<NodeId>& out_neighbors(NodeId i) const;

  bool has_edge(NodeId head, NodeId tail) const;
  int delay(NodeId head, NodeId tail) const;  // throws if absent

  bool is_source(NodeId i) const { return in_neighbors(i).empty(); }
  bool is_sink(NodeId i) const { return out_neighbors(i).empty(); }
  std::vector<NodeId> sources() const;
  std::vector<NodeId> sinks() const;

  // Throws ErrorCode::Invariant for ids outside 1..n.
  void require_node(NodeId i) const;

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Dag(int n, std::vector<Edge> edges, bool check_connectivity);

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> in_;   // size n_+1, index by node id
  std::vector<std::vector<NodeId>> out_;
  std::map<EdgeKey, int> delay_;
};

struct NodeRole {
  NodeId node = 0;
  bool is_source = false;
  bool is_sink = false;
};

std::vector<NodeRole> node_roles(const Dag& dag);

// Total lags of directed paths from an excited node to a target: each entry is
// the sum of edge delays along one path plus one step of input delay, so a
// single edge of delay m contributes lag m + 1. Entries exist only for pairs
// joined by at least one path.
struct LagTable {
  std::map<std::pair<NodeId, NodeId>, std::set<int>> entries;  // (target, excited) -> lags
};

// Deterministic topological order: Kahn's algorithm, ties broken by ascending
// node id. For every edge (head, tail) the tail precedes the head.
std::vector<NodeId> topological_order(const Dag& dag);

// Topological order in which every node emitted strictly between two
// consecutive measured nodes has a directed path to the second one; nodes
// without such a path are deferred past it. Implemented by walking the
// measured nodes in plain topological order and flushing the not-yet-emitted
// ancestors of each before it.
std::vector<NodeId> measured_aware_order(const Dag& dag,
                                         const std::set<NodeId>& measured);

// Excited nodes with a directed path to i (i itself excluded; a node's own
// excitation enters its output directly and is not a path).
std::set<NodeId> reachable_excited(const Dag& dag, NodeId i,
                                   const std::set<NodeId>& excited);

// Enumerates all simple paths from each excited node and records the distinct
// total lags per (target, excited) pair. Path counts are finite in a DAG but
// can grow exponentially with density; intended for desk-scale graphs.
LagTable lag_table(const Dag& dag, const std::set<NodeId>& excited);

// All lag sums from `from` to every reachable node, path-by-path (values
// repeat when two paths share a total lag). Shared by lag_table and the
// delay-collision scan.
std::map<NodeId, std::vector<int>> path_lag_multisets(const Dag& dag, NodeId from);

// Subgraph on `keep` with exactly the edges whose endpoints both lie in
// `keep`. Node ids are preserved (not re-densified); weak connectivity is not
// enforced on the result.
Dag induced_subgraph(const Dag& dag, const std::set<NodeId>& keep);

// True iff the underlying undirected graph is connected with exactly n-1 edges.
bool is_tree(const Dag& dag);

// Ancestors of i (nodes with a directed path to i), excluding i.
std::set<NodeId> ancestors(const Dag& dag, NodeId i);

}  // namespace netident
