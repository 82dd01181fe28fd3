#include "netident/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "netident/errors.hpp"

namespace netident {

namespace {

std::string edge_str(NodeId head, NodeId tail) {
  return "(" + std::to_string(head) + "," + std::to_string(tail) + ")";
}

}  // namespace

Dag::Dag(int n, std::vector<Edge> edges, bool check_connectivity)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) {
    throw Error(ErrorCode::Invariant, "graph needs at least one node");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return key_of(a) < key_of(b);
  });
  in_.assign(n_ + 1, {});
  out_.assign(n_ + 1, {});
  for (const Edge& e : edges_) {
    if (e.head < 1 || e.head > n_ || e.tail < 1 || e.tail > n_) {
      throw Error(ErrorCode::Invariant,
                  "edge " + edge_str(e.head, e.tail) + " references an unknown node");
    }
    if (e.head == e.tail) {
      throw Error(ErrorCode::Cycle, "self-loop at node " + std::to_string(e.head));
    }
    if (e.delay < 1) {
      throw Error(ErrorCode::Invariant,
                  "edge " + edge_str(e.head, e.tail) + " has delay " +
                      std::to_string(e.delay) + "; delays must be >= 1");
    }
    if (delay_.count(key_of(e)) != 0) {
      throw Error(ErrorCode::Invariant,
                  "duplicate edge " + edge_str(e.head, e.tail) +
                      "; parallel edges would be indistinguishable");
    }
    delay_[key_of(e)] = e.delay;
    in_[e.head].push_back(e.tail);
    out_[e.tail].push_back(e.head);
  }
  for (NodeId i = 1; i <= n_; ++i) {
    std::sort(in_[i].begin(), in_[i].end());
    std::sort(out_[i].begin(), out_[i].end());
  }

  // Acyclicity via Kahn; any leftover node sits on a cycle.
  std::vector<int> indeg(n_ + 1, 0);
  for (const Edge& e : edges_) ++indeg[e.head];
  std::queue<NodeId> ready;
  for (NodeId i = 1; i <= n_; ++i)
    if (indeg[i] == 0) ready.push(i);
  int emitted = 0;
  while (!ready.empty()) {
    NodeId v = ready.front();
    ready.pop();
    ++emitted;
    for (NodeId w : out_[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (emitted != n_) {
    throw Error(ErrorCode::Cycle, "directed cycle detected; input must be acyclic");
  }

  if (check_connectivity && n_ > 1) {
    std::vector<char> seen(n_ + 1, 0);
    std::queue<NodeId> bfs;
    bfs.push(1);
    seen[1] = 1;
    int visited = 1;
    while (!bfs.empty()) {
      NodeId v = bfs.front();
      bfs.pop();
      for (const auto& adj : {in_[v], out_[v]}) {
        for (NodeId w : adj) {
          if (!seen[w]) {
            seen[w] = 1;
            ++visited;
            bfs.push(w);
          }
        }
      }
    }
    if (visited != n_) {
      throw Error(ErrorCode::Invariant, "graph is not weakly connected");
    }
  }
}

Dag Dag::create(int node_count, std::vector<Edge> edges) {
  return Dag(node_count, std::move(edges), /*check_connectivity=*/true);
}

Dag Dag::create_relaxed(int node_count, std::vector<Edge> edges) {
  return Dag(node_count, std::move(edges), /*check_connectivity=*/false);
}

void Dag::require_node(NodeId i) const {
  if (i < 1 || i > n_) {
    throw Error(ErrorCode::Invariant, "unknown node id " + std::to_string(i));
  }
}

const std::vector<NodeId>& Dag::in_neighbors(NodeId i) const {
  require_node(i);
  return in_[i];
}

const std::vector<NodeId>& Dag::out_neighbors(NodeId i) const {
  require_node(i);
  return out_[i];
}

bool Dag::has_edge(NodeId head, NodeId tail) const {
  return delay_.count({head, tail}) != 0;
}

int Dag::delay(NodeId head, NodeId tail) const {
  auto it = delay_.find({head, tail});
  if (it == delay_.end()) {
    throw Error(ErrorCode::Invariant, "no edge " + edge_str(head, tail));
  }
  return it->second;
}

std::vector<NodeId> Dag::sources() const {
  std::vector<NodeId> out;
  for (NodeId i = 1; i <= n_; ++i)
    if (in_[i].empty()) out.push_back(i);
  return out;
}

std::vector<NodeId> Dag::sinks() const {
  std::vector<NodeId> out;
  for (NodeId i = 1; i <= n_; ++i)
    if (out_[i].empty()) out.push_back(i);
  return out;
}

std::vector<NodeRole> node_roles(const Dag& dag) {
  std::vector<NodeRole> roles;
  roles.reserve(dag.node_count());
  for (NodeId i = 1; i <= dag.node_count(); ++i) {
    roles.push_back({i, dag.is_source(i), dag.is_sink(i)});
  }
  return roles;
}

std::vector<NodeId> topological_order(const Dag& dag) {
  const int n = dag.node_count();
  std::vector<int> indeg(n + 1, 0);
  for (const Edge& e : dag.edges()) ++indeg[e.head];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId i = 1; i <= n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeId w : dag.out_neighbors(v))
      if (--indeg[w] == 0) ready.push(w);
  }
  return order;
}

std::set<NodeId> ancestors(const Dag& dag, NodeId i) {
  dag.require_node(i);
  std::set<NodeId> seen;
  std::queue<NodeId> work;
  work.push(i);
  while (!work.empty()) {
    NodeId v = work.front();
    work.pop();
    for (NodeId p : dag.in_neighbors(v)) {
      if (seen.insert(p).second) work.push(p);
    }
  }
  seen.erase(i);
  return seen;
}

std::vector<NodeId> measured_aware_order(const Dag& dag,
                                         const std::set<NodeId>& measured) {
  for (NodeId m : measured) dag.require_node(m);
  const std::vector<NodeId> plain = topological_order(dag);
  std::vector<char> emitted(dag.node_count() + 1, 0);
  std::vector<NodeId> order;
  order.reserve(dag.node_count());

  auto emit_in_plain_order = [&](const std::set<NodeId>& candidates) {
    for (NodeId v : plain) {
      if (!emitted[v] && candidates.count(v)) {
        emitted[v] = 1;
        order.push_back(v);
      }
    }
  };

  for (NodeId q : plain) {
    if (!measured.count(q)) continue;
    // Everything still pending that can reach q goes first, then q itself;
    // ancestor sets are closed under predecessors so this stays topological.
    std::set<NodeId> batch = ancestors(dag, q);
    batch.insert(q);
    emit_in_plain_order(batch);
  }
  // Nodes with no measured descendant (only possible under invalid patterns).
  for (NodeId v : plain) {
    if (!emitted[v]) order.push_back(v);
  }
  return order;
}

std::set<NodeId> reachable_excited(const Dag& dag, NodeId i,
                                   const std::set<NodeId>& excited) {
  dag.require_node(i);
  std::set<NodeId> result;
  for (NodeId a : ancestors(dag, i)) {
    if (excited.count(a)) result.insert(a);
  }
  return result;
}

std::map<NodeId, std::vector<int>> path_lag_multisets(const Dag& dag, NodeId from) {
  dag.require_node(from);
  std::map<NodeId, std::vector<int>> lags;
  // DFS over simple paths; a DAG revisits no node along one path, so plain
  // recursion terminates.
  std::function<void(NodeId, int)> walk = [&](NodeId at, int delay_sum) {
    for (NodeId next : dag.out_neighbors(at)) {
      const int sum = delay_sum + dag.delay(next, at);
      lags[next].push_back(sum + 1);  // +1 for the input delay u^{k-1}
      walk(next, sum);
    }
  };
  walk(from, 0);
  return lags;
}

LagTable lag_table(const Dag& dag, const std::set<NodeId>& excited) {
  LagTable table;
  for (NodeId j : excited) {
    for (const auto& [target, sums] : path_lag_multisets(dag, j)) {
      auto& entry = table.entries[{target, j}];
      entry.insert(sums.begin(), sums.end());
    }
  }
  return table;
}

Dag induced_subgraph(const Dag& dag, const std::set<NodeId>& keep) {
  if (keep.empty()) {
    throw Error(ErrorCode::Invariant, "induced subgraph needs a nonempty node set");
  }
  for (NodeId v : keep) dag.require_node(v);
  std::vector<Edge> edges;
  for (const Edge& e : dag.edges()) {
    if (keep.count(e.head) && keep.count(e.tail)) edges.push_back(e);
  }
  return Dag::create_relaxed(dag.node_count(), std::move(edges));
}

bool is_tree(const Dag& dag) {
  const int n = dag.node_count();
  if (static_cast<int>(dag.edges().size()) != n - 1) return false;
  std::vector<std::set<NodeId>> und(n + 1);
  for (const Edge& e : dag.edges()) {
    und[e.head].insert(e.tail);
    und[e.tail].insert(e.head);
  }
  std::vector<char> seen(n + 1, 0);
  std::queue<NodeId> bfs;
  bfs.push(1);
  seen[1] = 1;
  int visited = 1;
  while (!bfs.empty()) {
    NodeId v = bfs.front();
    bfs.pop();
    for (NodeId w : und[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        bfs.push(w);
      }
    }
  }
  return visited == n;
}

}  // namespace netident
