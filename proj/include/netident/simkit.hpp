#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "netident/funclib.hpp"
#include "netident/graph.hpp"
#include "netident/patterns.hpp"

namespace netident {

// Excitation signals over a finite horizon, time steps k = 1..horizon.
// Nodes without a signal are implicitly zero; values are confined to [-1, 1]
// so compositions of capped-degree polynomials stay well conditioned.
struct ExcitationSchedule {
  int horizon = 0;
  std::map<NodeId, std::vector<double>> signals;  // [k-1] holds u^k

  static ExcitationSchedule zero(int horizon);
  static ExcitationSchedule impulse(NodeId node, int horizon, double amplitude = 1.0,
                                    int at = 1);
  static ExcitationSchedule random(const std::set<NodeId>& excited, int horizon,
                                   std::uint64_t seed);

  // u_node^k; zero for k outside 1..horizon or nodes without a signal.
  double at(NodeId node, int k) const;

  // Throws unless all values lie in [-1, 1] and lengths match the horizon.
  void validate() const;
};

// Node outputs over the same horizon, zero initial rest for t <= 0.
struct Trajectory {
  int horizon = 0;
  std::vector<std::vector<double>> outputs;  // [node-1][k-1] holds y^k

  double at(NodeId node, int k) const {
    if (k < 1 || k > horizon) return 0.0;
    return outputs[node - 1][k - 1];
  }
};

// Steps y_i^k = sum_j f_{i,j}(y_j^{k - m_{i,j}}) + u_i^{k-1} forward in time,
// nodes in topological order within each step, with all signals zero for
// t <= 0. Callers wanting the full response should size the horizon at least
// one past the largest accumulated lag. Throws on horizon < 1 or overflow.
Trajectory simulate(const Dag& dag, const FunctionSet& funcs,
                    const ExcitationSchedule& sched);

// One step past the largest accumulated excitation-to-node lag.
int min_required_horizon(const Dag& dag);

struct ResponseEqualityResult {
  bool equal = false;
  double max_deviation = 0.0;
  int trials = 0;
};

// Simulates both function sets on seeded random schedules and compares the
// measured nodes only. Trials that overflow are resampled a bounded number
// of times. Equality on a cube of positive measure settles the analytic
// identity being tested, so random bounded inputs are conclusive here.
ResponseEqualityResult response_equal(const Dag& dag, const IdentificationPattern& p,
                                      const FunctionSet& f1, const FunctionSet& f2,
                                      int trials, int horizon, double tol,
                                      std::uint64_t seed);

enum class CollisionKind { FullCollision, PartialCollision, AllDistinct };

std::string to_string(CollisionKind kind);

// One (target, excited) pair with at least two paths between them.
struct DelayCollision {
  NodeId target = 0;
  NodeId excited = 0;
  int path_count = 0;
  std::set<int> lags;
  CollisionKind kind = CollisionKind::AllDistinct;
};

// Flags, for every excited node with two or more paths to a target, whether
// the accumulated lags all coincide (the worst-case regime the structural
// analysis always assumes), partially coincide, or are all distinct.
std::vector<DelayCollision> delay_collision_report(const Dag& dag,
                                                   const IdentificationPattern& p);

// CSV rendering: one row per time step, one column per node, header row of
// node names (ids when names are omitted).
std::string trajectory_csv(const Trajectory& traj,
                           const std::vector<std::string>& names = {});

}  // namespace netident
