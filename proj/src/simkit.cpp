#include "netident/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netident/errors.hpp"
#include "netident/rng.hpp"

namespace netident {

namespace {

constexpr double kValueGuard = 1e100;

}  // namespace

ExcitationSchedule ExcitationSchedule::zero(int horizon) {
  if (horizon < 1) throw Error(ErrorCode::Invariant, "horizon must be >= 1");
  return {horizon, {}};
}

ExcitationSchedule ExcitationSchedule::impulse(NodeId node, int horizon,
                                               double amplitude, int at) {
  ExcitationSchedule s = zero(horizon);
  if (at < 1 || at > horizon) {
    throw Error(ErrorCode::Invariant, "impulse time outside the horizon");
  }
  std::vector<double> u(horizon, 0.0);
  u[at - 1] = amplitude;
  s.signals[node] = std::move(u);
  s.validate();
  return s;
}

ExcitationSchedule ExcitationSchedule::random(const std::set<NodeId>& excited,
                                              int horizon, std::uint64_t seed) {
  ExcitationSchedule s = zero(horizon);
  Rng rng(seed);
  for (NodeId node : excited) {
    std::vector<double> u(horizon);
    for (double& x : u) x = rng.uniform(-1.0, 1.0);
    s.signals[node] = std::move(u);
  }
  return s;
}

double ExcitationSchedule::at(NodeId node, int k) const {
  if (k < 1 || k > horizon) return 0.0;
  auto it = signals.find(node);
  if (it == signals.end()) return 0.0;
  return it->second[k - 1];
}

void ExcitationSchedule::validate() const {
  if (horizon < 1) throw Error(ErrorCode::Invariant, "horizon must be >= 1");
  for (const auto& [node, u] : signals) {
    if (static_cast<int>(u.size()) != horizon) {
      throw Error(ErrorCode::Invariant,
                  "signal of node " + std::to_string(node) + " has length " +
                      std::to_string(u.size()) + ", horizon is " +
                      std::to_string(horizon));
    }
    for (double x : u) {
      if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
        throw Error(ErrorCode::Invariant,
                    "excitation values must lie in [-1, 1]");
      }
    }
  }
}

Trajectory simulate(const Dag& dag, const FunctionSet& funcs,
                    const ExcitationSchedule& sched) {
  if (sched.horizon < 1) throw Error(ErrorCode::Invariant, "horizon must be >= 1");
  sched.validate();

  const int n = dag.node_count();
  Trajectory traj;
  traj.horizon = sched.horizon;
  traj.outputs.assign(n, std::vector<double>(sched.horizon, 0.0));

  const std::vector<NodeId> order = topological_order(dag);
  for (int k = 1; k <= sched.horizon; ++k) {
    for (NodeId i : order) {
      double y = 0.0;
      for (NodeId j : dag.in_neighbors(i)) {
        const int t = k - dag.delay(i, j);
        y += eval(funcs.at(i, j), traj.at(j, t));
      }
      y += sched.at(i, k - 1);
      if (!std::isfinite(y) || std::abs(y) > kValueGuard) {
        throw Error(ErrorCode::Overflow,
                    "EvaluationOverflow: output of node " + std::to_string(i) +
                        " at step " + std::to_string(k) + " left the finite range");
      }
      traj.outputs[i - 1][k - 1] = y;
    }
  }
  return traj;
}

int min_required_horizon(const Dag& dag) {
  int max_lag = 0;
  for (NodeId j = 1; j <= dag.node_count(); ++j) {
    for (const auto& [target, sums] : path_lag_multisets(dag, j)) {
      for (int lag : sums) max_lag = std::max(max_lag, lag);
    }
  }
  return max_lag + 1;
}

ResponseEqualityResult response_equal(const Dag& dag, const IdentificationPattern& p,
                                      const FunctionSet& f1, const FunctionSet& f2,
                                      int trials, int horizon, double tol,
                                      std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::Invariant, "need at least one trial");
  if (horizon < 1) throw Error(ErrorCode::Invariant, "horizon must be >= 1");

  ResponseEqualityResult result;
  result.equal = true;

  int resamples_left = 5 * trials;
  std::uint64_t stream = 0;
  for (int trial = 0; trial < trials; ++trial) {
    for (;;) {
      // Per-trial schedules come from the master seed plus a running index,
      // so trials are reproducible independently of each other.
      const ExcitationSchedule sched =
          ExcitationSchedule::random(p.excited, horizon, seed + stream);
      ++stream;
      try {
        const Trajectory t1 = simulate(dag, f1, sched);
        const Trajectory t2 = simulate(dag, f2, sched);
        for (NodeId m : p.measured) {
          for (int k = 1; k <= horizon; ++k) {
            const double dev = std::abs(t1.at(m, k) - t2.at(m, k));
            result.max_deviation = std::max(result.max_deviation, dev);
          }
        }
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Overflow || --resamples_left <= 0) throw;
      }
    }
    ++result.trials;
  }
  result.equal = result.max_deviation <= tol;
  return result;
}

std::string to_string(CollisionKind kind) {
  switch (kind) {
    case CollisionKind::FullCollision: return "FullCollision";
    case CollisionKind::PartialCollision: return "PartialCollision";
    case CollisionKind::AllDistinct: return "AllDistinct";
  }
  return "?";
}

std::vector<DelayCollision> delay_collision_report(const Dag& dag,
                                                   const IdentificationPattern& p) {
  std::vector<DelayCollision> report;
  for (NodeId j : p.excited) {
    for (const auto& [target, sums] : path_lag_multisets(dag, j)) {
      if (sums.size() < 2) continue;
      DelayCollision c;
      c.target = target;
      c.excited = j;
      c.path_count = static_cast<int>(sums.size());
      c.lags.insert(sums.begin(), sums.end());
      if (c.lags.size() == 1) {
        c.kind = CollisionKind::FullCollision;
      } else if (static_cast<int>(c.lags.size()) == c.path_count) {
        c.kind = CollisionKind::AllDistinct;
      } else {
        c.kind = CollisionKind::PartialCollision;
      }
      report.push_back(std::move(c));
    }
  }
  return report;
}

std::string trajectory_csv(const Trajectory& traj,
                           const std::vector<std::string>& names) {
  std::ostringstream out;
  const std::size_t n = traj.outputs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out << ",";
    if (i < names.size()) {
      out << names[i];
    } else {
      out << (i + 1);
    }
  }
  out << "\n";
  char buf[64];
  for (int k = 1; k <= traj.horizon; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i) out << ",";
      std::snprintf(buf, sizeof buf, "%.17g", traj.outputs[i][k - 1]);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace netident
