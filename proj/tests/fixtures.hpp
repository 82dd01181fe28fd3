// In-code copies of the reference networks used across the test suites.
#pragma once

#include <map>
#include <vector>

#include "netident/funclib.hpp"
#include "netident/graph.hpp"
#include "netident/patterns.hpp"

namespace fixtures {

using netident::Dag;
using netident::Edge;
using netident::EdgeFunction;
using netident::EdgeKey;
using netident::FunctionSet;
using netident::IdentificationPattern;
using netident::NodeId;

inline EdgeFunction monomial(double coeff, int degree, int delay = 1) {
  std::vector<double> c(degree, 0.0);
  c[degree - 1] = coeff;
  return EdgeFunction(c, delay);
}

inline EdgeFunction cubic(double coeff, int delay = 1) {
  return monomial(coeff, 3, delay);
}

// Six-node model graph: two parallel diamonds joined at node 6, nodes 4 and 6
// both excited and measured.
inline Dag model6() {
  return Dag::create(6, {{2, 1, 1},
                         {3, 1, 1},
                         {3, 2, 1},
                         {4, 2, 1},
                         {5, 3, 1},
                         {6, 3, 1},
                         {6, 4, 1},
                         {6, 5, 1}});
}
inline IdentificationPattern model6_pattern() {
  return {{1, 4, 5, 6}, {2, 3, 4, 6}};
}

// Triangle 1 -> 2 -> 3 with shortcut 1 -> 3 and free delays.
inline Dag triangle(int m21, int m32, int m31) {
  return Dag::create(3, {{2, 1, m21}, {3, 1, m31}, {3, 2, m32}});
}
inline IdentificationPattern triangle_pattern() { return {{1}, {2, 3}}; }

// Nine-node multipartite layering 1,2 | 3,4,5 | 6,7 | 8,9.
inline Dag multipartite9(int delay = 1) {
  return Dag::create(9, {{3, 1, delay},
                         {4, 1, delay},
                         {5, 2, delay},
                         {6, 3, delay},
                         {7, 3, delay},
                         {7, 4, delay},
                         {7, 5, delay},
                         {8, 6, delay},
                         {8, 7, delay},
                         {9, 7, delay}});
}
inline IdentificationPattern multipartite9_pattern() {
  return {{1, 2, 3, 5, 6}, {4, 7, 8, 9}};
}

// Eight-node graph used for the measured-aware ordering.
inline Dag order8() {
  return Dag::create(8, {{2, 1, 1},
                         {2, 3, 1},
                         {3, 1, 1},
                         {4, 2, 1},
                         {4, 3, 1},
                         {5, 3, 1},
                         {5, 6, 1},
                         {6, 4, 1},
                         {7, 5, 1},
                         {7, 6, 1},
                         {7, 8, 1},
                         {8, 6, 1}});
}
inline IdentificationPattern order8_pattern() {
  return {{1, 2, 4, 6, 8}, {3, 5, 7}};
}

// Six-node join graph where proportional branches break identifiability:
// sources 1,2 feed 3 and 4; 3 relays through 5 into the join 6 that also
// takes 4 directly. The direct edge carries delay 2 so both branches hit the
// join with the same accumulated lag.
inline Dag join6() {
  return Dag::create(6, {{3, 1, 1},
                         {3, 2, 1},
                         {4, 1, 1},
                         {4, 2, 1},
                         {5, 3, 1},
                         {6, 4, 2},
                         {6, 5, 1}});
}
inline IdentificationPattern join6_pattern() { return {{1, 2}, {3, 4, 5, 6}}; }

// Proportional-branch functions with ratio gamma: the relay-side inputs are
// gamma times the direct-side ones; the join takes x^9 from the direct side
// so the swapped witness stays inside the polynomial class.
inline FunctionSet join6_collinear_funcs(double gamma = 2.0) {
  std::map<EdgeKey, EdgeFunction> f;
  f.emplace(EdgeKey{3, 1}, cubic(gamma));
  f.emplace(EdgeKey{3, 2}, cubic(gamma));
  f.emplace(EdgeKey{4, 1}, cubic(1.0));
  f.emplace(EdgeKey{4, 2}, cubic(1.0));
  f.emplace(EdgeKey{5, 3}, cubic(1.0));
  f.emplace(EdgeKey{6, 4}, monomial(1.0, 9, 2));
  f.emplace(EdgeKey{6, 5}, cubic(1.0));
  return FunctionSet::for_dag(join6(), std::move(f));
}

// Four-node bridge: source 1 feeds relays 2 and 3, which join at 4.
inline Dag bridge4() {
  return Dag::create(4, {{2, 1, 1}, {3, 1, 1}, {4, 2, 1}, {4, 3, 1}});
}
inline IdentificationPattern bridge4_pattern() { return {{1}, {2, 3, 4}}; }
inline FunctionSet bridge4_funcs(double a21, double a31, double a42, double a43) {
  std::map<EdgeKey, EdgeFunction> f;
  f.emplace(EdgeKey{2, 1}, cubic(a21));
  f.emplace(EdgeKey{3, 1}, cubic(a31));
  f.emplace(EdgeKey{4, 2}, cubic(a42));
  f.emplace(EdgeKey{4, 3}, cubic(a43));
  return FunctionSet::for_dag(bridge4(), std::move(f));
}

// Five-node graph where node 1 is fed by 2 and everything funnels into 5.
inline Dag funnel5() {
  return Dag::create(5, {{1, 2, 1}, {3, 1, 1}, {3, 2, 1}, {4, 2, 1}, {5, 3, 1}, {5, 4, 1}});
}
inline IdentificationPattern funnel5_pattern() { return {{1, 2}, {3, 4, 5}}; }

inline Dag chain3() { return Dag::create(3, {{2, 1, 1}, {3, 2, 1}}); }
inline Dag single_edge() { return Dag::create(2, {{2, 1, 1}}); }
inline Dag star3() { return Dag::create(3, {{2, 1, 1}, {3, 1, 1}}); }

}  // namespace fixtures
