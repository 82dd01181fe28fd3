#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netident/graph.hpp"

namespace netident {

// Polynomial edge function f(x) = a_1 x + ... + a_d x^d. The constant term is
// identically zero by construction, which pins property f(0) = 0 of the
// admissible class. Each function remembers the delay of the edge it sits on.
class EdgeFunction {
 public:
  static constexpr int kDegreeCap = 9;

  // coeffs holds a_1..a_d; trailing zeros are trimmed. Throws on non-finite
  // coefficients, delay < 1, or degree above the cap.
  EdgeFunction(std::vector<double> coeffs, int delay);

  const std::vector<double>& coefficients() const { return coeffs_; }
  int delay() const { return delay_; }

  // Highest n with a_n != 0; zero for the identically-zero function.
  int degree() const { return static_cast<int>(coeffs_.size()); }
  bool is_zero() const { return coeffs_.empty(); }

  // Exactly one nonzero coefficient.
  bool is_monomial() const;
  double leading_coefficient() const;  // a_degree, 0 for the zero function
  double coefficient(int n) const;     // a_n, 0 outside the stored range

  EdgeFunction with_delay(int delay) const { return {coeffs_, delay}; }

  friend bool operator==(const EdgeFunction&, const EdgeFunction&) = default;

 private:
  std::vector<double> coeffs_;
  int delay_ = 1;
};

// Horner evaluation; exact for polynomials. Throws ErrorCode::Overflow when
// x is not finite.
double eval(const EdgeFunction& f, double x);

// Analytic derivative sum n a_n x^{n-1}.
double derivative(const EdgeFunction& f, double x);

enum class ClassViolation {
  None,
  ZeroViolation,   // nonzero constant term; unreachable with the implicit a_0 = 0
  PurelyLinear,    // no coefficient a_n != 0 with n > 1
  NotSurjective,   // even effective degree, range is not all of R
};

struct ClassCheckResult {
  bool ok = false;
  ClassViolation first_violation = ClassViolation::None;
  std::string detail;
};

std::string to_string(ClassViolation v);

// Membership in the admissible class under the polynomial restriction:
// zero at zero (by representation), at least one nonlinear coefficient, and
// odd degree with nonzero leading coefficient so the range is all of R.
// Surjectivity is decided symbolically from the degree parity, never
// numerically.
ClassCheckResult validate_class(const EdgeFunction& f);

// Inverse of a pure odd monomial a x^n: sign(y/a) |y/a|^{1/n}.
// Throws ErrorCode::Unsupported for anything else.
double invert_monomial(const EdgeFunction& f, double y);

// Seeded random class member of the given odd degree >= 3; coefficients are
// uniform on [-2,-0.1] ∪ [0.1,2] so magnitudes stay away from zero. Identical
// seeds give identical coefficients.
EdgeFunction random_function(std::uint64_t seed, int degree, int delay = 1);

// Edge functions keyed exactly by the companion DAG's edge set; an edge always
// carries a nonzero admissible function and mirrors its edge's delay.
class FunctionSet {
 public:
  // Empty set; real instances come from for_dag / random_cubics.
  FunctionSet() = default;

  // Validates coverage, delays, and class membership for every function.
  static FunctionSet for_dag(const Dag& dag, std::map<EdgeKey, EdgeFunction> funcs);

  // Independent random cubics, one per edge, derived from `seed`.
  static FunctionSet random_cubics(const Dag& dag, std::uint64_t seed);

  const EdgeFunction& at(const EdgeKey& key) const;
  const EdgeFunction& at(NodeId head, NodeId tail) const { return at({head, tail}); }

  // Copy with one function swapped; the replacement keeps the edge's delay.
  FunctionSet with_replaced(const EdgeKey& key, EdgeFunction f) const;

  const std::map<EdgeKey, EdgeFunction>& map() const { return funcs_; }
  auto begin() const { return funcs_.begin(); }
  auto end() const { return funcs_.end(); }
  std::size_t size() const { return funcs_.size(); }

  bool all_monomials() const;

  friend bool operator==(const FunctionSet&, const FunctionSet&) = default;

 private:
  explicit FunctionSet(std::map<EdgeKey, EdgeFunction> funcs)
      : funcs_(std::move(funcs)) {}

  std::map<EdgeKey, EdgeFunction> funcs_;
};

}  // namespace netident
