#include "netident/funclib.hpp"

#include <cmath>
#include <cstdlib>

#include "netident/errors.hpp"
#include "netident/rng.hpp"

namespace netident {

EdgeFunction::EdgeFunction(std::vector<double> coeffs, int delay)
    : coeffs_(std::move(coeffs)), delay_(delay) {
  if (delay_ < 1) {
    throw Error(ErrorCode::Invariant, "edge function delay must be >= 1");
  }
  for (double a : coeffs_) {
    if (!std::isfinite(a)) {
      throw Error(ErrorCode::Invariant, "edge function coefficient is not finite");
    }
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (static_cast<int>(coeffs_.size()) > kDegreeCap) {
    throw Error(ErrorCode::ClassViolation,
                "polynomial degree " + std::to_string(coeffs_.size()) +
                    " exceeds the cap of " + std::to_string(kDegreeCap));
  }
}

bool EdgeFunction::is_monomial() const {
  int nonzero = 0;
  for (double a : coeffs_) nonzero += (a != 0.0);
  return nonzero == 1;
}

double EdgeFunction::leading_coefficient() const {
  return coeffs_.empty() ? 0.0 : coeffs_.back();
}

double EdgeFunction::coefficient(int n) const {
  if (n < 1 || n > degree()) return 0.0;
  return coeffs_[n - 1];
}

double eval(const EdgeFunction& f, double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::Overflow, "edge function evaluated at a non-finite point");
  }
  const auto& a = f.coefficients();
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc * x;  // implicit a_0 = 0
}

double derivative(const EdgeFunction& f, double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::Overflow, "derivative evaluated at a non-finite point");
  }
  const auto& a = f.coefficients();
  double acc = 0.0;
  for (int n = f.degree(); n >= 1; --n) acc = acc * x + n * a[n - 1];
  return acc;
}

std::string to_string(ClassViolation v) {
  switch (v) {
    case ClassViolation::None: return "None";
    case ClassViolation::ZeroViolation: return "ZeroViolation";
    case ClassViolation::PurelyLinear: return "PurelyLinear";
    case ClassViolation::NotSurjective: return "NotSurjective";
  }
  return "?";
}

ClassCheckResult validate_class(const EdgeFunction& f) {
  bool has_nonlinear = false;
  for (int n = 2; n <= f.degree(); ++n) {
    if (f.coefficient(n) != 0.0) {
      has_nonlinear = true;
      break;
    }
  }
  if (!has_nonlinear) {
    return {false, ClassViolation::PurelyLinear,
            f.is_zero() ? "function is identically zero"
                        : "no nonzero coefficient a_n with n > 1"};
  }
  if (f.degree() % 2 == 0) {
    return {false, ClassViolation::NotSurjective,
            "effective degree " + std::to_string(f.degree()) +
                " is even; the range cannot be all of R"};
  }
  return {true, ClassViolation::None, ""};
}

double invert_monomial(const EdgeFunction& f, double y) {
  if (!f.is_monomial()) {
    throw Error(ErrorCode::Unsupported,
                "InversionUnsupported: function is not a pure monomial");
  }
  const int n = f.degree();
  const double a = f.leading_coefficient();
  if (n % 2 == 0) {
    throw Error(ErrorCode::Unsupported,
                "InversionUnsupported: even monomials are not invertible on R");
  }
  if (!std::isfinite(y)) {
    throw Error(ErrorCode::Overflow, "inversion target is not finite");
  }
  const double ratio = y / a;
  const double mag = std::pow(std::abs(ratio), 1.0 / n);
  return ratio < 0 ? -mag : mag;
}

EdgeFunction random_function(std::uint64_t seed, int degree, int delay) {
  if (degree < 3 || degree % 2 == 0) {
    throw Error(ErrorCode::Invariant,
                "random functions need an odd degree >= 3, got " +
                    std::to_string(degree));
  }
  Rng rng(mix_seed(seed, 0x66756e63ull));
  std::vector<double> coeffs(degree);
  for (double& a : coeffs) a = rng.uniform_excluding(0.1, 2.0);
  return EdgeFunction(std::move(coeffs), delay);
}

FunctionSet FunctionSet::for_dag(const Dag& dag, std::map<EdgeKey, EdgeFunction> funcs) {
  for (const Edge& e : dag.edges()) {
    auto it = funcs.find(key_of(e));
    if (it == funcs.end()) {
      throw Error(ErrorCode::Invariant,
                  "edge (" + std::to_string(e.head) + "," + std::to_string(e.tail) +
                      ") has no function; every edge carries a nonzero function");
    }
    if (it->second.delay() != e.delay) {
      throw Error(ErrorCode::Invariant,
                  "function delay mismatch on edge (" + std::to_string(e.head) + "," +
                      std::to_string(e.tail) + ")");
    }
    const ClassCheckResult check = validate_class(it->second);
    if (!check.ok) {
      throw Error(ErrorCode::ClassViolation,
                  "edge (" + std::to_string(e.head) + "," + std::to_string(e.tail) +
                      ") function violates the class: " +
                      to_string(check.first_violation) + " (" + check.detail + ")");
    }
  }
  if (funcs.size() != dag.edges().size()) {
    throw Error(ErrorCode::Invariant,
                "function set mentions edges that are not in the graph");
  }
  return FunctionSet(std::move(funcs));
}

FunctionSet FunctionSet::random_cubics(const Dag& dag, std::uint64_t seed) {
  std::map<EdgeKey, EdgeFunction> funcs;
  std::uint64_t index = 0;
  for (const Edge& e : dag.edges()) {
    funcs.emplace(key_of(e), random_function(mix_seed(seed, index++), 3, e.delay));
  }
  return FunctionSet(std::move(funcs));
}

const EdgeFunction& FunctionSet::at(const EdgeKey& key) const {
  auto it = funcs_.find(key);
  if (it == funcs_.end()) {
    throw Error(ErrorCode::Invariant,
                "no function for edge (" + std::to_string(key.first) + "," +
                    std::to_string(key.second) + ")");
  }
  return it->second;
}

FunctionSet FunctionSet::with_replaced(const EdgeKey& key, EdgeFunction f) const {
  const EdgeFunction& old = at(key);
  std::map<EdgeKey, EdgeFunction> copy = funcs_;
  copy.erase(key);
  copy.emplace(key, f.with_delay(old.delay()));
  return FunctionSet(std::move(copy));
}

bool FunctionSet::all_monomials() const {
  for (const auto& [key, f] : funcs_) {
    if (!f.is_monomial()) return false;
  }
  return true;
}

}  // namespace netident
