#pragma once

#include <stdexcept>
#include <string>

namespace netident {

// Coarse failure families. The CLI maps these to distinct exit codes; library
// callers can switch on them without parsing messages.
enum class ErrorCode {
  Parse,           // malformed input document (syntax, unknown field, bad reference)
  Cycle,           // directed cycle found where a DAG is required
  ClassViolation,  // edge function outside the admissible function class
  Invariant,       // other structural invariant broken (duplicate edge, disconnect, ...)
  Unsupported,     // operation not defined for this input (e.g. non-monomial inversion)
  Overflow,        // non-finite value produced during numeric evaluation
  Refused,         // constructor precondition not met; request declined
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netident
