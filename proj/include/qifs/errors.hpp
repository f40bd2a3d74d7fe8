#pragma once

#include <stdexcept>
#include <string>

namespace qifs {

// Failure classes surfaced by the library. Input/contract problems are kept
// separate from numerical failures so callers (notably the CLI) can map them
// to distinct exit codes.
enum class ErrorCode {
  BadInput,             // malformed matrices, dimension mismatch, domain errors
  PreconditionUnmet,    // an operation's applicability condition fails
  NotNormalized,        // a weight family does not sum to the identity
  DegenerateBranch,     // branch map hit a zero-trace image with nonzero weight
  ZeroImage,            // an iteration produced a zero-trace matrix
  NonConvergence,       // iteration budget exhausted before tolerance
  CapExceeded,          // word-enumeration budget exceeded
  Reducible,            // stochastic matrix is not irreducible
  EmbeddingDegenerate,  // embedding input has zero/negative entries
  CoordinateDegenerate, // coordinate-form pressure ratio undefined
  DegeneratePotential,  // potential family produced a non-positive trace
  Infeasible,           // constrained search has empty feasible set
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True when the failure reflects bad input/contract violation rather than a
// numerical breakdown; drives the CLI's exit-code split.
bool is_input_error(ErrorCode code);

}  // namespace qifs
