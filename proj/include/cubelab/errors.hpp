#pragma once
// Error taxonomy shared across the laboratory.
//
// GuardError      - a documented precondition or resource guard was violated
//                   (bad arguments, size limits, budget estimates).  The CLI
//                   maps these to exit code 1.
// InvariantError  - an internal mathematical invariant failed; this signals a
//                   bug or a falsified theorem, never bad user input.  The
//                   CLI maps these to exit code 2.
// BudgetError     - a wall-clock budget ran out mid-computation; carries
//                   whatever partial progress label the caller attached.
//                   Treated as a guard violation (exit code 1) with the
//                   partial results flagged.

#include <stdexcept>
#include <string>

namespace cubelab {

struct GuardError : std::invalid_argument {
  explicit GuardError(const std::string& what)
      : std::invalid_argument("guard: " + what) {}
};

struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& what)
      : std::logic_error("invariant: " + what) {}
};

struct BudgetError : GuardError {
  explicit BudgetError(const std::string& what)
      : GuardError("budget exceeded: " + what) {}
};

}  // namespace cubelab
