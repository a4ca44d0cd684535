#pragma once

#include <stdexcept>
#include <string>

namespace pappus {

/// Input violated an operation's precondition (bad shape, bad index, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input; message carries file/line context when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or iterative method exceeded its cap. Distinct from a negative
/// answer: the question is left unresolved.
class SearchLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure inside a solver (cycling, certificate that does not
/// re-verify). Distinct from infeasibility.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pappus
