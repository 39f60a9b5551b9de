#pragma once

#include <stdexcept>
#include <string>

namespace milnorkit {

// Shape or argument mismatch (wrong ring, wrong variable count, bad input).
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operation applied outside its mathematical domain
// (non-unit inverse, substitution image with unit constant term, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A colength / homology computation did not stabilize below the working
// precision.  `degree` is the complex degree at fault, or 0 for ideals.
struct NotFiniteLengthError : std::runtime_error {
  int degree;
  explicit NotFiniteLengthError(const std::string& what, int deg = 0)
      : std::runtime_error(what), degree(deg) {}
};

// The working precision (degree bound or uniformizer precision) is too small
// to certify the requested result.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A perturbation handed to the Newton iteration does not agree with the base
// germ to the required jet order.
struct JetBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A graded linear solve inside the Newton iteration had no solution at the
// required order.
struct LinearSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace milnorkit
