#pragma once

#include <stdexcept>
#include <string>

#include "scl/types.hpp"

namespace scl {

// Violated precondition or dimension mismatch: caller bug, message names the argument.
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a closed-form map.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iteration budget exhausted; carries the last measured gap so callers can decide
// whether the partial result is usable.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, Scalar gap)
      : std::runtime_error(what), final_gap(gap) {}
  Scalar final_gap;
};

// A readout row cannot be rescaled because its diagonal entry of G*Psi is ~0.
struct DegenerateDiagonalError : std::runtime_error {
  DegenerateDiagonalError(const std::string& what, Index which)
      : std::runtime_error(what), index(which) {}
  Index index;
};

// Malformed or truncated file; byte_offset is where parsing stopped.
struct FileFormatError : std::runtime_error {
  FileFormatError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what), byte_offset(offset) {}
  std::uint64_t byte_offset;
};

}  // namespace scl
