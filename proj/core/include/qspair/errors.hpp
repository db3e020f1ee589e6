#ifndef QSPAIR_ERRORS_HPP
#define QSPAIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qspair {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Division by a zero scalar or polynomial.
struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& what = "division by zero") : Error(what) {}
};

// A precondition on the inputs fails (rank mismatch, non-integral weight, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A structural property that is supposed to hold unconditionally failed.
// Seeing this exception means a bug, not a bad input.
struct StructuralViolation : Error {
  explicit StructuralViolation(const std::string& what) : Error(what) {}
};

// A configured resource cap (module dimension, orbit size, ...) was exceeded.
struct ResourceLimit : Error {
  explicit ResourceLimit(const std::string& what) : Error(what) {}
};

}  // namespace qspair

#endif
