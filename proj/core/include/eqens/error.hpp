#pragma once

#include <stdexcept>
#include <string>

namespace eqens {

enum class ErrorKind {
  OutOfDomain,
  DomainError,
  InfeasibleConstraint,
  DegenerateCorrelation,
  IntervalMismatch,
  CapExceeded,
  NoConvergence,
  GridTooCoarse,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported through this exception; `kind()` lets
// callers (the CLI in particular) map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eqens
