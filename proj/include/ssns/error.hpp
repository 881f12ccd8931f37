#pragma once

#include <stdexcept>
#include <string>

namespace ssns {

/// Bad input: a violated precondition, malformed file or inconsistent
/// configuration. The CLI maps it to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure while computing on valid input (CFL collapse, non-finite values,
/// I/O failure). The CLI maps it to exit code 2.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ssns
