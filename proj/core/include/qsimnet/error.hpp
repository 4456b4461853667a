#pragma once

#include <stdexcept>
#include <string>

namespace qsimnet {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  invalid_input,       // malformed or non-physical input (non-Hermitian, bad norm, ...)
  dimension_mismatch,
  singular_matrix,     // an inverse the computation needs does not exist
  precondition,        // a requested route does not apply to this input
  infeasible,          // no circuit of the requested form exists
  integration,         // adaptive integrator gave up
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qsimnet
