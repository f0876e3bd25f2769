#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torustame {

enum class ErrorCode {
  // input errors
  Malformed,
  Dimension,
  NonInteger,
  InvalidArgument,
  DimensionMismatch,
  DivisionByZero,
  ZeroPolynomial,
  EmptyInput,
  // precondition errors
  ConstantTermZero,
  DeterminantNotUnit,
  StreamExhausted,
  // limits
  CapExceeded,
  // self-check failures
  Internal,
};

/// Coarse class of an error, used to pick a process exit status.
enum class ErrorClass { Input, Precondition, Limit, Internal };

std::string_view error_name(ErrorCode code);
ErrorClass error_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace torustame
