#include "torustame/error.hpp"

namespace torustame {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Malformed: return "MALFORMED";
    case ErrorCode::Dimension: return "DIMENSION";
    case ErrorCode::NonInteger: return "NONINTEGER";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::ZeroPolynomial: return "ZERO_POLYNOMIAL";
    case ErrorCode::EmptyInput: return "EMPTY_INPUT";
    case ErrorCode::ConstantTermZero: return "CONSTANT_TERM_ZERO";
    case ErrorCode::DeterminantNotUnit: return "DETERMINANT_NOT_UNIT";
    case ErrorCode::StreamExhausted: return "STREAM_EXHAUSTED";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

ErrorClass error_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConstantTermZero:
    case ErrorCode::DeterminantNotUnit:
    case ErrorCode::StreamExhausted:
      return ErrorClass::Precondition;
    case ErrorCode::CapExceeded:
      return ErrorClass::Limit;
    case ErrorCode::Internal:
      return ErrorClass::Internal;
    default:
      return ErrorClass::Input;
  }
}

}  // namespace torustame
