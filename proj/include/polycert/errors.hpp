#pragma once

#include <stdexcept>
#include <string>

namespace polycert {

// Machine-readable failure categories. Every throwing path in the checker
// uses one of these so that reports and exit codes stay scriptable.
enum class ErrCode {
  MalformedNumber,
  DivisionByZeroPoly,
  PrecondViolation,
  SinCosErrorTooLarge,
  NotSquarefree,
  DegreeTooSmall,
  EndpointZero,
  ZeroValidationFailed,
  OracleDepthExceeded,
  ParseError,
  MultipleVariables,
  UnknownFunction,
  InvertedInterval,
  RangeTooLarge,
};

inline const char* errCodeName(ErrCode c) {
  switch (c) {
    case ErrCode::MalformedNumber: return "malformed_number";
    case ErrCode::DivisionByZeroPoly: return "division_by_zero_poly";
    case ErrCode::PrecondViolation: return "precond_violation";
    case ErrCode::SinCosErrorTooLarge: return "sin_cos_error_too_large";
    case ErrCode::NotSquarefree: return "not_squarefree";
    case ErrCode::DegreeTooSmall: return "degree_too_small";
    case ErrCode::EndpointZero: return "endpoint_zero";
    case ErrCode::ZeroValidationFailed: return "zero_validation_failed";
    case ErrCode::OracleDepthExceeded: return "oracle_depth_exceeded";
    case ErrCode::ParseError: return "parse_error";
    case ErrCode::MultipleVariables: return "multiple_variables";
    case ErrCode::UnknownFunction: return "unknown_function";
    case ErrCode::InvertedInterval: return "inverted_interval";
    case ErrCode::RangeTooLarge: return "range_too_large";
  }
  return "unknown";
}

class CheckError : public std::runtime_error {
 public:
  CheckError(ErrCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrCode code() const { return code_; }

 private:
  ErrCode code_;
};

}  // namespace polycert
