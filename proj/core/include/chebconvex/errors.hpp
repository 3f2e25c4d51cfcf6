#pragma once

#include <stdexcept>
#include <string>

namespace chebconvex {

enum class ErrorCode {
  NotStrictlyOrdered,
  OutOfDomain,
  DomainTooLong,
  DomainNotPositive,
  PositivityViolation,
  DenominatorNotPositive,
  EvaluationOffGrid,
  GridTooSmall,
  StepExceedsDomain,
  FactorialBlowup,
  NonpositiveStep,
  NonpositiveH,
  InconsistentOracle,
  NoAdmissibleConfiguration,
  TableFunctionNotAdmissible,
  ExtensionRequired,
  DimensionMismatch,
  BadSpec,
  UnsupportedFormat,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotStrictlyOrdered: return "not-strictly-ordered";
    case ErrorCode::OutOfDomain: return "out-of-domain";
    case ErrorCode::DomainTooLong: return "domain-too-long";
    case ErrorCode::DomainNotPositive: return "domain-not-positive";
    case ErrorCode::PositivityViolation: return "positivity-violation";
    case ErrorCode::DenominatorNotPositive: return "denominator-not-positive";
    case ErrorCode::EvaluationOffGrid: return "evaluation-off-grid";
    case ErrorCode::GridTooSmall: return "grid-too-small";
    case ErrorCode::StepExceedsDomain: return "step-exceeds-domain";
    case ErrorCode::FactorialBlowup: return "factorial-blowup";
    case ErrorCode::NonpositiveStep: return "nonpositive-step";
    case ErrorCode::NonpositiveH: return "nonpositive-h";
    case ErrorCode::InconsistentOracle: return "inconsistent-oracle";
    case ErrorCode::NoAdmissibleConfiguration: return "no-admissible-configuration";
    case ErrorCode::TableFunctionNotAdmissible: return "table-function-not-admissible";
    case ErrorCode::ExtensionRequired: return "extension-required";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::BadSpec: return "bad-spec";
    case ErrorCode::UnsupportedFormat: return "unsupported-format";
  }
  return "unknown";
}

/// Library error carrying a stable machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace chebconvex
