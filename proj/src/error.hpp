#pragma once

#include <stdexcept>
#include <string>

namespace qent {

enum class ErrorCode {
  BadInput,
  NotHermitian,
  NotPsd,
  TraceNotOne,
  NotUnitary,
  DimensionMismatch,
  NotMajorized,
  Infeasible,
  NoBracket,
  DegenerateQ,
  TooLarge,
  TailNotSummable,
  OracleInvalid,
  VerificationFailed,
  Unphysical,
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPSD";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotMajorized: return "NotMajorized";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::DegenerateQ: return "DegenerateQ";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TailNotSummable: return "TailNotSummable";
    case ErrorCode::OracleInvalid: return "OracleInvalid";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::Unphysical: return "Unphysical";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace qent
