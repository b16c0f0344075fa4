#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmrac {

enum class ErrorCode {
  NoRangeSpace,
  NotHurwitz,
  SolveFailed,
  Uncontrollable,
  Unsupported,
  EigFailed,
  NotComplementary,
  RankDeficient,
  NumericalFault,
  Diverged,
  Config,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; the code lets callers
// (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoRangeSpace: return "NoRangeSpace";
    case ErrorCode::NotHurwitz: return "NotHurwitz";
    case ErrorCode::SolveFailed: return "SolveFailed";
    case ErrorCode::Uncontrollable: return "Uncontrollable";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::EigFailed: return "EigFailed";
    case ErrorCode::NotComplementary: return "NotComplementary";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NumericalFault: return "NumericalFault";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::Config: return "Config";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hmrac
