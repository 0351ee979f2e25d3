#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewcliff {

enum class ErrorKind {
  CompositeModulus,
  DegreeOverflow,
  NotHomogeneous,
  ZeroEntry,
  NotMuSymmetric,
  DiagonalSingular,
  CharTwo,
  NotQuadratic,
  BudgetExceeded,
  NotSquare,
  NotSingular,
  WrongDimensions,
  ZeroCount,
  TooShort,
  BadParams,
  Unsupported,
  NotNormalizing,
  ParseError,
  ValidationError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CompositeModulus: return "CompositeModulus";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::ZeroEntry: return "ZeroEntry";
    case ErrorKind::NotMuSymmetric: return "NotMuSymmetric";
    case ErrorKind::DiagonalSingular: return "DiagonalSingular";
    case ErrorKind::CharTwo: return "CharTwo";
    case ErrorKind::NotQuadratic: return "NotQuadratic";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotSingular: return "NotSingular";
    case ErrorKind::WrongDimensions: return "WrongDimensions";
    case ErrorKind::ZeroCount: return "ZeroCount";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotNormalizing: return "NotNormalizing";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace skewcliff
