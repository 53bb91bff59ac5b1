#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankshift {

/// Machine-readable codes shared by thrown errors and validation violations.
enum class ErrorCode {
  ShapeMismatch,
  NonBinaryEntry,
  ZeroMatrix,
  NoSources,
  UniqueFactorizationViolation,
  CubeInconsistency,
  InvalidFamily,
  ZeroDirection,
  NotSquare,
  NegativeEntry,
  ShapeNotDominated,
  InvalidWord,
  OriginMismatch,
  NonUniqueFilling,
  NoFilling,
  BudgetExceeded,
  ScaleTooFine,
  RankOne,
  WindowTooWide,
  ShapeTooSmall,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace rankshift
