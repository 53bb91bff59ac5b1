#include "rankshift/error.hpp"

namespace rankshift {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  case ErrorCode::NonBinaryEntry: return "NonBinaryEntry";
  case ErrorCode::ZeroMatrix: return "ZeroMatrix";
  case ErrorCode::NoSources: return "NoSources";
  case ErrorCode::UniqueFactorizationViolation: return "UniqueFactorizationViolation";
  case ErrorCode::CubeInconsistency: return "CubeInconsistency";
  case ErrorCode::InvalidFamily: return "InvalidFamily";
  case ErrorCode::ZeroDirection: return "ZeroDirection";
  case ErrorCode::NotSquare: return "NotSquare";
  case ErrorCode::NegativeEntry: return "NegativeEntry";
  case ErrorCode::ShapeNotDominated: return "ShapeNotDominated";
  case ErrorCode::InvalidWord: return "InvalidWord";
  case ErrorCode::OriginMismatch: return "OriginMismatch";
  case ErrorCode::NonUniqueFilling: return "NonUniqueFilling";
  case ErrorCode::NoFilling: return "NoFilling";
  case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  case ErrorCode::ScaleTooFine: return "ScaleTooFine";
  case ErrorCode::RankOne: return "RankOne";
  case ErrorCode::WindowTooWide: return "WindowTooWide";
  case ErrorCode::ShapeTooSmall: return "ShapeTooSmall";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

} // namespace rankshift
