#include "curvelab/error.hpp"

namespace curvelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::UnsupportedSurface: return "UNSUPPORTED_SURFACE";
    case ErrorCode::WrongSurface: return "WRONG_SURFACE";
    case ErrorCode::EmptyAfterReduction: return "EMPTY_AFTER_REDUCTION";
    case ErrorCode::NotSimple: return "NOT_SIMPLE";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::NumericDegeneracy: return "NUMERIC_DEGENERACY";
    case ErrorCode::NotHyperbolic: return "NOT_HYPERBOLIC";
    case ErrorCode::BoundaryClass: return "BOUNDARY_CLASS";
    case ErrorCode::Uncertified: return "UNCERTIFIED";
    case ErrorCode::TangentAxes: return "TANGENT_AXES";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::RejectionStalled: return "REJECTION_STALLED";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace curvelab
