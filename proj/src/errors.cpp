#include "primform/errors.hpp"

namespace primform {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::TruncationMismatch: return "TruncationMismatch";
    case ErrorCode::LaurentNotAllowed: return "LaurentNotAllowed";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::EulerIdentityViolated: return "EulerIdentityViolated";
    case ErrorCode::NonIsolated: return "NonIsolated";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::OrthogonalizationUnavailable: return "OrthogonalizationUnavailable";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::LaurentModeRequired: return "LaurentModeRequired";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::OverrideConstantTerm: return "OverrideConstantTerm";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::ForbiddenOppositeParameter: return "ForbiddenOppositeParameter";
    case ErrorCode::InconsistentConstants: return "InconsistentConstants";
    case ErrorCode::ExpansionDepthInsufficient: return "ExpansionDepthInsufficient";
    case ErrorCode::SolveIdentityViolated: return "SolveIdentityViolated";
    case ErrorCode::UnsupportedContext: return "UnsupportedContext";
    case ErrorCode::InvalidJob: return "InvalidJob";
  }
  return "Unknown";
}

}  // namespace primform
