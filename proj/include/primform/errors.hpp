#ifndef PRIMFORM_ERRORS_HPP
#define PRIMFORM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace primform {

enum class ErrorCode {
  ParseError,
  UnknownVariable,
  DivisionByZero,
  Overflow,
  VariableMismatch,
  TruncationMismatch,
  LaurentNotAllowed,
  CapacityExceeded,
  InvalidWeights,
  EulerIdentityViolated,
  NonIsolated,
  DegeneratePairing,
  OrthogonalizationUnavailable,
  NonTermination,
  LaurentModeRequired,
  InvalidParameter,
  OverrideConstantTerm,
  GradingViolation,
  ForbiddenOppositeParameter,
  InconsistentConstants,
  ExpansionDepthInsufficient,
  SolveIdentityViolated,
  UnsupportedContext,
  InvalidJob,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as this exception; `module` names the
// component that raised it and ends up in the CLI error document.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace primform

#endif  // PRIMFORM_ERRORS_HPP
