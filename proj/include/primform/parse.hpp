#ifndef PRIMFORM_PARSE_HPP
#define PRIMFORM_PARSE_HPP

#include <string>

#include "primform/mpoly.hpp"
#include "primform/primitive.hpp"

namespace primform {

// Grammar: sums and products of factors; a factor is an integer or p/q
// literal, a variable, or a parenthesised expression, optionally raised to an
// integer power (negative powers only on Laurent variables). Division of
// anything other than two integer literals is a ParseError.
MPoly parse_polynomial(const std::string& text, const VarsPtr& vars);

// Parses an expression in the singularity variables, the unfolding
// parameters (by name) and t into a representative.
Representative parse_representative(const std::string& text, const UnfoldingData& unf);

}  // namespace primform

#endif  // PRIMFORM_PARSE_HPP
