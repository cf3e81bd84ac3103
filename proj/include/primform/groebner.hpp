#ifndef PRIMFORM_GROEBNER_HPP
#define PRIMFORM_GROEBNER_HPP

#include <vector>

#include "primform/mpoly.hpp"

namespace primform {

// Reduced Groebner basis (grevlex) where each element remembers how it was
// built from the original generators:
//   elements[k] == sum_i cofactors[k][i] * generators[i].
struct GroebnerBasis {
  std::vector<MPoly> generators;
  std::vector<MPoly> elements;
  std::vector<std::vector<MPoly>> cofactors;

  struct Division {
    MPoly remainder;
    std::vector<MPoly> quotients;  // over generators: h == remainder + sum q_i g_i
  };

  Division divide(const MPoly& h) const;
  MPoly normal_form(const MPoly& h) const;
  // True when no leading monomial divides e.
  bool is_standard(const Exponents& e) const;
};

GroebnerBasis groebner_with_cofactors(const std::vector<MPoly>& gens);

}  // namespace primform

#endif  // PRIMFORM_GROEBNER_HPP
