#ifndef PRIMFORM_MODULI_HPP
#define PRIMFORM_MODULI_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "primform/linalg.hpp"
#include "primform/mpoly.hpp"
#include "primform/singularity.hpp"

namespace primform {

int dimension_D(const std::vector<Rat>& degrees);

enum class ParameterKind { Free, Determined, AutoVanishing };

std::string to_string(ParameterKind k);

struct ModuliParameter {
  int i = 0;  // 1-based
  int j = 0;
  Rat r;       // d_i - d_j
  int step = 0;  // i - j
  ParameterKind kind = ParameterKind::Free;
  MPoly value;  // in the free c_i_j and the unknown a_k_l; zero unless Determined
  std::vector<std::string> constants;  // unknown a_k_l referenced by value
};

struct ModuliReport {
  std::vector<std::vector<Rat>> steps;  // r(i,j)
  int D = 0;
  std::vector<ModuliParameter> parameters;  // by step, then (i, j)
  std::set<std::string> unknown_constants;

  std::vector<std::pair<int, int>> of_kind(ParameterKind k) const;
};

// Known higher residue constants: K(phi_k, phi_l) = value * t^{d_k + d_l - s},
// keyed by 1-based (k, l). Only entries with d_k + d_l - s a positive integer
// may be supplied.
using PairingConstants = std::map<std::pair<int, int>, Rat>;

// Classifies every admissible c_ij. Needs an anti-diagonal residue matrix.
ModuliReport y_constraints(const SingularityData& data, const PairingConstants& constants = {});

// Same, from ascending degrees, the central charge and the residue matrix.
ModuliReport y_constraints(const std::vector<Rat>& degrees, const Rat& s, const QMatrix& residue,
                           const PairingConstants& constants = {});

}  // namespace primform

#endif  // PRIMFORM_MODULI_HPP
