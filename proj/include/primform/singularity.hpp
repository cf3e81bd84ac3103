#ifndef PRIMFORM_SINGULARITY_HPP
#define PRIMFORM_SINGULARITY_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "primform/groebner.hpp"
#include "primform/linalg.hpp"
#include "primform/mpoly.hpp"

namespace primform {

enum class SingularityMode { Polynomial, LaurentP1 };

struct SingularityData {
  SingularityMode mode = SingularityMode::Polynomial;
  MPoly f;
  std::optional<WeightSystem> weights;
  std::vector<MPoly> partials;
  GroebnerBasis groebner;
  MPoly lambda;  // volume twist: 1, or z in the Laurent case
  Rat q;         // Laurent case only: f = z + q/z

  // Standard monomials in basis order, and the basis phi_i as combinations of
  // same-degree standard monomials (rows of basis_to_standard).
  std::vector<Exponents> standard;
  std::vector<MPoly> basis;
  std::vector<Rat> degrees;
  int mu = 0;
  Rat s;
  Rat residue_scale;
  bool orthogonal = false;

  QMatrix basis_to_standard;
  QMatrix standard_to_basis;

  std::optional<std::size_t> standard_index(const Exponents& e) const;
  // phi-coordinates of a polynomial supported on standard monomials.
  std::vector<Rat> coordinates(const MPoly& reduced) const;
  std::vector<Rat> coordinates_of_standard(const std::vector<Rat>& standard_coeffs) const;

  std::unordered_map<Exponents, std::size_t, ExponentsHash> standard_pos;
};

struct AnalyzeOptions {
  std::size_t monomial_bound = 10000;
  bool orthogonalize = true;
  // When false, an orthogonalization failure leaves the raw basis in place.
  bool require_orthogonal = false;
};

// Weights q with f quasi-homogeneous of degree 1, when f pins them down.
WeightSystem infer_weights(const MPoly& f);

// Checks the Euler identity and returns the central charge sum(1 - 2 q_i).
Rat validate(const MPoly& f, const WeightSystem& w);

std::vector<Exponents> standard_monomials(const GroebnerBasis& gb, std::size_t nvars, std::size_t bound = 10000);

SingularityData analyze_singularity(const MPoly& f, const WeightSystem& w, const AnalyzeOptions& opts = {});

// f = z + q/z on C*, volume form dz/z, basis {1, q/z}.
SingularityData mirror_p1(const Rat& q);

MPoly hessian_determinant(const MPoly& f);

Rat classical_residue(const MPoly& g, const SingularityData& data);
QMatrix residue_pairing_matrix(const SingularityData& data);

// Replaces basis vectors by same-degree combinations so that the residue
// pairing becomes anti-diagonal. Slices that already are stay untouched.
void orthogonalize_basis(SingularityData& data);

// Hyperbolic normalization of a symmetric Gram matrix on one middle slice;
// returns the change of basis X (new vectors are rows of X times the old ones).
QMatrix orthogonalize_middle_slice(const QMatrix& gram);

bool is_anti_diagonal(const QMatrix& m);

}  // namespace primform

#endif  // PRIMFORM_SINGULARITY_HPP
