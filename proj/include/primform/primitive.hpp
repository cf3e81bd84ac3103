#ifndef PRIMFORM_PRIMITIVE_HPP
#define PRIMFORM_PRIMITIVE_HPP

#include <map>
#include <string>
#include <vector>

#include "primform/brieskorn.hpp"
#include "primform/kernels.hpp"
#include "primform/unfolding.hpp"

namespace primform {

// (a+1) x (a+1) grid of mu x mu blocks, stored flat: block(p,q) = A^{(q-p)} - delta_pq Id.
struct PsiMatrix {
  RingPtr ring;
  int mu = 0;
  int a = 0;
  int N = 0;
  RMatrix entries;

  std::size_t size() const { return entries.size(); }
  const UnfoldRingElem& block_entry(int p, int q, int i, int j) const { return entries[p * mu + i][q * mu + j]; }
};

PsiMatrix assemble_psi(const OscillatorMatrices& osc, int N);

// Row vector g with g (Id + Psi) = e, via the finite Neumann series.
RRow neumann_solve(const PsiMatrix& psi, const Pruner* pruner = nullptr, ExecPolicy policy = ExecPolicy::Parallel);

// g (Id + Psi) - e; zero for a correct solve.
RRow solve_residual(const RRow& g, const PsiMatrix& psi, const Pruner* pruner = nullptr);

struct PrimitiveRecord {
  int t_power;
  int basis_index;  // 1-based
  std::string u_monomial;
  Rat coefficient;
};

struct PrimitiveFormExpansion {
  RingPtr ring;
  int mu = 0;
  int a = 0;
  int N = 0;
  std::vector<RRow> g;  // g[i] multiplies t^i
  OppositeParameters c;
  std::vector<Rat> degrees;

  std::vector<PrimitiveRecord> records() const;
  std::string pretty(const std::vector<std::string>& basis_names) const;
};

struct PrimitiveOptions {
  bool prune = true;
  ExecPolicy policy = ExecPolicy::Parallel;
};

PrimitiveFormExpansion primitive_form(const UnfoldingData& unf, const Reducer& reducer, const OppositeParameters& c = {},
                                      const PrimitiveOptions& opts = {});

// t-power -> z-polynomial over R
using Representative = std::map<int, ZRPoly>;

// sum_i t^i g^(i) Phi written back on z-polynomials.
Representative as_representative(const PrimitiveFormExpansion& zeta, const SingularityData& base,
                                 const OppositeBasisChange& change);

struct VerifyResult {
  bool pass = false;
  RLattice defect;  // nonnegative t-part minus the unit vector, Phi coordinates
};

VerifyResult verify_primitive(const Representative& rep, const UnfoldingData& unf, const Reducer& reducer,
                              const OppositeParameters& c = {}, const PrimitiveOptions& opts = {});

bool verify_class_equal(const Representative& rep1, const Representative& rep2, const UnfoldingData& unf,
                        const Reducer& reducer, const OppositeParameters& c = {}, const PrimitiveOptions& opts = {});

// Largest weighted degree t^p z^b u^g over the terms of rep.
Rat representative_degree_max(const Representative& rep, const UnfoldingData& unf);

}  // namespace primform

#endif  // PRIMFORM_PRIMITIVE_HPP
