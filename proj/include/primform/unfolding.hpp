#ifndef PRIMFORM_UNFOLDING_HPP
#define PRIMFORM_UNFOLDING_HPP

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "primform/brieskorn.hpp"
#include "primform/kernels.hpp"
#include "primform/linalg.hpp"
#include "primform/singularity.hpp"
#include "primform/unfold_ring.hpp"

namespace primform {

struct UnfoldingData {
  std::shared_ptr<const SingularityData> base;
  int N = 0;
  std::vector<int> active;  // 0-based basis indices carrying a parameter
  RingPtr ring;             // one variable per active direction
  std::vector<UnfoldRingElem> psi;  // per basis direction; zero when inactive
  bool override_mode = false;
  ZRPoly deformation;  // F - f = sum_j psi_j phi_j

  // Ring variable index of basis direction j, if active.
  std::optional<std::size_t> variable_of(int j) const;
};

// Series coefficients a_0, a_1, ... of psi_j(u_j) = sum a_n u_j^n, keyed by
// 0-based basis index. a_0 must vanish.
using CoefficientOverrides = std::map<int, std::vector<Rat>>;

// 1-based basis indices in `mask`; empty mask means all directions.
UnfoldingData build_unfolding(std::shared_ptr<const SingularityData> base, int N, const std::vector<int>& mask = {},
                              const CoefficientOverrides& overrides = {});

// psi = e^u - 1 on the q/z direction, the exponential deformation of the P^1 mirror.
CoefficientOverrides exponential_override(int N);

// Name of the parameter attached to the 0-based basis direction j.
std::string parameter_name(const SingularityData& base, int j);

// Polynomials in t with rational matrix coefficients.
using TMatrix = std::map<int, QMatrix>;

struct OppositeBasisChange {
  TMatrix C;      // Phi = C phi
  TMatrix C_inv;
  int max_shift = 0;  // largest t-power occurring in C_inv
};

// c keyed by 1-based (i, j).
using OppositeParameters = std::map<std::pair<int, int>, Rat>;

OppositeBasisChange opposite_basis_change(const SingularityData& base, const OppositeParameters& c);

struct OscillatorMatrices {
  RingPtr ring;
  int mu = 0;
  int a = 0;
  std::map<int, RMatrix> A;  // t-power k -> A^{(k)}

  const RMatrix* at(int k) const;
};

int a_bound(const SingularityData& base, int N);

struct EngineOptions {
  bool prune = true;
  ExecPolicy policy = ExecPolicy::Parallel;
};

// Expands e^{(F-f)/t} on representatives: powers (F-f)^k are computed once.
class OscillatorEngine {
 public:
  OscillatorEngine(const UnfoldingData& unf, const Reducer& reducer, std::optional<Pruner> pruner,
                   ExecPolicy policy = ExecPolicy::Parallel);

  const ZRPoly& power(int k) const { return powers_.at(k); }
  // Central reduction of e^{(F-f)/t} * rep, rep given as t-power -> z-polynomial over R.
  RLattice image(const std::map<int, ZRPoly>& rep) const;
  OscillatorMatrices matrices() const;

  const UnfoldingData& unfolding() const { return *unf_; }

 private:
  const UnfoldingData* unf_;
  const Reducer* reducer_;
  std::optional<Pruner> pruner_;
  ExecPolicy policy_;
  std::vector<ZRPoly> powers_;
};

// Builds the matrices and checks the a-bound, the grading identity and the
// u = 0 limit.
OscillatorMatrices oscillator_matrices(const UnfoldingData& unf, const Reducer& reducer, const EngineOptions& opts = {});

// A_Phi = C A C^{-1}; t-powers above a must vanish and are dropped.
OscillatorMatrices conjugate(const OscillatorMatrices& osc, const OppositeBasisChange& change);

// w = v * M(t) for an R-lattice row v.
RLattice apply_tmatrix(const RLattice& v, const TMatrix& m);

// Pruner keeping what can still contribute to the primitive form.
std::optional<Pruner> primitive_pruner(const UnfoldingData& unf, int a);

}  // namespace primform

#endif  // PRIMFORM_UNFOLDING_HPP
