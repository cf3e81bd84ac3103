#include "primform/primitive.hpp"

#include <algorithm>
#include <sstream>

#include "primform/errors.hpp"

namespace primform {

PsiMatrix assemble_psi(const OscillatorMatrices& osc, int N) {
  PsiMatrix psi;
  psi.ring = osc.ring;
  psi.mu = osc.mu;
  psi.a = osc.a;
  psi.N = N;
  const int n = (osc.a + 1) * osc.mu;
  psi.entries.assign(n, RRow(n, UnfoldRingElem(osc.ring)));
  for (int p = 0; p <= osc.a; ++p)
    for (int q = 0; q <= osc.a; ++q) {
      const RMatrix* A = osc.at(q - p);
      for (int i = 0; i < osc.mu; ++i)
        for (int j = 0; j < osc.mu; ++j) {
          UnfoldRingElem x = A ? (*A)[i][j] : UnfoldRingElem(osc.ring);
          if (p == q && i == j) x -= UnfoldRingElem::constant(osc.ring, Rat(1));
          psi.entries[p * osc.mu + i][q * osc.mu + j] = std::move(x);
        }
    }
  for (const auto& row : psi.entries)
    for (const auto& x : row)
      if (!x.constant_term().is_zero())
        throw Error(ErrorCode::GradingViolation, "primitive", "Psi has an entry outside the maximal ideal");
  return psi;
}

RRow neumann_solve(const PsiMatrix& psi, const Pruner* pruner, ExecPolicy policy) {
  const std::size_t n = psi.size();
  RRow v(n, UnfoldRingElem(psi.ring));
  v[0] = UnfoldRingElem::constant(psi.ring, Rat(1));
  RRow g = v;
  for (int k = 1; k <= psi.N; ++k) {
    RRow next = policy == ExecPolicy::Serial ? row_times_matrix_serial(v, psi.entries, psi.ring, pruner)
                                             : row_times_matrix_parallel(v, psi.entries, psi.ring, pruner);
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = -next[j];
      if (!next[j].is_zero()) zero = false;
      g[j] += next[j];
    }
    if (zero) break;
    v = std::move(next);
  }
  return g;
}

RRow solve_residual(const RRow& g, const PsiMatrix& psi, const Pruner* pruner) {
  RRow r = row_times_matrix_serial(g, psi.entries, psi.ring, pruner);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += g[j];
  r[0] -= UnfoldRingElem::constant(psi.ring, Rat(1));
  return r;
}

std::vector<PrimitiveRecord> PrimitiveFormExpansion::records() const {
  std::vector<PrimitiveRecord> out;
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    for (int j = 0; j < mu; ++j)
      for (const auto& [k, c] : g[i][j].sorted_terms())
        out.push_back({i, j + 1, ring->monomial_str(k), c});
  return out;
}

std::string PrimitiveFormExpansion::pretty(const std::vector<std::string>& basis_names) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    for (int j = 0; j < mu; ++j) {
      if (g[i][j].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << g[i][j].str() << ")";
      if (i > 0) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
      const std::string& b = basis_names[j];
      if (b != "1") os << "*(" << b << ")";
    }
  return first ? "0" : os.str();
}

namespace {

void check_homogeneity(const PrimitiveFormExpansion& z, bool warn_only) {
  const std::int64_t den = z.ring->denominator();
  for (int i = 0; i < static_cast<int>(z.g.size()); ++i)
    for (int j = 0; j < z.mu; ++j)
      for (const auto& [k, c] : z.g[i][j].terms()) {
        Rat total = Rat(i) + Rat(z.ring->weight(k), den) + z.degrees[j];
        if (total.is_zero()) continue;
        if (warn_only) continue;
        throw Error(ErrorCode::GradingViolation, "primitive",
                    "term t^" + std::to_string(i) + "*" + z.ring->monomial_str(k) + " on basis " +
                        std::to_string(j + 1) + " has weighted degree " + total.str());
      }
}

}  // namespace

PrimitiveFormExpansion primitive_form(const UnfoldingData& unf, const Reducer& reducer, const OppositeParameters& c,
                                      const PrimitiveOptions& opts) {
  const SingularityData& base = *unf.base;
  OscillatorMatrices osc = oscillator_matrices(unf, reducer, EngineOptions{opts.prune, opts.policy});
  if (!c.empty()) osc = conjugate(osc, opposite_basis_change(base, c));
  PsiMatrix psi = assemble_psi(osc, unf.N);
  std::optional<Pruner> pruner = opts.prune ? primitive_pruner(unf, osc.a) : std::nullopt;
  const Pruner* p = pruner ? &*pruner : nullptr;
  RRow g = neumann_solve(psi, p, opts.policy);

  RRow residual = solve_residual(g, psi, p);
  for (const auto& x : residual)
    if (!x.is_zero())
      throw Error(ErrorCode::SolveIdentityViolated, "primitive", "g (Id + Psi) != e after the Neumann solve");

  PrimitiveFormExpansion z;
  z.ring = unf.ring;
  z.mu = base.mu;
  z.a = osc.a;
  z.N = unf.N;
  z.c = c;
  z.degrees = base.degrees;
  for (int i = 0; i <= osc.a; ++i) z.g.emplace_back(g.begin() + i * base.mu, g.begin() + (i + 1) * base.mu);

  for (int j = 0; j < base.mu; ++j)
    if (z.g[0][j].constant_term() != Rat(j == 0 ? 1 : 0))
      throw Error(ErrorCode::GradingViolation, "primitive", "zeta does not restrict to 1 at the origin");
  if (base.mode == SingularityMode::Polynomial) check_homogeneity(z, unf.override_mode);
  return z;
}

Representative as_representative(const PrimitiveFormExpansion& zeta, const SingularityData& base,
                                 const OppositeBasisChange& change) {
  Representative rep;
  for (int i = 0; i < static_cast<int>(zeta.g.size()); ++i)
    for (int j = 0; j < zeta.mu; ++j) {
      if (zeta.g[i][j].is_zero()) continue;
      for (const auto& [p, C] : change.C)
        for (int k = 0; k < zeta.mu; ++k) {
          if (C(j, k).is_zero()) continue;
          UnfoldRingElem coef = zeta.g[i][j].scaled(C(j, k));
          auto& dst = rep[i + p];
          for (const auto& [e, bc] : base.basis[k].terms()) zr_add(dst, e, coef.scaled(bc));
        }
    }
  return rep;
}

Rat representative_degree_max(const Representative& rep, const UnfoldingData& unf) {
  const SingularityData& base = *unf.base;
  std::optional<Rat> best;
  for (const auto& [p, poly] : rep)
    for (const auto& [e, c] : poly) {
      Rat zdeg = base.weights ? base.weights->degree(e) : Rat(0);
      for (const auto& [k, x] : c.terms()) {
        Rat d = Rat(p) + zdeg + unf.ring->weight_rat(k);
        if (!best || d > *best) best = d;
      }
    }
  return best.value_or(Rat(0));
}

namespace {

std::optional<Pruner> verify_pruner(const UnfoldingData& unf, const Rat& degree_max, int shift, bool prune) {
  if (!prune || unf.base->mode != SingularityMode::Polynomial || unf.override_mode) return std::nullopt;
  Rat upper = (degree_max + Rat(shift)) * Rat(unf.ring->denominator());
  return Pruner(*unf.ring, upper.ceil(), std::nullopt);
}

RLattice image_in_phi_basis(const Representative& rep, const UnfoldingData& unf, const Reducer& reducer,
                            const OppositeBasisChange& change, const std::optional<Pruner>& pruner, ExecPolicy policy) {
  OscillatorEngine engine(unf, reducer, pruner, policy);
  RLattice img = engine.image(rep);
  return change.C.size() == 1 ? img : apply_tmatrix(img, change.C_inv);
}

RLattice nonnegative_part(const RLattice& v) {
  RLattice out(v.ring, v.mu);
  for (const auto& [k, row] : v.slices)
    if (k >= 0) out.slices[k] = row;
  out.prune_zero_slices();
  return out;
}

}  // namespace

VerifyResult verify_primitive(const Representative& rep, const UnfoldingData& unf, const Reducer& reducer,
                              const OppositeParameters& c, const PrimitiveOptions& opts) {
  OppositeBasisChange change = opposite_basis_change(*unf.base, c);
  auto pruner = verify_pruner(unf, representative_degree_max(rep, unf), change.max_shift, opts.prune);
  RLattice w = image_in_phi_basis(rep, unf, reducer, change, pruner, opts.policy);
  VerifyResult res;
  res.defect = nonnegative_part(w);
  res.defect.at(0)[0] -= UnfoldRingElem::constant(unf.ring, Rat(1));
  res.defect.prune_zero_slices();
  res.pass = res.defect.is_zero();
  return res;
}

bool verify_class_equal(const Representative& rep1, const Representative& rep2, const UnfoldingData& unf,
                        const Reducer& reducer, const OppositeParameters& c, const PrimitiveOptions& opts) {
  OppositeBasisChange change = opposite_basis_change(*unf.base, c);
  Rat dmax = std::max(representative_degree_max(rep1, unf), representative_degree_max(rep2, unf));
  auto pruner = verify_pruner(unf, dmax, change.max_shift, opts.prune);
  RLattice w1 = image_in_phi_basis(rep1, unf, reducer, change, pruner, opts.policy);
  RLattice w2 = image_in_phi_basis(rep2, unf, reducer, change, pruner, opts.policy);
  // With pruning only the nonnegative t-part is exact; it determines the
  // class because e^{(F-f)/t} H_(0) meets the opposite filtration trivially.
  if (pruner) return nonnegative_part(w1) == nonnegative_part(w2);
  return w1 == w2;
}

}  // namespace primform
