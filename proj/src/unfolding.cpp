#include "primform/unfolding.hpp"

#include <algorithm>
#include <iostream>

#include "primform/errors.hpp"

namespace primform {

std::optional<std::size_t> UnfoldingData::variable_of(int j) const {
  for (std::size_t k = 0; k < active.size(); ++k)
    if (active[k] == j) return k;
  return std::nullopt;
}

std::string parameter_name(const SingularityData& base, int j) {
  if (base.mode == SingularityMode::LaurentP1) return "u" + std::to_string(j);
  return "u" + std::to_string(j + 1);
}

CoefficientOverrides exponential_override(int N) {
  std::vector<Rat> a{Rat(0)};
  for (int n = 1; n <= N; ++n) a.push_back(factorial(n).inverse());
  return {{1, a}};
}

UnfoldingData build_unfolding(std::shared_ptr<const SingularityData> base, int N, const std::vector<int>& mask,
                              const CoefficientOverrides& overrides) {
  UnfoldingData u;
  u.base = base;
  u.N = N;
  const int mu = base->mu;
  if (mask.empty()) {
    for (int j = 0; j < mu; ++j) u.active.push_back(j);
  } else {
    for (int j1 : mask) {
      if (j1 < 1 || j1 > mu)
        throw Error(ErrorCode::InvalidParameter, "unfolding", "mask index " + std::to_string(j1) + " out of range");
      if (std::find(u.active.begin(), u.active.end(), j1 - 1) == u.active.end()) u.active.push_back(j1 - 1);
    }
    std::sort(u.active.begin(), u.active.end());
  }
  std::vector<std::string> names;
  std::vector<Rat> weights;
  for (int j : u.active) {
    names.push_back(parameter_name(*base, j));
    weights.push_back(Rat(1) - base->degrees[j]);
  }
  u.ring = std::make_shared<UnfoldRing>(names, N, weights);
  u.psi.assign(mu, UnfoldRingElem(u.ring));
  for (const auto& [j, coeffs] : overrides) {
    if (j < 0 || j >= mu) throw Error(ErrorCode::InvalidParameter, "unfolding", "override for an unknown direction");
    if (!coeffs.empty() && !coeffs.front().is_zero())
      throw Error(ErrorCode::OverrideConstantTerm, "unfolding",
                  "override for " + parameter_name(*base, j) + " has a nonzero constant term");
  }
  for (std::size_t k = 0; k < u.active.size(); ++k) {
    int j = u.active[k];
    auto it = overrides.find(j);
    if (it == overrides.end()) {
      u.psi[j] = UnfoldRingElem::variable(u.ring, k);
      continue;
    }
    u.override_mode = true;
    UnfoldRingElem psi(u.ring);
    UKey key;
    for (std::size_t n = 1; n < it->second.size() && static_cast<int>(n) <= N; ++n) {
      key.set(static_cast<int>(k), static_cast<int>(n));
      psi += UnfoldRingElem::monomial(u.ring, key, it->second[n]);
    }
    u.psi[j] = std::move(psi);
  }
  for (int j = 0; j < mu; ++j) {
    if (u.psi[j].is_zero()) continue;
    for (const auto& [e, c] : base->basis[j].terms())
      zr_add(u.deformation, e, u.psi[j].scaled(c));
  }
  return u;
}

OppositeBasisChange opposite_basis_change(const SingularityData& base, const OppositeParameters& c) {
  const int mu = base.mu;
  OppositeBasisChange out;
  TMatrix nil;
  for (const auto& [ij, value] : c) {
    auto [i, j] = ij;
    if (i < 1 || j < 1 || i > mu || j > mu)
      throw Error(ErrorCode::ForbiddenOppositeParameter, "unfolding", "parameter index out of range");
    Rat r = base.degrees[i - 1] - base.degrees[j - 1];
    if (!r.is_integer() || r.sign() <= 0)
      throw Error(ErrorCode::ForbiddenOppositeParameter, "unfolding",
                  "c_" + std::to_string(i) + "," + std::to_string(j) + " needs d_i - d_j to be a positive integer");
    if (value.is_zero()) continue;
    int k = static_cast<int>(r.floor());
    auto it = nil.find(k);
    if (it == nil.end()) it = nil.emplace(k, QMatrix(mu, mu)).first;
    it->second(i - 1, j - 1) = value;
  }
  out.C[0] = QMatrix::identity(mu);
  for (const auto& [k, m] : nil) out.C[k] = m;
  // C^{-1} = sum_{n < mu} (-nil)^n, nil strictly lower triangular.
  TMatrix power{{0, QMatrix::identity(mu)}};
  TMatrix inv = power;
  for (int n = 1; n < mu && !nil.empty(); ++n) {
    TMatrix next;
    for (const auto& [p, a] : power)
      for (const auto& [q, b] : nil) {
        QMatrix prod = a * b;
        auto it = next.find(p + q);
        if (it == next.end()) {
          next.emplace(p + q, prod);
        } else {
          for (int x = 0; x < mu; ++x)
            for (int y = 0; y < mu; ++y) it->second(x, y) += prod(x, y);
        }
      }
    bool zero = true;
    for (auto& [k, m] : next)
      for (int x = 0; x < mu; ++x)
        for (int y = 0; y < mu; ++y)
          if (!m(x, y).is_zero()) zero = false;
    if (zero) break;
    const Rat sign = (n % 2) ? Rat(-1) : Rat(1);
    for (const auto& [k, m] : next) {
      auto it = inv.find(k);
      if (it == inv.end()) it = inv.emplace(k, QMatrix(mu, mu)).first;
      for (int x = 0; x < mu; ++x)
        for (int y = 0; y < mu; ++y)
          if (!m(x, y).is_zero()) it->second(x, y) += sign * m(x, y);
    }
    power = std::move(next);
  }
  out.C_inv = std::move(inv);
  for (const auto& [k, m] : out.C_inv) out.max_shift = std::max(out.max_shift, k);
  return out;
}

const RMatrix* OscillatorMatrices::at(int k) const {
  auto it = A.find(k);
  return it == A.end() ? nullptr : &it->second;
}

int a_bound(const SingularityData& base, int N) {
  if (base.mode == SingularityMode::LaurentP1) return 0;
  Rat x = Rat(N) * (base.s - Rat(1)) + base.s;
  return static_cast<int>(std::max(x.floor(), base.s.floor()));
}

std::optional<Pruner> primitive_pruner(const UnfoldingData& unf, int a) {
  if (unf.base->mode == SingularityMode::LaurentP1 || unf.override_mode) return std::nullopt;
  Rat lower = -(Rat(a) + unf.base->s) * Rat(unf.ring->denominator());
  return Pruner(*unf.ring, 0, lower.floor());
}

OscillatorEngine::OscillatorEngine(const UnfoldingData& unf, const Reducer& reducer, std::optional<Pruner> pruner,
                                   ExecPolicy policy)
    : unf_(&unf), reducer_(&reducer), pruner_(std::move(pruner)), policy_(policy) {
  const Pruner* p = pruner_ ? &*pruner_ : nullptr;
  ZRPoly one;
  one.emplace(Exponents(unf.base->f.nvars(), 0), UnfoldRingElem::constant(unf.ring, Rat(1)));
  powers_.push_back(one);
  ZRPoly defo;
  for (const auto& [e, c] : unf.deformation) {
    UnfoldRingElem kept = p ? c.pruned(*p) : c;
    if (!kept.is_zero()) defo.emplace(e, std::move(kept));
  }
  for (int k = 1; k <= unf.N; ++k) {
    powers_.push_back(zr_mul(powers_.back(), defo, unf.ring, p));
    if (powers_.back().empty()) break;
  }
}

RLattice OscillatorEngine::image(const std::map<int, ZRPoly>& rep) const {
  const Pruner* p = pruner_ ? &*pruner_ : nullptr;
  std::map<int, ZRPoly> input;
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    if (powers_[k].empty()) continue;
    Rat inv_fact = factorial(static_cast<int>(k)).inverse();
    for (const auto& [tp, x] : rep) {
      ZRPoly prod = zr_mul(powers_[k], x, unf_->ring, p);
      auto& dst = input[tp - static_cast<int>(k)];
      for (auto& [e, c] : prod) zr_add(dst, e, c.scaled(inv_fact));
    }
  }
  return reduce_central_linear(*reducer_, input, unf_->ring, policy_);
}

OscillatorMatrices OscillatorEngine::matrices() const {
  const SingularityData& base = *unf_->base;
  OscillatorMatrices out;
  out.ring = unf_->ring;
  out.mu = base.mu;
  out.a = a_bound(base, unf_->N);
  for (int i = 0; i < base.mu; ++i) {
    std::map<int, ZRPoly> rep{{0, zr_from_mpoly(base.basis[i], unf_->ring)}};
    RLattice row = image(rep);
    for (auto& [k, v] : row.slices) {
      auto it = out.A.find(k);
      if (it == out.A.end())
        it = out.A.emplace(k, RMatrix(base.mu, RRow(base.mu, UnfoldRingElem(unf_->ring)))).first;
      it->second[i] = std::move(v);
    }
  }
  return out;
}

namespace {

void grading_failure(bool warn_only, const std::string& msg) {
  if (warn_only) {
    std::cerr << "warning: " << msg << "\n";
    return;
  }
  throw Error(ErrorCode::GradingViolation, "unfolding", msg);
}

}  // namespace

OscillatorMatrices oscillator_matrices(const UnfoldingData& unf, const Reducer& reducer, const EngineOptions& opts) {
  const SingularityData& base = *unf.base;
  const int a = a_bound(base, unf.N);
  std::optional<Pruner> pruner = opts.prune ? primitive_pruner(unf, a) : std::nullopt;
  OscillatorEngine engine(unf, reducer, pruner, opts.policy);
  OscillatorMatrices osc = engine.matrices();
  const bool laurent = base.mode == SingularityMode::LaurentP1;
  const int mu = base.mu;
  const std::int64_t den = unf.ring->denominator();

  for (const auto& [k, m] : osc.A) {
    bool nonzero = false;
    for (const auto& row : m)
      for (const auto& x : row)
        if (!x.is_zero()) nonzero = true;
    if (!nonzero) continue;
    if (k > osc.a)
      throw Error(ErrorCode::GradingViolation, "unfolding",
                  "A^(" + std::to_string(k) + ") is nonzero above the bound a=" + std::to_string(osc.a));
    if (laurent && (k < -unf.N || k > 0))
      throw Error(ErrorCode::GradingViolation, "unfolding", "t-power outside [-N, 0] in the Laurent mode");
    if (k < -unf.N)
      throw Error(ErrorCode::GradingViolation, "unfolding", "t-power below -N");
    for (int i = 0; i < mu; ++i)
      for (int j = 0; j < mu; ++j) {
        const auto& x = m[i][j];
        Rat c0 = x.constant_term();
        Rat expect = (k == 0 && i == j) ? Rat(1) : Rat(0);
        if (c0 != expect)
          throw Error(ErrorCode::GradingViolation, "unfolding", "oscillator matrices do not reduce to Id at u=0");
        if (laurent) continue;
        for (const auto& [key, c] : x.terms()) {
          Rat total = Rat(k) + Rat(unf.ring->weight(key), den) + base.degrees[j] - base.degrees[i];
          if (!total.is_zero()) {
            grading_failure(unf.override_mode, "grading identity fails in A^(" + std::to_string(k) + ")_" +
                                                   std::to_string(i + 1) + "," + std::to_string(j + 1));
            break;
          }
        }
      }
  }
  // identity at u = 0 needs A^(0) present
  if (!osc.at(0)) throw Error(ErrorCode::GradingViolation, "unfolding", "A^(0) is missing");
  return osc;
}

RLattice apply_tmatrix(const RLattice& v, const TMatrix& m) {
  RLattice out(v.ring, v.mu);
  for (const auto& [p, row] : v.slices)
    for (const auto& [q, M] : m) {
      auto& dst = out.at(p + q);
      for (int i = 0; i < v.mu; ++i) {
        if (row[i].is_zero()) continue;
        for (int j = 0; j < v.mu; ++j)
          if (!M(i, j).is_zero()) dst[j] += row[i].scaled(M(i, j));
      }
    }
  out.prune_zero_slices();
  return out;
}

OscillatorMatrices conjugate(const OscillatorMatrices& osc, const OppositeBasisChange& change) {
  if (change.C.size() == 1) return osc;
  const int mu = osc.mu;
  // Row by row: (C A C^{-1})_i = sum_p C^{(p)}_{i,l} (A C^{-1})_l
  std::vector<RLattice> AC(mu, RLattice(osc.ring, mu));
  for (int l = 0; l < mu; ++l) {
    RLattice row(osc.ring, mu);
    for (const auto& [k, m] : osc.A) row.slices[k] = m[l];
    AC[l] = apply_tmatrix(row, change.C_inv);
  }
  OscillatorMatrices out;
  out.ring = osc.ring;
  out.mu = mu;
  out.a = osc.a;
  for (int i = 0; i < mu; ++i) {
    RLattice acc(osc.ring, mu);
    for (const auto& [p, C] : change.C)
      for (int l = 0; l < mu; ++l) {
        if (C(i, l).is_zero()) continue;
        for (const auto& [k, v] : AC[l].slices) {
          auto& dst = acc.at(k + p);
          for (int j = 0; j < mu; ++j)
            if (!v[j].is_zero()) dst[j] += v[j].scaled(C(i, l));
        }
      }
    acc.prune_zero_slices();
    for (auto& [k, v] : acc.slices) {
      if (k > out.a)
        throw Error(ErrorCode::GradingViolation, "unfolding", "conjugated matrices exceed the bound a");
      auto it = out.A.find(k);
      if (it == out.A.end()) it = out.A.emplace(k, RMatrix(mu, RRow(mu, UnfoldRingElem(osc.ring)))).first;
      it->second[i] = std::move(v);
    }
  }
  if (!out.at(0)) out.A.emplace(0, RMatrix(mu, RRow(mu, UnfoldRingElem(osc.ring))));
  return out;
}

}  // namespace primform
