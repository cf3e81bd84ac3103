#include "primform/singularity.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "primform/errors.hpp"

namespace primform {

std::optional<std::size_t> SingularityData::standard_index(const Exponents& e) const {
  auto it = standard_pos.find(e);
  if (it == standard_pos.end()) return std::nullopt;
  return it->second;
}

std::vector<Rat> SingularityData::coordinates_of_standard(const std::vector<Rat>& standard_coeffs) const {
  return row_times(standard_coeffs, standard_to_basis);
}

std::vector<Rat> SingularityData::coordinates(const MPoly& reduced) const {
  std::vector<Rat> v(mu);
  for (const auto& [e, c] : reduced.terms()) {
    auto idx = standard_index(e);
    if (!idx) throw Error(ErrorCode::GradingViolation, "singularity", "term outside the standard monomials");
    v[*idx] += c;
  }
  return coordinates_of_standard(v);
}

WeightSystem infer_weights(const MPoly& f) {
  const std::size_t n = f.nvars();
  if (f.is_zero()) throw Error(ErrorCode::InvalidWeights, "singularity", "zero polynomial has no weights");
  QMatrix A(n, f.size());
  std::size_t col = 0;
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) A(i, col) = Rat(e[i]);
    ++col;
  }
  if (A.rank() != n) throw Error(ErrorCode::InvalidWeights, "singularity", "f does not determine the weights");
  auto q = A.solve_left(std::vector<Rat>(f.size(), Rat(1)));
  if (!q) throw Error(ErrorCode::InvalidWeights, "singularity", "f is not quasi-homogeneous");
  return WeightSystem(*q);
}

Rat validate(const MPoly& f, const WeightSystem& w) {
  if (w.size() != f.nvars())
    throw Error(ErrorCode::InvalidWeights, "singularity", "one weight per variable is required");
  if (!f.coefficient(Exponents(f.nvars(), 0)).is_zero())
    throw Error(ErrorCode::EulerIdentityViolated, "singularity", "f has a nonzero constant term");
  MPoly euler(f.vars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Exponents e(f.nvars(), 0);
    e[i] = 1;
    euler += f.derivative(i).shifted(e, w[i]);
  }
  if (!(euler == f))
    throw Error(ErrorCode::EulerIdentityViolated, "singularity",
                "f is not weighted homogeneous of degree 1 for the given weights");
  Rat s;
  for (const auto& q : w.weights()) s += Rat(1) - Rat(2) * q;
  return s;
}

std::vector<Exponents> standard_monomials(const GroebnerBasis& gb, std::size_t nvars, std::size_t bound) {
  std::set<Exponents> seen;
  std::deque<Exponents> queue;
  Exponents zero(nvars, 0);
  if (!gb.is_standard(zero)) return {};
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    Exponents e = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < nvars; ++i) {
      Exponents n = e;
      ++n[i];
      if (seen.count(n) || !gb.is_standard(n)) continue;
      seen.insert(n);
      if (seen.size() > bound)
        throw Error(ErrorCode::NonIsolated, "singularity",
                    "more than " + std::to_string(bound) + " standard monomials; the critical point is not isolated");
      queue.push_back(std::move(n));
    }
  }
  return {seen.begin(), seen.end()};
}

MPoly hessian_determinant(const MPoly& f) {
  const std::size_t n = f.nvars();
  std::vector<std::vector<MPoly>> h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i].push_back(f.derivative(i).derivative(j));
  // Laplace expansion along the first row.
  std::function<MPoly(const std::vector<std::size_t>&, std::size_t)> det =
      [&](const std::vector<std::size_t>& cols, std::size_t row) -> MPoly {
    if (cols.size() == 1) return h[row][cols[0]];
    MPoly out(f.vars());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (h[row][cols[k]].is_zero()) continue;
      std::vector<std::size_t> rest = cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      MPoly term = h[row][cols[k]] * det(rest, row + 1);
      if (k % 2) out -= term;
      else out += term;
    }
    return out;
  };
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return det(cols, 0);
}

namespace {

Rat socle_coefficient(const MPoly& g, const SingularityData& d) {
  MPoly nf = d.groebner.normal_form(g);
  return nf.coefficient(d.standard.back());
}

void refresh_basis(SingularityData& d) {
  d.standard_to_basis = d.basis_to_standard.inverse();
  d.basis.clear();
  for (int i = 0; i < d.mu; ++i) {
    MPoly p(d.f.vars());
    for (int j = 0; j < d.mu; ++j)
      if (!d.basis_to_standard(i, j).is_zero()) p.add_term(d.standard[j], d.basis_to_standard(i, j));
    d.basis.push_back(std::move(p));
  }
}

// Positions grouped by degree, in basis order.
std::vector<std::pair<Rat, std::vector<int>>> slices(const SingularityData& d) {
  std::vector<std::pair<Rat, std::vector<int>>> out;
  for (int i = 0; i < d.mu; ++i) {
    if (out.empty() || out.back().first != d.degrees[i]) out.push_back({d.degrees[i], {}});
    out.back().second.push_back(i);
  }
  return out;
}

}  // namespace

Rat classical_residue(const MPoly& g, const SingularityData& data) {
  if (data.mode != SingularityMode::Polynomial)
    throw Error(ErrorCode::UnsupportedContext, "singularity", "classical residue needs the polynomial mode");
  return data.residue_scale * socle_coefficient(g, data);
}

QMatrix residue_pairing_matrix(const SingularityData& data) {
  QMatrix m(data.mu, data.mu);
  for (int i = 0; i < data.mu; ++i)
    for (int j = i; j < data.mu; ++j) {
      if (data.degrees[i] + data.degrees[j] != data.s) continue;
      Rat r = classical_residue(data.basis[i] * data.basis[j], data);
      m(i, j) = r;
      m(j, i) = r;
    }
  return m;
}

bool is_anti_diagonal(const QMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool anti = i + j == n - 1;
      if (anti == m(i, j).is_zero()) return false;
    }
  return true;
}

QMatrix orthogonalize_middle_slice(const QMatrix& gram) {
  const std::size_t n = gram.rows();
  auto B = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat s;
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < n; ++b)
        if (!y[b].is_zero() && !gram(a, b).is_zero()) s += x[a] * gram(a, b) * y[b];
    }
    return s;
  };
  struct Item {
    std::size_t origin;
    std::vector<Rat> v;
  };
  std::vector<Item> pool;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> e(n);
    e[i] = Rat(1);
    pool.push_back({i, std::move(e)});
  }
  QMatrix X(n, n);
  auto place = [&](std::size_t pos, const std::vector<Rat>& v) {
    for (std::size_t j = 0; j < n; ++j) X(pos, j) = v[j];
  };
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    auto find_origin = [&](std::size_t o) -> long {
      for (std::size_t k = 0; k < pool.size(); ++k)
        if (pool[k].origin == o) return static_cast<long>(k);
      return -1;
    };
    long vi = -1;
    bool at_hi = false;
    long klo = find_origin(lo), khi = find_origin(hi);
    if (klo >= 0 && B(pool[klo].v, pool[klo].v).is_zero()) {
      vi = klo;
    } else if (khi >= 0 && B(pool[khi].v, pool[khi].v).is_zero()) {
      vi = khi;
      at_hi = true;
    } else {
      for (std::size_t k = 0; k < pool.size() && vi < 0; ++k)
        if (B(pool[k].v, pool[k].v).is_zero()) vi = static_cast<long>(k);
    }
    if (vi < 0) {
      for (std::size_t a = 0; a < pool.size() && vi < 0; ++a)
        for (std::size_t b = 0; b < pool.size() && vi < 0; ++b) {
          if (a == b) continue;
          Rat baa = B(pool[a].v, pool[a].v), bab = B(pool[a].v, pool[b].v), bbb = B(pool[b].v, pool[b].v);
          Rat disc = bab * bab - baa * bbb;
          if (disc.sign() < 0) continue;
          mpz_class nr, dr;
          if (!mpz_perfect_square_p(disc.raw().get_num_mpz_t()) || !mpz_perfect_square_p(disc.raw().get_den_mpz_t()))
            continue;
          mpz_sqrt(nr.get_mpz_t(), disc.raw().get_num_mpz_t());
          mpz_sqrt(dr.get_mpz_t(), disc.raw().get_den_mpz_t());
          Rat root(nr, dr);
          Rat t = (-bab + root) / bbb;
          for (std::size_t j = 0; j < n; ++j) pool[a].v[j] += t * pool[b].v[j];
          vi = static_cast<long>(a);
        }
    }
    if (vi < 0)
      throw Error(ErrorCode::OrthogonalizationUnavailable, "singularity",
                  "the middle slice has no rational isotropic vector");
    Item v = pool[vi];
    pool.erase(pool.begin() + vi);
    // Partner: prefer the vector sitting at the complementary position.
    std::size_t want = at_hi ? lo : hi;
    long wi = -1;
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (pool[k].origin == want && !B(v.v, pool[k].v).is_zero()) wi = static_cast<long>(k);
    for (std::size_t k = 0; k < pool.size() && wi < 0; ++k)
      if (!B(v.v, pool[k].v).is_zero()) wi = static_cast<long>(k);
    if (wi < 0) throw Error(ErrorCode::DegeneratePairing, "singularity", "isotropic vector has no partner");
    Item w = pool[wi];
    pool.erase(pool.begin() + wi);
    Rat bvw = B(v.v, w.v);
    Rat bww = B(w.v, w.v);
    if (!bww.is_zero()) {
      Rat f = bww / (Rat(2) * bvw);
      for (std::size_t j = 0; j < n; ++j) w.v[j] -= f * v.v[j];
    }
    for (auto& u : pool) {
      Rat cu_w = B(u.v, w.v) / bvw;
      Rat cu_v = B(u.v, v.v) / bvw;
      for (std::size_t j = 0; j < n; ++j) u.v[j] -= cu_w * v.v[j] + cu_v * w.v[j];
    }
    place(at_hi ? hi : lo, v.v);
    place(at_hi ? lo : hi, w.v);
    ++lo;
    --hi;
  }
  if (lo == hi) {
    if (pool.size() != 1 || B(pool[0].v, pool[0].v).is_zero())
      throw Error(ErrorCode::DegeneratePairing, "singularity", "degenerate central vector");
    place(lo, pool[0].v);
  }
  return X;
}

void orthogonalize_basis(SingularityData& data) {
  QMatrix M = residue_pairing_matrix(data);
  if (is_anti_diagonal(M)) {
    data.orthogonal = true;
    return;
  }
  QMatrix S = data.basis_to_standard;
  auto sl = slices(data);
  for (const auto& [d, I] : sl) {
    Rat partner = data.s - d;
    if (d > partner) continue;
    const std::vector<int>* Jp = nullptr;
    for (const auto& [d2, J] : sl)
      if (d2 == partner) Jp = &J;
    if (!Jp || Jp->size() != I.size())
      throw Error(ErrorCode::DegeneratePairing, "singularity", "unmatched degree slice");
    const auto& J = *Jp;
    const std::size_t n = I.size();
    QMatrix P(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) P(a, b) = M(I[a], J[b]);
    if (is_anti_diagonal(P)) continue;
    QMatrix newJ(n, data.mu);
    if (d != partner) {
      QMatrix D(n, n);
      for (std::size_t a = 0; a < n; ++a) D(a, n - 1 - a) = P(a, n - 1 - a).is_zero() ? Rat(1) : P(a, n - 1 - a);
      QMatrix X = P.inverse() * D;
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!X(c, b).is_zero())
            for (int j = 0; j < data.mu; ++j) newJ(b, j) += X(c, b) * S(J[c], j);
    } else {
      QMatrix X = orthogonalize_middle_slice(P);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
          if (!X(a, c).is_zero())
            for (int j = 0; j < data.mu; ++j) newJ(a, j) += X(a, c) * S(J[c], j);
    }
    for (std::size_t b = 0; b < n; ++b)
      for (int j = 0; j < data.mu; ++j) data.basis_to_standard(J[b], j) = newJ(b, j);
  }
  refresh_basis(data);
  M = residue_pairing_matrix(data);
  if (!is_anti_diagonal(M))
    throw Error(ErrorCode::DegeneratePairing, "singularity", "pairing not anti-diagonal after orthogonalization");
  data.orthogonal = true;
}

SingularityData analyze_singularity(const MPoly& f, const WeightSystem& w, const AnalyzeOptions& opts) {
  SingularityData d;
  d.mode = SingularityMode::Polynomial;
  d.f = f;
  d.s = validate(f, w);
  d.weights = w;
  d.lambda = MPoly::constant(f.vars(), Rat(1));
  for (std::size_t i = 0; i < f.nvars(); ++i) d.partials.push_back(f.derivative(i));
  d.groebner = groebner_with_cofactors(d.partials);
  auto std_monos = standard_monomials(d.groebner, f.nvars(), opts.monomial_bound);
  if (std_monos.empty()) throw Error(ErrorCode::NonIsolated, "singularity", "Jacobian ideal is the unit ideal");
  std::sort(std_monos.begin(), std_monos.end(), [&](const Exponents& a, const Exponents& b) {
    Rat da = w.degree(a), db = w.degree(b);
    if (da != db) return da < db;
    return grevlex_less(b, a);
  });
  d.standard = std_monos;
  d.mu = static_cast<int>(std_monos.size());
  for (std::size_t i = 0; i < std_monos.size(); ++i) {
    d.standard_pos.emplace(std_monos[i], i);
    d.degrees.push_back(w.degree(std_monos[i]));
  }
  if (!d.degrees.front().is_zero() || d.degrees.back() != d.s)
    throw Error(ErrorCode::GradingViolation, "singularity", "basis degrees do not span [0, s]");
  for (int i = 0; i < d.mu; ++i)
    if (d.degrees[i] + d.degrees[d.mu - 1 - i] != d.s)
      throw Error(ErrorCode::GradingViolation, "singularity", "basis degrees are not symmetric about s/2");
  d.basis_to_standard = QMatrix::identity(d.mu);
  refresh_basis(d);

  Rat hess = socle_coefficient(hessian_determinant(f), d);
  if (hess.is_zero()) throw Error(ErrorCode::DegeneratePairing, "singularity", "Hessian has zero socle component");
  d.residue_scale = Rat(d.mu) / hess;

  if (opts.orthogonalize) {
    try {
      orthogonalize_basis(d);
    } catch (const Error& e) {
      if (opts.require_orthogonal || e.code() != ErrorCode::OrthogonalizationUnavailable) throw;
      d.basis_to_standard = QMatrix::identity(d.mu);
      refresh_basis(d);
      d.orthogonal = false;
    }
  } else {
    d.orthogonal = is_anti_diagonal(residue_pairing_matrix(d));
  }
  return d;
}

SingularityData mirror_p1(const Rat& q) {
  if (q.is_zero()) throw Error(ErrorCode::InvalidParameter, "singularity", "q must be nonzero");
  SingularityData d;
  d.mode = SingularityMode::LaurentP1;
  d.q = q;
  auto vars = VariableSet::make({"z"}, {true});
  d.f = MPoly::monomial(vars, {1}) + MPoly::monomial(vars, {-1}, q);
  d.partials.push_back(d.f.derivative(0));
  d.lambda = MPoly::variable(vars, 0);
  d.standard = {{0}, {-1}};
  d.standard_pos.emplace(Exponents{0}, 0);
  d.standard_pos.emplace(Exponents{-1}, 1);
  d.mu = 2;
  d.degrees = {Rat(0), Rat(1)};
  d.s = Rat(1);
  d.basis_to_standard = QMatrix(2, 2);
  d.basis_to_standard(0, 0) = Rat(1);
  d.basis_to_standard(1, 1) = q;
  d.standard_to_basis = d.basis_to_standard.inverse();
  d.basis = {MPoly::constant(vars, Rat(1)), MPoly::monomial(vars, {-1}, q)};
  d.orthogonal = true;
  return d;
}

}  // namespace primform
