#include "primform/moduli.hpp"

#include <algorithm>

#include "primform/errors.hpp"
#include "primform/linalg.hpp"

namespace primform {

namespace {

bool positive_integer(const Rat& r) { return r.is_integer() && r.sign() > 0; }

std::string cname(int i, int j) { return "c_" + std::to_string(i) + "_" + std::to_string(j); }
std::string aname(int k, int l) { return "a_" + std::to_string(k) + "_" + std::to_string(l); }

// Replaces variable v in p by x.
MPoly substitute(const MPoly& p, std::size_t v, const MPoly& x) {
  MPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    Exponents rest = e;
    int k = rest[v];
    rest[v] = 0;
    MPoly term = MPoly::monomial(p.vars(), rest, c);
    out += k == 0 ? term : term * x.pow(k);
  }
  return out;
}

// p = L * x_v + p0 with L constant; returns (L, p0).
std::pair<Rat, MPoly> split_linear(const MPoly& p, std::size_t v) {
  MPoly L = p.derivative(v);
  if (L.size() > 1 || (L.size() == 1 && total_degree(L.leading_exponents()) != 0))
    throw Error(ErrorCode::InconsistentConstants, "moduli", "constraint is not linear in its leading parameter");
  Rat lin = L.is_zero() ? Rat(0) : L.leading_coefficient();
  return {lin, substitute(p, v, MPoly(p.vars()))};
}

}  // namespace

std::string to_string(ParameterKind k) {
  switch (k) {
    case ParameterKind::Free: return "free";
    case ParameterKind::Determined: return "determined";
    case ParameterKind::AutoVanishing: return "auto_vanishing";
  }
  return "?";
}

int dimension_D(const std::vector<Rat>& degrees) {
  const int mu = static_cast<int>(degrees.size());
  int D = 0;
  for (int i = 1; i <= mu; ++i)
    for (int j = 1; j <= mu; ++j) {
      Rat r = degrees[i - 1] - degrees[j - 1];
      if (!positive_integer(r)) continue;
      if (i + j < mu + 1) ++D;
      else if (i + j == mu + 1 && r.num() % 2 != 0) ++D;
    }
  return D;
}

std::vector<std::pair<int, int>> ModuliReport::of_kind(ParameterKind k) const {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : parameters)
    if (p.kind == k) out.emplace_back(p.i, p.j);
  return out;
}

ModuliReport y_constraints(const SingularityData& data, const PairingConstants& constants) {
  return y_constraints(data.degrees, data.s, residue_pairing_matrix(data), constants);
}

ModuliReport y_constraints(const std::vector<Rat>& d, const Rat& s, const QMatrix& M, const PairingConstants& constants) {
  const int mu = static_cast<int>(d.size());
  if (M.rows() != d.size() || M.cols() != d.size())
    throw Error(ErrorCode::InvalidParameter, "moduli", "residue matrix size differs from the number of degrees");
  if (!is_anti_diagonal(M))
    throw Error(ErrorCode::OrthogonalizationUnavailable, "moduli", "the residue matrix of the basis is not anti-diagonal");

  ModuliReport rep;
  rep.steps.assign(mu, std::vector<Rat>(mu));
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j) rep.steps[i][j] = d[i] - d[j];
  rep.D = dimension_D(d);

  auto expo = [&](int k, int l) { return d[k - 1] + d[l - 1] - s; };
  for (const auto& [kl, v] : constants) {
    auto [k, l] = kl;
    if (k < 1 || l < 1 || k > mu || l > mu || !positive_integer(expo(k, l)))
      throw Error(ErrorCode::InconsistentConstants, "moduli",
                  "a_" + std::to_string(k) + "_" + std::to_string(l) + " must have positive integer t-degree");
    auto other = constants.find({l, k});
    if (other != constants.end() && k < l) {
      Rat sign = expo(k, l).num() % 2 == 0 ? Rat(1) : Rat(-1);
      if (other->second != v * sign)
        throw Error(ErrorCode::InconsistentConstants, "moduli", "supplied constants violate K(a,b)(t) = K(b,a)(-t)");
    }
  }

  // Variables: admissible c_ij, then unknown a_kl (k <= l).
  std::vector<std::string> names;
  std::map<std::pair<int, int>, std::size_t> cidx, aidx;
  std::map<std::size_t, std::pair<int, int>> cpair;
  std::vector<std::pair<int, int>> admissible;
  for (int i = 1; i <= mu; ++i)
    for (int j = 1; j <= mu; ++j)
      if (positive_integer(rep.steps[i - 1][j - 1])) {
        cidx[{i, j}] = names.size();
        cpair[names.size()] = {i, j};
        names.push_back(cname(i, j));
        admissible.emplace_back(i, j);
      }
  for (int k = 1; k <= mu; ++k)
    for (int l = k; l <= mu; ++l)
      if (positive_integer(expo(k, l)) && !constants.count({k, l}) && !constants.count({l, k})) {
        aidx[{k, l}] = names.size();
        names.push_back(aname(k, l));
      }
  VarsPtr vars = VariableSet::make(names);

  auto A = [&](int k, int l) -> MPoly {
    Rat e = expo(k, l);
    if (e.is_zero()) return MPoly::constant(vars, M(k - 1, l - 1));
    if (!positive_integer(e)) return MPoly(vars);
    Rat sign = e.num() % 2 == 0 ? Rat(1) : Rat(-1);
    if (auto it = constants.find({k, l}); it != constants.end()) return MPoly::constant(vars, it->second);
    if (auto it = constants.find({l, k}); it != constants.end()) return MPoly::constant(vars, it->second * sign);
    if (k <= l) return MPoly::variable(vars, aidx.at({k, l}));
    return MPoly::variable(vars, aidx.at({l, k})).scaled(sign);
  };
  auto D = [&](int i, int k) -> MPoly {
    if (i == k) return MPoly::constant(vars, Rat(1));
    auto it = cidx.find({i, k});
    return it == cidx.end() ? MPoly(vars) : MPoly::variable(vars, it->second);
  };
  // Coefficient of t^{r(i,j)} in K(Phi_i, Phi_{mu+1-j}).
  auto constraint = [&](int i, int j) {
    const int ip = mu + 1 - j;
    MPoly P(vars);
    for (int k = 1; k <= i; ++k) {
      MPoly dik = D(i, k);
      if (dik.is_zero()) continue;
      for (int l = 1; l <= ip; ++l) {
        MPoly dl = D(ip, l);
        if (dl.is_zero()) continue;
        MPoly a = A(k, l);
        if (a.is_zero()) continue;
        Rat r = d[ip - 1] - d[l - 1];
        Rat sign = r.num() % 2 == 0 ? Rat(1) : Rat(-1);
        P += (dik * a * dl).scaled(sign);
      }
    }
    return P;
  };

  std::sort(admissible.begin(), admissible.end(), [](const auto& x, const auto& y) {
    int sx = x.first - x.second, sy = y.first - y.second;
    return sx != sy ? sx < sy : x < y;
  });

  std::map<std::pair<int, int>, ModuliParameter> params;
  std::map<std::size_t, MPoly> solved;
  auto resolve = [&](MPoly P) {
    for (const auto& [v, x] : solved) P = substitute(P, v, x);
    return P;
  };
  auto make = [&](int i, int j, ParameterKind kind) {
    ModuliParameter p;
    p.i = i;
    p.j = j;
    p.r = rep.steps[i - 1][j - 1];
    p.step = i - j;
    p.kind = kind;
    p.value = MPoly(vars);
    return p;
  };

  for (const auto& [i, j] : admissible) {
    if (i + j > mu + 1) continue;
    const Rat r = rep.steps[i - 1][j - 1];
    if (i + j < mu + 1) {
      params.emplace(std::make_pair(i, j), make(i, j, ParameterKind::Free));
      const std::pair<int, int> partner{mu + 1 - j, mu + 1 - i};
      const std::size_t v = cidx.at(partner);
      auto [lin, rest] = split_linear(resolve(constraint(i, j)), v);
      if (lin.is_zero()) throw Error(ErrorCode::DegeneratePairing, "moduli", "vanishing anti-diagonal residue constant");
      ModuliParameter p = make(partner.first, partner.second, ParameterKind::Determined);
      p.value = rest.scaled(-lin.inverse());
      solved[v] = p.value;
      params.emplace(partner, p);
    } else if (r.num() % 2 != 0) {
      params.emplace(std::make_pair(i, j), make(i, j, ParameterKind::Free));
    } else {
      const std::size_t v = cidx.at({i, j});
      auto [lin, rest] = split_linear(resolve(constraint(i, j)), v);
      if (lin.is_zero()) throw Error(ErrorCode::DegeneratePairing, "moduli", "vanishing anti-diagonal residue constant");
      ModuliParameter p = make(i, j, rest.is_zero() ? ParameterKind::AutoVanishing : ParameterKind::Determined);
      p.value = rest.scaled(-lin.inverse());
      solved[v] = p.value;
      params.emplace(std::make_pair(i, j), p);
    }
  }

  for (const auto& ij : admissible) {
    ModuliParameter p = params.at(ij);
    std::set<std::string> refs;
    for (const auto& [e, c] : p.value.terms())
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        const std::string& n = names[v];
        if (n[0] == 'a') {
          refs.insert(n);
        } else {
          const auto& q = params.at(cpair.at(v));
          if (q.kind != ParameterKind::Free || q.step > p.step)
            throw Error(ErrorCode::InconsistentConstants, "moduli", "determined value depends on a later parameter");
        }
      }
    p.constants.assign(refs.begin(), refs.end());
    rep.unknown_constants.insert(refs.begin(), refs.end());
    rep.parameters.push_back(std::move(p));
  }

  int nfree = static_cast<int>(rep.of_kind(ParameterKind::Free).size());
  if (nfree != rep.D)
    throw Error(ErrorCode::InconsistentConstants, "moduli", "free parameter count differs from D");
  return rep;
}

}  // namespace primform
