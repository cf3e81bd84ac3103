#include "primform/groebner.hpp"

#include <algorithm>
#include <utility>

#include "primform/errors.hpp"

namespace primform {

namespace {

Exponents exps_lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Exponents exps_sub(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

struct Tracked {
  MPoly p;
  std::vector<MPoly> cof;
};

void axpy(std::vector<MPoly>& dst, const std::vector<MPoly>& src, const Exponents& shift, const Rat& c) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (!src[i].is_zero()) dst[i] += src[i].shifted(shift, c);
}

// Full reduction of x against basis, recording cofactors.
void reduce_tracked(Tracked& x, const std::vector<Tracked>& basis) {
  MPoly rest(x.p.vars());
  MPoly out(x.p.vars());
  rest = x.p;
  while (!rest.is_zero()) {
    const Exponents lt = rest.leading_exponents();
    const Rat lc = rest.leading_coefficient();
    bool reduced = false;
    for (const auto& g : basis) {
      if (!divides(g.p.leading_exponents(), lt)) continue;
      Exponents s = exps_sub(lt, g.p.leading_exponents());
      Rat c = lc / g.p.leading_coefficient();
      rest -= g.p.shifted(s, c);
      axpy(x.cof, g.cof, s, -c);
      reduced = true;
      break;
    }
    if (!reduced) {
      out.add_term(lt, lc);
      rest.add_term(lt, -lc);
    }
  }
  x.p = std::move(out);
}

void make_monic(Tracked& x) {
  if (x.p.is_zero()) return;
  Rat inv = x.p.leading_coefficient().inverse();
  x.p = x.p.scaled(inv);
  for (auto& c : x.cof) c = c.scaled(inv);
}

}  // namespace

GroebnerBasis groebner_with_cofactors(const std::vector<MPoly>& gens) {
  if (gens.empty()) throw Error(ErrorCode::InvalidParameter, "singularity", "no generators");
  const VarsPtr& vars = gens.front().vars();
  const std::size_t m = gens.size();
  std::vector<Tracked> basis;
  for (std::size_t i = 0; i < m; ++i) {
    Tracked t{gens[i], std::vector<MPoly>(m, MPoly(vars))};
    t.cof[i] = MPoly::constant(vars, Rat(1));
    reduce_tracked(t, basis);
    if (t.p.is_zero()) continue;
    make_monic(t);
    basis.push_back(std::move(t));
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    // smallest lcm first (normal selection strategy)
    auto best = pairs.begin();
    Exponents best_l = exps_lcm(basis[best->first].p.leading_exponents(), basis[best->second].p.leading_exponents());
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      Exponents l = exps_lcm(basis[it->first].p.leading_exponents(), basis[it->second].p.leading_exponents());
      if (grevlex_less(l, best_l)) {
        best = it;
        best_l = std::move(l);
      }
    }
    auto [i, j] = *best;
    pairs.erase(best);
    const auto& a = basis[i];
    const auto& b = basis[j];
    if (coprime(a.p.leading_exponents(), b.p.leading_exponents())) continue;
    Exponents sa = exps_sub(best_l, a.p.leading_exponents());
    Exponents sb = exps_sub(best_l, b.p.leading_exponents());
    Tracked s{a.p.shifted(sa, Rat(1)) - b.p.shifted(sb, Rat(1)), std::vector<MPoly>(m, MPoly(vars))};
    axpy(s.cof, a.cof, sa, Rat(1));
    axpy(s.cof, b.cof, sb, Rat(-1));
    reduce_tracked(s, basis);
    if (s.p.is_zero()) continue;
    make_monic(s);
    basis.push_back(std::move(s));
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
  }

  // Minimize: drop elements whose leading monomial is divisible by another's.
  std::vector<Tracked> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = basis[i].p.leading_exponents();
      const auto& lj = basis[j].p.leading_exponents();
      if (divides(lj, li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Tracked> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Tracked head{MPoly::monomial(vars, minimal[i].p.leading_exponents(), minimal[i].p.leading_coefficient()),
                 std::vector<MPoly>(m, MPoly(vars))};
    Tracked tail{minimal[i].p - head.p, minimal[i].cof};
    // tail.cof currently describes the whole element; reduce the tail only.
    Tracked t{tail.p, std::vector<MPoly>(m, MPoly(vars))};
    reduce_tracked(t, others);
    minimal[i].p = head.p + t.p;
    for (std::size_t k = 0; k < m; ++k) minimal[i].cof[k] += t.cof[k];
  }
  std::sort(minimal.begin(), minimal.end(), [](const Tracked& x, const Tracked& y) {
    return grevlex_less(x.p.leading_exponents(), y.p.leading_exponents());
  });

  GroebnerBasis gb;
  gb.generators = gens;
  for (auto& t : minimal) {
    gb.elements.push_back(std::move(t.p));
    gb.cofactors.push_back(std::move(t.cof));
  }
  return gb;
}

GroebnerBasis::Division GroebnerBasis::divide(const MPoly& h) const {
  const VarsPtr& vars = h.vars();
  Division d{MPoly(vars), std::vector<MPoly>(generators.size(), MPoly(vars))};
  std::vector<MPoly> q(elements.size(), MPoly(vars));
  MPoly rest = h;
  while (!rest.is_zero()) {
    const Exponents lt = rest.leading_exponents();
    const Rat lc = rest.leading_coefficient();
    bool reduced = false;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      const auto& g = elements[k];
      if (!divides(g.leading_exponents(), lt)) continue;
      Exponents s = exps_sub(lt, g.leading_exponents());
      Rat c = lc / g.leading_coefficient();
      rest -= g.shifted(s, c);
      q[k].add_term(s, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      d.remainder.add_term(lt, lc);
      rest.add_term(lt, -lc);
    }
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (q[k].is_zero()) continue;
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (!cofactors[k][i].is_zero()) d.quotients[i] += q[k] * cofactors[k][i];
  }
  return d;
}

MPoly GroebnerBasis::normal_form(const MPoly& h) const { return divide(h).remainder; }

bool GroebnerBasis::is_standard(const Exponents& e) const {
  for (const auto& g : elements)
    if (divides(g.leading_exponents(), e)) return false;
  return true;
}

}  // namespace primform
