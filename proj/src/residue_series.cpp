#include "primform/residue_series.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "primform/errors.hpp"

namespace primform {

namespace {

long sat_add(long a, long b) {
  if (a == LONG_MAX || b == LONG_MAX) return LONG_MAX;
  return a + b;
}

long low_order(const LaurentSeries& s) { return s.c.empty() ? s.hi : s.c.begin()->first; }

void put(TLaurentValue& v, int k, const Rat& x) {
  if (x.is_zero()) return;
  Rat& slot = v[k];
  slot += x;
  if (slot.is_zero()) v.erase(k);
}

std::map<long, Rat> univariate_terms(const MPoly& p, const char* what) {
  if (p.nvars() != 1 && !p.is_zero())
    throw Error(ErrorCode::UnsupportedContext, "residue_series", std::string(what) + " must be univariate");
  std::map<long, Rat> out;
  for (const auto& [e, c] : p.terms()) out[e.empty() ? 0 : e[0]] += c;
  return out;
}

std::map<long, Rat> negate_exponents(const std::map<long, Rat>& m) {
  std::map<long, Rat> out;
  for (const auto& [e, c] : m) out[-e] = c;
  return out;
}

// One residue point of the P^1 context in a local coordinate x; `flip` is
// the point at infinity (x = 1/z).
std::optional<TLaurentValue> p1_point(const std::map<long, Rat>& a, const std::map<long, Rat>& b, const Rat& q,
                                      bool flip, int t_order, long depth) {
  LaurentSeries k;
  k.hi = 2 * depth + 1;
  Rat qn(1);
  const Rat qinv = q.inverse();
  for (long n = 0; n < depth; ++n) {
    // at 0: -(x/q) (x^2/q)^n; at infinity: q^n x^{2n+1}
    if (flip) {
      k.c[2 * n + 1] = qn;
      qn *= q;
    } else {
      qn *= qinv;
      k.c[2 * n + 1] = -qn;
    }
  }
  LaurentSeries A = LaurentSeries::exact(flip ? negate_exponents(a) : a);
  LaurentSeries B = LaurentSeries::exact(flip ? negate_exponents(b) : b);
  LaurentSeries Bk = B * k;
  TLaurentValue out;
  LaurentSeries g = A;
  for (int r = 0; r <= t_order; ++r) {
    LaurentSeries G = Bk * g;
    if (!G.known(0)) return std::nullopt;
    Rat res = G.coefficient(0);
    if (flip) res = -res;
    put(out, r, r % 2 ? -res : res);
    if (r == t_order) break;
    g = euler(g * k);
    if (flip) g = scaled(g, Rat(-1));
  }
  return out;
}

}  // namespace

std::string to_string(const TLaurentValue& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v) {
    Rat x = c;
    if (!first) {
      os << (x.sign() < 0 ? " - " : " + ");
      x = x.abs();
    }
    first = false;
    if (k == 0) {
      os << x.str();
      continue;
    }
    if (x == Rat(-1)) os << "-";
    else if (x != Rat(1)) os << x.str() << "*";
    os << "t";
    if (k != 1) os << "^" << (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k));
  }
  return os.str();
}

LaurentSeries LaurentSeries::exact(std::map<long, Rat> coeffs) {
  LaurentSeries s;
  for (auto& [e, c] : coeffs)
    if (!c.is_zero()) s.c.emplace(e, std::move(c));
  return s;
}

Rat LaurentSeries::coefficient(long e) const {
  auto it = c.find(e);
  return it == c.end() ? Rat(0) : it->second;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries out;
  out.hi = std::min(sat_add(low_order(a), b.hi), sat_add(low_order(b), a.hi));
  for (const auto& [ea, ca] : a.c)
    for (const auto& [eb, cb] : b.c) {
      long e = ea + eb;
      if (e >= out.hi) break;
      out.c[e] += ca * cb;
    }
  for (auto it = out.c.begin(); it != out.c.end();) it = it->second.is_zero() ? out.c.erase(it) : std::next(it);
  return out;
}

LaurentSeries derivative(const LaurentSeries& a) {
  LaurentSeries out;
  out.hi = a.hi == LONG_MAX ? LONG_MAX : a.hi - 1;
  for (const auto& [e, c] : a.c)
    if (e != 0) out.c[e - 1] = c * Rat(e);
  return out;
}

LaurentSeries euler(const LaurentSeries& a) {
  LaurentSeries out;
  out.hi = a.hi;
  for (const auto& [e, c] : a.c)
    if (e != 0) out.c[e] = c * Rat(e);
  return out;
}

LaurentSeries scaled(const LaurentSeries& a, const Rat& s) {
  LaurentSeries out;
  out.hi = a.hi;
  if (s.is_zero()) return out;
  for (const auto& [e, c] : a.c) out.c[e] = c * s;
  return out;
}

TLaurentValue higher_residue_Am(const MPoly& h, int m, int t_order) {
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "residue_series", "m must be at least 1");
  auto terms = univariate_terms(h, "h");
  TLaurentValue out;
  Rat prod(1);
  for (int r = 0; r <= t_order; ++r) {
    if (r > 0) prod *= Rat(m + (r - 1) * (m + 1));
    auto it = terms.find(static_cast<long>(r) * (m + 1) + m - 1);
    if (it != terms.end()) put(out, r, (r % 2 ? -prod : prod) * it->second);
  }
  return out;
}

UnivariateContext UnivariateContext::am(int m) { return am_scaled(m, Rat(1, m + 1)); }

UnivariateContext UnivariateContext::am_scaled(int m, const Rat& lead) {
  if (m < 1) throw Error(ErrorCode::InvalidParameter, "residue_series", "m must be at least 1");
  if (lead.is_zero()) throw Error(ErrorCode::InvalidParameter, "residue_series", "zero leading coefficient");
  UnivariateContext c;
  c.kind = Kind::Am;
  c.m = m;
  c.lead = lead;
  return c;
}

UnivariateContext UnivariateContext::mirror_p1(const Rat& q) {
  if (q.is_zero()) throw Error(ErrorCode::InvalidParameter, "residue_series", "q must be nonzero");
  UnivariateContext c;
  c.kind = Kind::MirrorP1;
  c.q = q;
  return c;
}

TLaurentValue pairing_univariate(const MPoly& a, const MPoly& b, const UnivariateContext& ctx, int t_order, long depth,
                                 long max_depth) {
  if (t_order < 0) throw Error(ErrorCode::InvalidParameter, "residue_series", "negative t-order");
  auto ta = univariate_terms(a, "a");
  auto tb = univariate_terms(b, "b");

  if (ctx.kind == UnivariateContext::Kind::Am) {
    // Kernel 1/f' is a monomial: everything stays exact.
    LaurentSeries k = LaurentSeries::exact({{-ctx.m, (ctx.lead * Rat(ctx.m + 1)).inverse()}});
    LaurentSeries B = LaurentSeries::exact(tb) * k;
    LaurentSeries g = LaurentSeries::exact(ta);
    TLaurentValue out;
    for (int r = 0; r <= t_order; ++r) {
      Rat res = (B * g).coefficient(-1);
      put(out, r, r % 2 ? -res : res);
      if (r < t_order) g = derivative(g * k);
    }
    return out;
  }

  if (depth <= 0) depth = 4L * (t_order + 1) * 2;
  for (long P = depth; P <= max_depth; P *= 2) {
    auto at0 = p1_point(ta, tb, ctx.q, false, t_order, P);
    auto atinf = p1_point(ta, tb, ctx.q, true, t_order, P);
    if (!at0 || !atinf) continue;
    TLaurentValue out = *at0;
    for (const auto& [k, c] : *atinf) put(out, k, c);
    return out;
  }
  throw Error(ErrorCode::ExpansionDepthInsufficient, "residue_series",
              "kernel expansion to " + std::to_string(max_depth) + " terms does not reach the residue coefficient");
}

}  // namespace primform
