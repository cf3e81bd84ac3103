#ifndef PRIMFORM_RESIDUE_SERIES_HPP
#define PRIMFORM_RESIDUE_SERIES_HPP

#include <climits>
#include <map>
#include <string>

#include "primform/mpoly.hpp"

namespace primform {

// t-power -> coefficient, zeros dropped.
using TLaurentValue = std::map<int, Rat>;

std::string to_string(const TLaurentValue& v);

// Truncated Laurent series in one variable: coefficients below `hi` are exact,
// nothing is known from `hi` on. hi == LONG_MAX marks an exact polynomial.
struct LaurentSeries {
  std::map<long, Rat> c;
  long hi = LONG_MAX;

  static LaurentSeries exact(std::map<long, Rat> coeffs);
  bool known(long e) const { return e < hi; }
  Rat coefficient(long e) const;
};

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries derivative(const LaurentSeries& a);  // d/dx
LaurentSeries euler(const LaurentSeries& a);       // x d/dx
LaurentSeries scaled(const LaurentSeries& a, const Rat& s);

// f = z^{m+1}/(m+1): sum_r (-t)^r prod_{k<r}(m+k(m+1)) Res_0 h dz / z^{r(m+1)+m}.
TLaurentValue higher_residue_Am(const MPoly& h, int m, int t_order);

struct UnivariateContext {
  enum class Kind { Am, MirrorP1 };
  Kind kind = Kind::Am;
  int m = 1;
  Rat lead = Rat(1);  // f = lead * z^{m+1} in the A_m context (lead = 1/(m+1) by default)
  Rat q = Rat(1);

  static UnivariateContext am(int m);
  static UnivariateContext am_scaled(int m, const Rat& lead);
  static UnivariateContext mirror_p1(const Rat& q);
};

// K(a, b) = sum_r (-t)^r Res_S [ mu * b * k * T^r(a) ] with T(g) = D(g k):
// A_m: k = 1/f', D = d/dz, measure dz, S = {0};
// P^1: k = z/(z^2 - q), D = z d/dz, measure dz/z, S = {0, inf}.
// depth 0 picks the default expansion depth; it doubles until the residue
// coefficients are certified and raises ExpansionDepthInsufficient past max_depth.
TLaurentValue pairing_univariate(const MPoly& a, const MPoly& b, const UnivariateContext& ctx, int t_order,
                                 long depth = 0, long max_depth = 1 << 16);

}  // namespace primform

#endif  // PRIMFORM_RESIDUE_SERIES_HPP
