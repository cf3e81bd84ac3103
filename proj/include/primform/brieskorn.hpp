#ifndef PRIMFORM_BRIESKORN_HPP
#define PRIMFORM_BRIESKORN_HPP

#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "primform/mpoly.hpp"
#include "primform/singularity.hpp"
#include "primform/unfold_ring.hpp"

namespace primform {

// sum_k t^k v_k with v_k in Q^mu, coordinates on the basis phi.
struct LatticeVector {
  int mu = 0;
  std::map<int, std::vector<Rat>> slices;

  LatticeVector() = default;
  explicit LatticeVector(int m) : mu(m) {}
  static LatticeVector basis_vector(int mu, int index, int t_power = 0);

  void add(int t_power, const std::vector<Rat>& v, const Rat& scale = Rat(1));
  void add(const LatticeVector& o, int shift = 0, const Rat& scale = Rat(1));
  void prune_zero_slices();
  bool is_zero() const;
  const std::vector<Rat>* slice(int t_power) const;

  friend bool operator==(const LatticeVector& a, const LatticeVector& b);
  std::string str() const;
};

// z-polynomial with coefficients in the parameter ring.
using ZRPoly = std::map<Exponents, UnfoldRingElem>;

void zr_add(ZRPoly& p, const Exponents& e, const UnfoldRingElem& c);
// Product of z-polynomials over R; pruner applies to the coefficient monomials.
ZRPoly zr_mul(const ZRPoly& a, const ZRPoly& b, const RingPtr& ring, const Pruner* pruner);
ZRPoly zr_from_mpoly(const MPoly& p, const RingPtr& ring);

// sum_k t^k v_k with v_k in R^mu.
struct RLattice {
  RingPtr ring;
  int mu = 0;
  std::map<int, std::vector<UnfoldRingElem>> slices;

  RLattice() = default;
  RLattice(RingPtr r, int m) : ring(std::move(r)), mu(m) {}
  std::vector<UnfoldRingElem>& at(int t_power);
  void prune_zero_slices();
  bool is_zero() const;
  friend bool operator==(const RLattice& a, const RLattice& b);
};

struct ReducerOptions {
  int laurent_depth = 64;
};

class Reducer {
 public:
  explicit Reducer(const SingularityData& data, ReducerOptions opts = {});

  const SingularityData& data() const { return *data_; }

  // Canonical B[t] form of h. Works through the per-monomial cache.
  LatticeVector reduce(const MPoly& h) const;
  const LatticeVector& reduce_monomial(const Exponents& e) const;

  // Slice-by-slice reduction on whole polynomials, no cache (polynomial mode).
  LatticeVector reduce_uncached(const MPoly& h) const;

  std::size_t cache_size() const;
  void clear_cache();

 private:
  const LatticeVector& reduce_monomial_depth(const Exponents& e, int depth) const;
  LatticeVector compute_polynomial(const Exponents& e, int depth) const;
  LatticeVector compute_laurent(int k, int depth) const;
  void check_exponents(const Exponents& e) const;
  int polynomial_guard(const Exponents& e) const;

  const SingularityData* data_;
  ReducerOptions opts_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Exponents, std::unique_ptr<LatticeVector>, ExponentsHash> cache_;
};

LatticeVector reduce_central(const Reducer& r, const MPoly& h);
LatticeVector reduce_laurent(const Reducer& r, const MPoly& h);

enum class ExecPolicy { Serial, Parallel };

// R-linear extension: input maps a t-power to a z-polynomial over R.
RLattice reduce_central_linear(const Reducer& r, const std::map<int, ZRPoly>& input, const RingPtr& ring,
                               ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace primform

#endif  // PRIMFORM_BRIESKORN_HPP
