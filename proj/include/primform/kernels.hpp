#ifndef PRIMFORM_KERNELS_HPP
#define PRIMFORM_KERNELS_HPP

#include <vector>

#include "primform/brieskorn.hpp"
#include "primform/unfold_ring.hpp"

namespace primform {

// One z-monomial with an R coefficient sitting at a t-power.
struct ImageItem {
  int t_power;
  const Exponents* monomial;
  const UnfoldRingElem* coefficient;
};

// sum over items of t^{t_power} * coefficient * reduce(monomial)
RLattice monomial_images_serial(const Reducer& r, const std::vector<ImageItem>& items, const RingPtr& ring);
RLattice monomial_images_parallel(const Reducer& r, const std::vector<ImageItem>& items, const RingPtr& ring);

using RRow = std::vector<UnfoldRingElem>;
using RMatrix = std::vector<RRow>;

// v * M over R, dropping factor monomials rejected by the pruner.
RRow row_times_matrix_serial(const RRow& v, const RMatrix& m, const RingPtr& ring, const Pruner* pruner);
RRow row_times_matrix_parallel(const RRow& v, const RMatrix& m, const RingPtr& ring, const Pruner* pruner);

int max_threads();

}  // namespace primform

#endif  // PRIMFORM_KERNELS_HPP
