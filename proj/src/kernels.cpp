#include "primform/kernels.hpp"

#include <omp.h>

#include <exception>
#include <map>

namespace primform {

namespace {

using SliceAcc = std::map<int, std::vector<RAccumulator>>;

void accumulate_item(const Reducer& r, const ImageItem& item, const RingPtr& ring, int mu, SliceAcc& acc) {
  const LatticeVector& img = r.reduce_monomial(*item.monomial);
  for (const auto& [l, v] : img.slices) {
    auto it = acc.find(item.t_power + l);
    if (it == acc.end()) it = acc.emplace(item.t_power + l, std::vector<RAccumulator>(mu, RAccumulator(ring))).first;
    for (int j = 0; j < mu; ++j)
      if (!v[j].is_zero()) it->second[j].add(*item.coefficient, v[j]);
  }
}

void drain(SliceAcc& acc, RLattice& out) {
  for (auto& [t, cells] : acc) {
    auto& dst = out.at(t);
    for (std::size_t j = 0; j < cells.size(); ++j)
      if (!cells[j].empty()) dst[j] += cells[j].take();
  }
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

RLattice monomial_images_serial(const Reducer& r, const std::vector<ImageItem>& items, const RingPtr& ring) {
  const int mu = r.data().mu;
  RLattice out(ring, mu);
  SliceAcc acc;
  for (const auto& item : items) accumulate_item(r, item, ring, mu, acc);
  drain(acc, out);
  out.prune_zero_slices();
  return out;
}

RLattice monomial_images_parallel(const Reducer& r, const std::vector<ImageItem>& items, const RingPtr& ring) {
  const int mu = r.data().mu;
  const int nthreads = omp_get_max_threads();
  std::vector<SliceAcc> local(nthreads);
  std::exception_ptr failure;
  const long n = static_cast<long>(items.size());
#pragma omp parallel num_threads(nthreads)
  {
    SliceAcc& acc = local[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 8)
    for (long k = 0; k < n; ++k) {
      try {
        accumulate_item(r, items[k], ring, mu, acc);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  // Exact sums: merge order does not affect the result.
  RLattice out(ring, mu);
  for (auto& acc : local) drain(acc, out);
  out.prune_zero_slices();
  return out;
}

RRow row_times_matrix_serial(const RRow& v, const RMatrix& m, const RingPtr& ring, const Pruner* pruner) {
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  RRow out(cols, UnfoldRingElem(ring));
  for (std::size_t j = 0; j < cols; ++j) {
    RAccumulator acc(ring);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero() && !m[i][j].is_zero()) acc.add_product(v[i], m[i][j], Rat(1), pruner);
    out[j] = acc.take();
  }
  return out;
}

RRow row_times_matrix_parallel(const RRow& v, const RMatrix& m, const RingPtr& ring, const Pruner* pruner) {
  const long cols = m.empty() ? 0 : static_cast<long>(m.front().size());
  RRow out(cols, UnfoldRingElem(ring));
#pragma omp parallel for schedule(dynamic, 1)
  for (long j = 0; j < cols; ++j) {
    RAccumulator acc(ring);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero() && !m[i][j].is_zero()) acc.add_product(v[i], m[i][j], Rat(1), pruner);
    out[j] = acc.take();
  }
  return out;
}

}  // namespace primform
