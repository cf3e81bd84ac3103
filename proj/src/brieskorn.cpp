#include "primform/brieskorn.hpp"

#include <mutex>
#include <sstream>

#include "primform/errors.hpp"
#include "primform/kernels.hpp"

namespace primform {

LatticeVector LatticeVector::basis_vector(int mu, int index, int t_power) {
  LatticeVector v(mu);
  std::vector<Rat> e(mu);
  e[index] = Rat(1);
  v.slices.emplace(t_power, std::move(e));
  return v;
}

void LatticeVector::add(int t_power, const std::vector<Rat>& v, const Rat& scale) {
  if (scale.is_zero()) return;
  auto& dst = slices[t_power];
  if (dst.empty()) dst.assign(mu, Rat(0));
  for (int j = 0; j < mu; ++j)
    if (!v[j].is_zero()) dst[j] += v[j] * scale;
}

void LatticeVector::add(const LatticeVector& o, int shift, const Rat& scale) {
  for (const auto& [k, v] : o.slices) add(k + shift, v, scale);
}

void LatticeVector::prune_zero_slices() {
  for (auto it = slices.begin(); it != slices.end();) {
    bool zero = true;
    for (const auto& x : it->second)
      if (!x.is_zero()) zero = false;
    it = zero ? slices.erase(it) : std::next(it);
  }
}

bool LatticeVector::is_zero() const {
  for (const auto& [k, v] : slices)
    for (const auto& x : v)
      if (!x.is_zero()) return false;
  return true;
}

const std::vector<Rat>* LatticeVector::slice(int t_power) const {
  auto it = slices.find(t_power);
  return it == slices.end() ? nullptr : &it->second;
}

bool operator==(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector x = a, y = b;
  x.prune_zero_slices();
  y.prune_zero_slices();
  return x.slices == y.slices;
}

std::string LatticeVector::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : slices)
    for (int j = 0; j < mu; ++j) {
      if (v[j].is_zero()) continue;
      os << (first ? "" : " + ") << "(" << v[j] << ")*t^" << k << "*phi" << (j + 1);
      first = false;
    }
  return first ? "0" : os.str();
}

void zr_add(ZRPoly& p, const Exponents& e, const UnfoldRingElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

ZRPoly zr_mul(const ZRPoly& a, const ZRPoly& b, const RingPtr& ring, const Pruner* pruner) {
  std::map<Exponents, RAccumulator> acc;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponents e = add_exponents(ea, eb);
      auto it = acc.find(e);
      if (it == acc.end()) it = acc.emplace(e, RAccumulator(ring)).first;
      it->second.add_product(ca, cb, Rat(1), pruner);
    }
  ZRPoly out;
  for (auto& [e, c] : acc) {
    UnfoldRingElem x = c.take();
    if (!x.is_zero()) out.emplace(e, std::move(x));
  }
  return out;
}

ZRPoly zr_from_mpoly(const MPoly& p, const RingPtr& ring) {
  ZRPoly out;
  for (const auto& [e, c] : p.terms()) zr_add(out, e, UnfoldRingElem::constant(ring, c));
  return out;
}

std::vector<UnfoldRingElem>& RLattice::at(int t_power) {
  auto& v = slices[t_power];
  if (v.empty()) v.assign(mu, UnfoldRingElem(ring));
  return v;
}

void RLattice::prune_zero_slices() {
  for (auto it = slices.begin(); it != slices.end();) {
    bool zero = true;
    for (const auto& x : it->second)
      if (!x.is_zero()) zero = false;
    it = zero ? slices.erase(it) : std::next(it);
  }
}

bool RLattice::is_zero() const {
  for (const auto& [k, v] : slices)
    for (const auto& x : v)
      if (!x.is_zero()) return false;
  return true;
}

bool operator==(const RLattice& a, const RLattice& b) {
  RLattice x = a, y = b;
  x.prune_zero_slices();
  y.prune_zero_slices();
  if (x.slices.size() != y.slices.size()) return false;
  for (const auto& [k, v] : x.slices) {
    auto it = y.slices.find(k);
    if (it == y.slices.end()) return false;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != it->second[j]) return false;
  }
  return true;
}

Reducer::Reducer(const SingularityData& data, ReducerOptions opts) : data_(&data), opts_(opts) {}

void Reducer::check_exponents(const Exponents& e) const {
  if (data_->mode == SingularityMode::LaurentP1) return;
  for (auto x : e)
    if (x < 0)
      throw Error(ErrorCode::LaurentModeRequired, "brieskorn", "negative exponent outside the Laurent mode");
}

int Reducer::polynomial_guard(const Exponents& e) const { return static_cast<int>(data_->weights->degree(e).ceil()) + 1; }

std::size_t Reducer::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

void Reducer::clear_cache() {
  std::unique_lock lock(mutex_);
  cache_.clear();
}

const LatticeVector& Reducer::reduce_monomial(const Exponents& e) const {
  check_exponents(e);
  return reduce_monomial_depth(e, 0);
}

const LatticeVector& Reducer::reduce_monomial_depth(const Exponents& e, int depth) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(e);
    if (it != cache_.end()) return *it->second;
  }
  auto v = std::make_unique<LatticeVector>(data_->mode == SingularityMode::Polynomial ? compute_polynomial(e, depth)
                                                                                       : compute_laurent(e[0], depth));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.try_emplace(e, std::move(v));
  return *it->second;
}

LatticeVector Reducer::compute_polynomial(const Exponents& e, int depth) const {
  const SingularityData& d = *data_;
  LatticeVector out(d.mu);
  if (auto idx = d.standard_index(e)) {
    std::vector<Rat> unit(d.mu);
    unit[*idx] = Rat(1);
    out.add(0, d.coordinates_of_standard(unit));
    out.prune_zero_slices();
    return out;
  }
  MPoly h = MPoly::monomial(d.f.vars(), e);
  auto div = d.groebner.divide(h);
  if (!div.remainder.is_zero()) out.add(0, d.coordinates(div.remainder));
  MPoly next(d.f.vars());
  for (std::size_t i = 0; i < div.quotients.size(); ++i) next -= div.quotients[i].derivative(i);
  if (!next.is_zero()) {
    // Each step lowers the weighted degree by one; a nonzero slice below
    // degree zero means the chain cannot end.
    Rat deg = d.weights->degree(e);
    if (deg < Rat(1))
      throw Error(ErrorCode::NonTermination, "brieskorn", "t-reduction did not terminate at degree " + deg.str());
    for (const auto& [m, c] : next.terms()) out.add(reduce_monomial_depth(m, depth + 1), 1, c);
  }
  out.prune_zero_slices();
  return out;
}

LatticeVector Reducer::compute_laurent(int k, int depth) const {
  const SingularityData& d = *data_;
  const Rat& q = d.q;
  LatticeVector out(2);
  if (depth > opts_.laurent_depth)
    throw Error(ErrorCode::NonTermination, "brieskorn",
                "Laurent reduction exceeded depth " + std::to_string(opts_.laurent_depth));
  if (k == 0) return LatticeVector::basis_vector(2, 0);
  if (k == -1) {
    out.add(0, {Rat(0), q.inverse()});
    return out;
  }
  if (k >= 1) {
    // [z^k] = q [z^{k-2}] - t (k-1) [z^{k-1}]
    out.add(reduce_monomial_depth({k - 2}, depth + 1), 0, q);
    if (k != 1) out.add(reduce_monomial_depth({k - 1}, depth + 1), 1, Rat(-(k - 1)));
  } else {
    // [z^k] = (1/q) [z^{k+2}] + t (k+1)/q [z^{k+1}]
    out.add(reduce_monomial_depth({k + 2}, depth + 1), 0, q.inverse());
    out.add(reduce_monomial_depth({k + 1}, depth + 1), 1, Rat(k + 1) / q);
  }
  out.prune_zero_slices();
  return out;
}

LatticeVector Reducer::reduce(const MPoly& h) const {
  LatticeVector out(data_->mu);
  for (const auto& [e, c] : h.terms()) {
    check_exponents(e);
    out.add(reduce_monomial_depth(e, 0), 0, c);
  }
  out.prune_zero_slices();
  return out;
}

LatticeVector Reducer::reduce_uncached(const MPoly& h) const {
  const SingularityData& d = *data_;
  if (d.mode == SingularityMode::LaurentP1) {
    Reducer fresh(d, opts_);
    return fresh.reduce(h);
  }
  LatticeVector out(d.mu);
  int guard = 0;
  for (const auto& [e, c] : h.terms()) {
    check_exponents(e);
    guard = std::max(guard, polynomial_guard(e));
  }
  MPoly cur = h;
  for (int k = 0; !cur.is_zero(); ++k) {
    if (k > guard) throw Error(ErrorCode::NonTermination, "brieskorn", "t-reduction exceeded its depth guard");
    auto div = d.groebner.divide(cur);
    if (!div.remainder.is_zero()) out.add(k, d.coordinates(div.remainder));
    MPoly next(d.f.vars());
    for (std::size_t i = 0; i < div.quotients.size(); ++i) next -= div.quotients[i].derivative(i);
    cur = std::move(next);
  }
  out.prune_zero_slices();
  return out;
}

LatticeVector reduce_central(const Reducer& r, const MPoly& h) { return r.reduce(h); }

LatticeVector reduce_laurent(const Reducer& r, const MPoly& h) {
  if (r.data().mode != SingularityMode::LaurentP1)
    throw Error(ErrorCode::UnsupportedContext, "brieskorn", "reduce_laurent needs the Laurent mode");
  return r.reduce(h);
}

RLattice reduce_central_linear(const Reducer& r, const std::map<int, ZRPoly>& input, const RingPtr& ring,
                               ExecPolicy policy) {
  std::vector<ImageItem> items;
  for (const auto& [t, poly] : input)
    for (const auto& [e, c] : poly) items.push_back({t, &e, &c});
  return policy == ExecPolicy::Serial ? monomial_images_serial(r, items, ring)
                                      : monomial_images_parallel(r, items, ring);
}

}  // namespace primform
