#include "primform/unfold_ring.hpp"

#include <algorithm>
#include <sstream>

#include "primform/errors.hpp"

namespace primform {

UnfoldRing::UnfoldRing(std::vector<std::string> names, int N, std::vector<Rat> weights)
    : names_(std::move(names)), N_(N), weights_(std::move(weights)) {
  if (names_.size() > static_cast<std::size_t>(UKey::kMaxVars))
    throw Error(ErrorCode::CapacityExceeded, "exactalg",
                "at most " + std::to_string(UKey::kMaxVars) + " parameters are supported");
  if (N_ < 0 || N_ > UKey::kMaxExp)
    throw Error(ErrorCode::CapacityExceeded, "exactalg",
                "truncation order must lie in [0, " + std::to_string(UKey::kMaxExp) + "]");
  if (weights_.empty()) weights_.assign(names_.size(), Rat(0));
  if (weights_.size() != names_.size())
    throw Error(ErrorCode::VariableMismatch, "exactalg", "parameter weight count differs from name count");
  mpz_class l = 1;
  for (const auto& w : weights_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.raw().get_den_mpz_t());
  if (!l.fits_slong_p()) throw Error(ErrorCode::Overflow, "exactalg", "weight denominator too large");
  den_ = l.get_si();
  for (const auto& w : weights_) {
    mpq_class scaled = w.raw() * l;
    wnum_.push_back(mpz_class(scaled.get_num()).get_si());
  }
}

std::int64_t UnfoldRing::weight(const UKey& k) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < wnum_.size(); ++i) {
    int e = k.exponent(static_cast<int>(i));
    if (e) s += e * wnum_[i];
  }
  return s;
}

Rat UnfoldRing::weight_rat(const UKey& k) const { return Rat(weight(k), den_); }

UKey UnfoldRing::key(const std::vector<int>& exps) const {
  if (exps.size() != names_.size())
    throw Error(ErrorCode::VariableMismatch, "exactalg", "parameter exponent vector has wrong length");
  UKey k;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > UKey::kMaxExp)
      throw Error(ErrorCode::CapacityExceeded, "exactalg", "parameter exponent out of range");
    k.set(static_cast<int>(i), exps[i]);
  }
  return k;
}

std::string UnfoldRing::monomial_str(const UKey& k) const {
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    int e = k.exponent(static_cast<int>(i));
    if (!e) continue;
    if (!out.empty()) out += "*";
    out += names_[i];
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

bool UnfoldRing::same_as(const UnfoldRing& o) const {
  return this == &o || (N_ == o.N_ && names_ == o.names_ && weights_ == o.weights_);
}

Pruner::Pruner(const UnfoldRing& ring, std::int64_t upper_num, std::optional<std::int64_t> lower_num)
    : ring_(&ring), upper_(upper_num), has_lower_(lower_num.has_value()) {
  if (lower_num) lower_ = *lower_num;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    dmin_ = std::min(dmin_, ring.weight_num(i));
    dmax_ = std::max(dmax_, ring.weight_num(i));
  }
}

UnfoldRingElem UnfoldRingElem::constant(RingPtr ring, const Rat& c) {
  return monomial(std::move(ring), UKey{}, c);
}

UnfoldRingElem UnfoldRingElem::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->nvars()) throw Error(ErrorCode::UnknownVariable, "exactalg", "parameter index out of range");
  UKey k;
  k.set(static_cast<int>(i), 1);
  return monomial(std::move(ring), k, Rat(1));
}

UnfoldRingElem UnfoldRingElem::monomial(RingPtr ring, const UKey& k, const Rat& c) {
  UnfoldRingElem x(std::move(ring));
  if (!c.is_zero() && k.degree() <= x.ring_->order()) x.terms_.emplace_back(k, c);
  return x;
}

Rat UnfoldRingElem::constant_term() const { return coefficient(UKey{}); }

Rat UnfoldRingElem::coefficient(const UKey& k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, const UKey& key) { return t.first < key; });
  if (it != terms_.end() && it->first == k) return it->second;
  return Rat(0);
}

void UnfoldRingElem::check_ring(const UnfoldRingElem& o) const {
  if (!ring_ || !o.ring_ || ring_ == o.ring_) return;
  if (ring_->order() != o.ring_->order())
    throw Error(ErrorCode::TruncationMismatch, "exactalg",
                "truncation orders " + std::to_string(ring_->order()) + " and " +
                    std::to_string(o.ring_->order()) + " differ");
  if (!ring_->same_as(*o.ring_))
    throw Error(ErrorCode::VariableMismatch, "exactalg", "elements of different parameter rings");
}

void UnfoldRingElem::merge(const UnfoldRingElem& o, bool negate) {
  check_ring(o);
  if (o.terms_.empty()) return;
  if (!ring_) ring_ = o.ring_;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.emplace_back(b->first, negate ? -b->second : b->second);
      ++b;
    } else {
      Rat c = negate ? a->second - b->second : a->second + b->second;
      if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

UnfoldRingElem& UnfoldRingElem::operator+=(const UnfoldRingElem& o) {
  merge(o, false);
  return *this;
}

UnfoldRingElem& UnfoldRingElem::operator-=(const UnfoldRingElem& o) {
  merge(o, true);
  return *this;
}

UnfoldRingElem UnfoldRingElem::operator-() const { return scaled(Rat(-1)); }

UnfoldRingElem UnfoldRingElem::scaled(const Rat& c) const {
  UnfoldRingElem out(ring_);
  if (c.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [k, v] : terms_) out.terms_.emplace_back(k, v * c);
  return out;
}

UnfoldRingElem UnfoldRingElem::pruned(const Pruner& p) const {
  UnfoldRingElem out(ring_);
  for (const auto& t : terms_)
    if (p.keep(t.first)) out.terms_.push_back(t);
  return out;
}

bool operator==(const UnfoldRingElem& a, const UnfoldRingElem& b) {
  a.check_ring(b);
  return a.terms_ == b.terms_;
}

std::vector<UnfoldRingElem::Term> UnfoldRingElem::sorted_terms() const {
  std::vector<Term> out = terms_;
  std::size_t n = ring_ ? ring_->nvars() : 0;
  std::sort(out.begin(), out.end(), [n](const Term& x, const Term& y) {
    int dx = x.first.degree(), dy = y.first.degree();
    if (dx != dy) return dx < dy;
    for (std::size_t i = 0; i < n; ++i) {
      int ex = x.first.exponent(static_cast<int>(i)), ey = y.first.exponent(static_cast<int>(i));
      if (ex != ey) return ex > ey;
    }
    return false;
  });
  return out;
}

std::string UnfoldRingElem::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : sorted_terms()) {
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    Rat mag = c.abs();
    if (k.is_one()) {
      os << mag.str();
    } else if (mag.is_one()) {
      os << ring_->monomial_str(k);
    } else {
      os << mag.str() << "*" << ring_->monomial_str(k);
    }
  }
  return os.str();
}

UnfoldRingElem UnfoldRingElem::from_terms(RingPtr ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  UnfoldRingElem out(std::move(ring));
  for (auto& t : terms) {
    if (t.first.degree() > out.ring_->order()) continue;
    if (!out.terms_.empty() && out.terms_.back().first == t.first) {
      out.terms_.back().second += t.second;
    } else {
      if (!out.terms_.empty() && out.terms_.back().second.is_zero()) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().second.is_zero()) out.terms_.pop_back();
  return out;
}

UnfoldRingElem trunc_mul(const UnfoldRingElem& a, const UnfoldRingElem& b, const Pruner* pruner) {
  if (a.ring() && b.ring() && a.ring() != b.ring() && a.ring()->order() != b.ring()->order())
    throw Error(ErrorCode::TruncationMismatch, "exactalg", "trunc_mul with different truncation orders");
  const RingPtr& ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero() || b.is_zero()) return UnfoldRingElem(ring);
  RAccumulator acc(ring);
  acc.add_product(a, b, Rat(1), pruner);
  return acc.take();
}

UnfoldRingElem truncate_to(const UnfoldRingElem& x, const RingPtr& smaller) {
  if (x.ring() && x.ring()->names() != smaller->names())
    throw Error(ErrorCode::VariableMismatch, "exactalg", "truncate_to with different parameters");
  std::vector<UnfoldRingElem::Term> kept;
  for (const auto& t : x.terms())
    if (t.first.degree() <= smaller->order()) kept.push_back(t);
  return UnfoldRingElem::from_terms(smaller, std::move(kept));
}

void RAccumulator::add(const UKey& k, const Rat& c) {
  if (c.is_zero() || k.degree() > ring_->order()) return;
  acc_[k] += c;
}

void RAccumulator::add(const UnfoldRingElem& x, const Rat& scale) {
  if (scale.is_zero()) return;
  for (const auto& [k, c] : x.terms()) acc_[k] += c * scale;
}

void RAccumulator::add_product(const UnfoldRingElem& a, const UnfoldRingElem& b, const Rat& scale,
                               const Pruner* pruner) {
  const int N = ring_->order();
  mpq_class tmp;
  for (const auto& [ka, ca] : a.terms()) {
    int da = ka.degree();
    if (da > N) continue;
    mpq_class cs = ca.raw() * scale.raw();
    for (const auto& [kb, cb] : b.terms()) {
      if (da + kb.degree() > N) continue;
      UKey k = ka + kb;
      if (pruner && !pruner->keep(k)) continue;
      tmp = cs * cb.raw();
      auto [it, inserted] = acc_.try_emplace(k, Rat(tmp));
      if (!inserted) it->second += Rat(tmp);
    }
  }
}

UnfoldRingElem RAccumulator::take() {
  std::vector<UnfoldRingElem::Term> terms;
  terms.reserve(acc_.size());
  for (auto& [k, c] : acc_)
    if (!c.is_zero()) terms.emplace_back(k, std::move(c));
  acc_.clear();
  std::sort(terms.begin(), terms.end(),
            [](const UnfoldRingElem::Term& x, const UnfoldRingElem::Term& y) { return x.first < y.first; });
  UnfoldRingElem out(ring_);
  return UnfoldRingElem::from_terms(ring_, std::move(terms));
}

}  // namespace primform
