#ifndef PRIMFORM_UNFOLD_RING_HPP
#define PRIMFORM_UNFOLD_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "primform/rational.hpp"

namespace primform {

// Exponent vector of a u-monomial packed as 4-bit nibbles: up to 32 variables,
// each exponent at most 15. Since every stored monomial has total degree
// <= N <= 15, adding two keys of a product never carries across nibbles.
struct UKey {
  std::uint64_t w[2] = {0, 0};

  static constexpr int kMaxVars = 32;
  static constexpr int kMaxExp = 15;

  int exponent(int i) const { return static_cast<int>((w[i >> 4] >> ((i & 15) * 4)) & 0xF); }
  void set(int i, int e) {
    auto& word = w[i >> 4];
    int sh = (i & 15) * 4;
    word = (word & ~(std::uint64_t{0xF} << sh)) | (std::uint64_t(e) << sh);
  }
  int degree() const { return nibble_sum(w[0]) + nibble_sum(w[1]); }
  bool is_one() const { return w[0] == 0 && w[1] == 0; }

  friend UKey operator+(UKey a, const UKey& b) {
    a.w[0] += b.w[0];
    a.w[1] += b.w[1];
    return a;
  }
  friend bool operator==(const UKey& a, const UKey& b) { return a.w[0] == b.w[0] && a.w[1] == b.w[1]; }
  friend bool operator!=(const UKey& a, const UKey& b) { return !(a == b); }
  friend bool operator<(const UKey& a, const UKey& b) {
    return a.w[1] != b.w[1] ? a.w[1] < b.w[1] : a.w[0] < b.w[0];
  }

 private:
  static int nibble_sum(std::uint64_t x) {
    x = (x & 0x0F0F0F0F0F0F0F0FULL) + ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL);
    return static_cast<int>((x * 0x0101010101010101ULL) >> 56);
  }
};

struct UKeyHash {
  std::size_t operator()(const UKey& k) const noexcept {
    return static_cast<std::size_t>(k.w[0] * 0x9E3779B97F4A7C15ULL ^ (k.w[1] + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL);
  }
};

// Q[u_1..u_n]/m^{N+1}. Weighted degrees of the variables are kept as integer
// numerators over one common denominator so that grading checks stay integral.
class UnfoldRing {
 public:
  UnfoldRing(std::vector<std::string> names, int N, std::vector<Rat> weights);

  std::size_t nvars() const { return names_.size(); }
  int order() const { return N_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Rat>& weights() const { return weights_; }
  std::int64_t denominator() const { return den_; }
  std::int64_t weight_num(std::size_t i) const { return wnum_[i]; }
  std::int64_t weight(const UKey& k) const;  // numerator over denominator()
  Rat weight_rat(const UKey& k) const;

  UKey key(const std::vector<int>& exps) const;
  std::string monomial_str(const UKey& k) const;

  bool same_as(const UnfoldRing& o) const;

 private:
  std::vector<std::string> names_;
  int N_;
  std::vector<Rat> weights_;
  std::vector<std::int64_t> wnum_;
  std::int64_t den_ = 1;
};

using RingPtr = std::shared_ptr<const UnfoldRing>;

// Drops factor monomials whose weighted degree can no longer land in [L, U]
// after multiplying by at most N - |m| further variables.
class Pruner {
 public:
  Pruner(const UnfoldRing& ring, std::int64_t upper_num, std::optional<std::int64_t> lower_num);

  bool keep(const UKey& k) const {
    std::int64_t w = ring_->weight(k);
    std::int64_t room = ring_->order() - k.degree();
    if (w + room * dmin_ > upper_) return false;
    if (has_lower_ && w + room * dmax_ < lower_) return false;
    return true;
  }

 private:
  const UnfoldRing* ring_;
  std::int64_t upper_;
  std::int64_t lower_ = 0;
  bool has_lower_;
  std::int64_t dmin_ = 0;
  std::int64_t dmax_ = 0;
};

class UnfoldRingElem {
 public:
  using Term = std::pair<UKey, Rat>;

  UnfoldRingElem() = default;
  explicit UnfoldRingElem(RingPtr ring) : ring_(std::move(ring)) {}
  static UnfoldRingElem constant(RingPtr ring, const Rat& c);
  static UnfoldRingElem variable(RingPtr ring, std::size_t i);
  static UnfoldRingElem monomial(RingPtr ring, const UKey& k, const Rat& c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rat constant_term() const;
  Rat coefficient(const UKey& k) const;

  UnfoldRingElem& operator+=(const UnfoldRingElem& o);
  UnfoldRingElem& operator-=(const UnfoldRingElem& o);
  UnfoldRingElem operator-() const;
  UnfoldRingElem scaled(const Rat& c) const;
  UnfoldRingElem pruned(const Pruner& p) const;

  friend UnfoldRingElem operator+(UnfoldRingElem a, const UnfoldRingElem& b) { a += b; return a; }
  friend UnfoldRingElem operator-(UnfoldRingElem a, const UnfoldRingElem& b) { a -= b; return a; }
  friend bool operator==(const UnfoldRingElem& a, const UnfoldRingElem& b);
  friend bool operator!=(const UnfoldRingElem& a, const UnfoldRingElem& b) { return !(a == b); }

  // Terms in display order: by total degree, then lexicographic in exponents.
  std::vector<Term> sorted_terms() const;
  std::string str() const;

  // Builds from unsorted, possibly repeated terms.
  static UnfoldRingElem from_terms(RingPtr ring, std::vector<Term> terms);

 private:
  void check_ring(const UnfoldRingElem& o) const;
  void merge(const UnfoldRingElem& o, bool negate);

  RingPtr ring_;
  std::vector<Term> terms_;  // sorted by key, nonzero coefficients
};

UnfoldRingElem trunc_mul(const UnfoldRingElem& a, const UnfoldRingElem& b, const Pruner* pruner = nullptr);

// Re-expresses x in a ring with the same variables and a smaller order.
UnfoldRingElem truncate_to(const UnfoldRingElem& x, const RingPtr& smaller);

// Hash-based accumulator for sums of many products.
class RAccumulator {
 public:
  explicit RAccumulator(RingPtr ring) : ring_(std::move(ring)) {}
  void add(const UKey& k, const Rat& c);
  void add(const UnfoldRingElem& x, const Rat& scale = Rat(1));
  void add_product(const UnfoldRingElem& a, const UnfoldRingElem& b, const Rat& scale, const Pruner* pruner);
  bool empty() const { return acc_.empty(); }
  UnfoldRingElem take();

 private:
  RingPtr ring_;
  std::unordered_map<UKey, Rat, UKeyHash> acc_;
};

}  // namespace primform

#endif  // PRIMFORM_UNFOLD_RING_HPP
