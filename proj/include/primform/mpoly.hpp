#ifndef PRIMFORM_MPOLY_HPP
#define PRIMFORM_MPOLY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "primform/rational.hpp"

namespace primform {

using Exponents = std::vector<std::int32_t>;

// Componentwise sum with overflow checks.
Exponents add_exponents(const Exponents& a, const Exponents& b);
std::int64_t total_degree(const Exponents& e);
bool divides(const Exponents& a, const Exponents& b);

// Graded reverse lexicographic order: total degree first, then the monomial
// with the smaller exponent in the last differing variable is the larger one.
// Variable 0 is the most significant.
bool grevlex_less(const Exponents& a, const Exponents& b);

struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grevlex_less(b, a); }
};

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept;
};

struct VariableSet {
  std::vector<std::string> names;
  std::vector<bool> laurent;

  static std::shared_ptr<const VariableSet> make(std::vector<std::string> names,
                                                 std::vector<bool> laurent = {});
  std::size_t size() const { return names.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool operator==(const VariableSet&) const = default;
};

using VarsPtr = std::shared_ptr<const VariableSet>;

// Sparse multivariate polynomial over Q. Negative exponents are accepted only
// in variables carrying the Laurent flag. Zero is the empty term map.
class MPoly {
 public:
  using TermMap = std::map<Exponents, Rat, GrevlexGreater>;

  MPoly();  // zero over the empty variable list
  explicit MPoly(VarsPtr vars);
  static MPoly constant(VarsPtr vars, const Rat& c);
  static MPoly variable(VarsPtr vars, std::size_t index);
  static MPoly monomial(VarsPtr vars, Exponents exps, const Rat& c = Rat(1));

  const VarsPtr& vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Leading term in grevlex order; undefined on zero.
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rat& leading_coefficient() const { return terms_.begin()->second; }

  Rat coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rat& c);

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly operator-() const;
  MPoly scaled(const Rat& c) const;
  MPoly shifted(const Exponents& e, const Rat& c) const;  // c * z^e * this
  MPoly derivative(std::size_t var) const;
  MPoly pow(int k) const;

  friend MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
  friend MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b);

  std::string str() const;

 private:
  void check_exponents(const Exponents& e) const;
  void require_same_vars(const MPoly& o) const;

  VarsPtr vars_;
  TermMap terms_;
};

MPoly poly_mul(const MPoly& a, const MPoly& b);

std::string monomial_string(const VariableSet& vars, const Exponents& e);

class WeightSystem {
 public:
  explicit WeightSystem(std::vector<Rat> weights);
  const std::vector<Rat>& weights() const { return q_; }
  std::size_t size() const { return q_.size(); }
  const Rat& operator[](std::size_t i) const { return q_[i]; }
  Rat degree(const Exponents& e) const;

 private:
  std::vector<Rat> q_;
};

// Common weighted degree of all terms; nullopt when the terms disagree or
// the polynomial is zero.
std::optional<Rat> weighted_degree(const MPoly& m, const WeightSystem& w);

}  // namespace primform

#endif  // PRIMFORM_MPOLY_HPP
