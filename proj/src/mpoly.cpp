#include "primform/mpoly.hpp"

#include <sstream>
#include <unordered_map>

#include "primform/errors.hpp"

namespace primform {

namespace {

std::int32_t checked_add(std::int32_t a, std::int32_t b) {
  std::int32_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorCode::Overflow, "exactalg", "exponent overflow");
  return out;
}

}  // namespace

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
  return out;
}

std::int64_t total_degree(const Exponents& e) {
  std::int64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool grevlex_less(const Exponents& a, const Exponents& b) {
  auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

std::size_t ExponentsHash::operator()(const Exponents& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto x : e) h = (h ^ static_cast<std::size_t>(static_cast<std::uint32_t>(x))) * 0x100000001b3ULL;
  return h;
}

std::shared_ptr<const VariableSet> VariableSet::make(std::vector<std::string> names,
                                                     std::vector<bool> laurent) {
  auto v = std::make_shared<VariableSet>();
  if (laurent.empty()) laurent.assign(names.size(), false);
  if (laurent.size() != names.size())
    throw Error(ErrorCode::VariableMismatch, "exactalg", "laurent flag count differs from variable count");
  v->names = std::move(names);
  v->laurent = std::move(laurent);
  return v;
}

std::optional<std::size_t> VariableSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

MPoly::MPoly() : vars_(VariableSet::make({})) {}

MPoly::MPoly(VarsPtr vars) : vars_(std::move(vars)) {}

MPoly MPoly::constant(VarsPtr vars, const Rat& c) {
  MPoly p(std::move(vars));
  p.add_term(Exponents(p.nvars(), 0), c);
  return p;
}

MPoly MPoly::variable(VarsPtr vars, std::size_t index) {
  MPoly p(std::move(vars));
  Exponents e(p.nvars(), 0);
  e.at(index) = 1;
  p.add_term(e, Rat(1));
  return p;
}

MPoly MPoly::monomial(VarsPtr vars, Exponents exps, const Rat& c) {
  MPoly p(std::move(vars));
  p.add_term(exps, c);
  return p;
}

void MPoly::check_exponents(const Exponents& e) const {
  if (e.size() != nvars())
    throw Error(ErrorCode::VariableMismatch, "exactalg", "exponent vector has wrong length");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 && !vars_->laurent[i])
      throw Error(ErrorCode::LaurentNotAllowed, "exactalg",
                  "negative exponent in non-Laurent variable " + vars_->names[i]);
}

void MPoly::require_same_vars(const MPoly& o) const {
  if (vars_ != o.vars_ && !(*vars_ == *o.vars_))
    throw Error(ErrorCode::VariableMismatch, "exactalg", "polynomials over different variable lists");
}

Rat MPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void MPoly::add_term(const Exponents& e, const Rat& c) {
  if (c.is_zero()) return;
  check_exponents(e);
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly MPoly::operator-() const { return scaled(Rat(-1)); }

MPoly MPoly::scaled(const Rat& c) const {
  MPoly out(vars_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, v * c);
  return out;
}

MPoly MPoly::shifted(const Exponents& s, const Rat& c) const {
  MPoly out(vars_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : terms_) out.add_term(add_exponents(e, s), v * c);
  return out;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * Rat(e[var]));
  }
  return out;
}

MPoly MPoly::pow(int k) const {
  if (k < 0) throw Error(ErrorCode::InvalidParameter, "exactalg", "negative power of a polynomial");
  MPoly out = constant(vars_, Rat(1));
  MPoly base = *this;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.require_same_vars(b);
  std::unordered_map<Exponents, Rat, ExponentsHash> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[add_exponents(ea, eb)] += ca * cb;
  MPoly out(a.vars_);
  for (auto& [e, c] : acc)
    if (!c.is_zero()) out.terms_.emplace(e, std::move(c));
  return out;
}

bool operator==(const MPoly& a, const MPoly& b) {
  a.require_same_vars(b);
  return a.terms_ == b.terms_;
}

MPoly poly_mul(const MPoly& a, const MPoly& b) { return a * b; }

std::string monomial_string(const VariableSet& vars, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars.names[i];
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono = monomial_string(*vars_, e);
    if (mono == "1") {
      os << mag.str();
    } else if (mag.is_one()) {
      os << mono;
    } else {
      os << mag.str() << "*" << mono;
    }
  }
  return os.str();
}

WeightSystem::WeightSystem(std::vector<Rat> weights) : q_(std::move(weights)) {
  for (const auto& q : q_)
    if (q.sign() <= 0 || q > Rat(1, 2))
      throw Error(ErrorCode::InvalidWeights, "exactalg", "weight " + q.str() + " outside (0, 1/2]");
}

Rat WeightSystem::degree(const Exponents& e) const {
  if (e.size() != q_.size())
    throw Error(ErrorCode::VariableMismatch, "exactalg", "weight count differs from variable count");
  Rat d;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) d += q_[i] * Rat(e[i]);
  return d;
}

std::optional<Rat> weighted_degree(const MPoly& m, const WeightSystem& w) {
  std::optional<Rat> deg;
  for (const auto& [e, c] : m.terms()) {
    Rat d = w.degree(e);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  return deg;
}

}  // namespace primform
