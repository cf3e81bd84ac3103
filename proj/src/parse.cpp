#include "primform/parse.hpp"

#include <cctype>

#include "primform/errors.hpp"

namespace primform {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const VarsPtr& vars) : s_(text), vars_(vars) {}

  MPoly run() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "cli", what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return s_.substr(start, pos_ - start);
  }

  MPoly expr() {
    MPoly acc(vars_);
    bool first = true;
    for (;;) {
      int sign = 1;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        return acc;
      }
      MPoly t = term();
      if (sign < 0) acc -= t;
      else acc += t;
      first = false;
    }
  }

  MPoly term() {
    MPoly acc = power();
    while (eat('*')) acc = acc * power();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/') fail("division is only allowed between integer literals");
    return acc;
  }

  MPoly power() {
    MPoly base = primary();
    if (!eat('^')) return base;
    bool neg = false;
    bool paren = eat('(');
    if (eat('-')) neg = true;
    else eat('+');
    std::string d = digits();
    if (paren && !eat(')')) fail("expected ')'");
    if (d.size() > 9) fail("exponent too large");
    int e = std::stoi(d);
    if (!neg) return base.pow(e);
    if (base.size() != 1) fail("negative power of a non-monomial");
    const auto& [ex, c] = *base.terms().begin();
    Exponents inv(ex.size());
    for (std::size_t i = 0; i < ex.size(); ++i) inv[i] = -ex[i];
    MPoly m = MPoly::monomial(vars_, inv, c.inverse());
    return m.pow(e);
  }

  MPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        if (!at_digit()) fail("division is only allowed between integer literals");
        std::string den = digits();
        Rat d = Rat::parse(den);
        if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "cli", "zero denominator at position " + std::to_string(pos_));
        return MPoly::constant(vars_, Rat::parse(num) / d);
      }
      return MPoly::constant(vars_, Rat::parse(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto idx = vars_->index_of(name);
      if (!idx) throw Error(ErrorCode::UnknownVariable, "cli", "unknown variable '" + name + "' at position " + std::to_string(start));
      return MPoly::variable(vars_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  VarsPtr vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_polynomial(const std::string& text, const VarsPtr& vars) { return Parser(text, vars).run(); }

Representative parse_representative(const std::string& text, const UnfoldingData& unf) {
  const VariableSet& zv = *unf.base->f.vars();
  const std::size_t nz = zv.size();
  std::vector<std::string> names = zv.names;
  std::vector<bool> laurent = zv.laurent;
  laurent.resize(nz, false);
  for (const auto& n : unf.ring->names()) {
    if (zv.index_of(n)) throw Error(ErrorCode::InvalidJob, "cli", "parameter name '" + n + "' clashes with a variable");
    names.push_back(n);
    laurent.push_back(false);
  }
  names.push_back("t");
  laurent.push_back(false);
  VarsPtr all = VariableSet::make(names, laurent);
  MPoly p = parse_polynomial(text, all);

  const std::size_t nu = unf.ring->nvars();
  Representative rep;
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> ue(nu);
    int deg = 0;
    for (std::size_t j = 0; j < nu; ++j) {
      ue[j] = e[nz + j];
      deg += ue[j];
    }
    if (deg > unf.N) continue;
    Exponents ze(e.begin(), e.begin() + nz);
    int tp = e[nz + nu];
    zr_add(rep[tp], ze, UnfoldRingElem::monomial(unf.ring, unf.ring->key(ue), c));
  }
  return rep;
}

}  // namespace primform
