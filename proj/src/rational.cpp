#include "primform/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "primform/errors.hpp"

namespace primform {

Rat::Rat(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "exactalg", "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat::Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "exactalg", "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class to_mpz(std::string_view s) {
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  if (!valid_integer(num))
    throw Error(ErrorCode::ParseError, "exactalg", "malformed rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rat(to_mpz(num), mpz_class(1));
  std::string_view den = trim(text.substr(slash + 1));
  if (!valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw Error(ErrorCode::ParseError, "exactalg", "malformed rational '" + std::string(text) + "'");
  return Rat(to_mpz(num), to_mpz(den));
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "exactalg", "inverse of zero");
  return Rat(mpq_class(1 / v_));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "exactalg", "division by zero");
  v_ /= o.v_;
  return *this;
}

long Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw Error(ErrorCode::Overflow, "exactalg", "floor out of range");
  return q.get_si();
}

long Rat::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw Error(ErrorCode::Overflow, "exactalg", "ceil out of range");
  return q.get_si();
}

Rat factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f, mpz_class(1));
}

Rat pow(const Rat& base, int exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rat(n, d);
}

}  // namespace primform
