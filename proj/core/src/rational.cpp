#include "hvalab/rational.hpp"

#include <cctype>
#include <ostream>

#include "hvalab/error.hpp"

namespace hvalab {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw InvalidScalarError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(long numerator, long denominator)
    : Rational(BigInt(numerator), BigInt(denominator)) {}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_decimal_integer(text)) throw ScalarFormatError("not a rational: '" + std::string(text) + "'");
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_decimal_integer(num) || !is_decimal_integer(den) || den.front() == '-') {
    throw ScalarFormatError("not a rational: '" + std::string(text) + "'");
  }
  const BigInt d = parse_integer(den);
  if (d == 0) throw ScalarFormatError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidScalarError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  Rational r;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  r.value_ = mpq_class(num, den);
  return r;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw InvalidScalarError("reciprocal of zero");
  Rational r;
  r.value_ = 1 / value_;
  return r;
}

Rational Rational::abs() const {
  Rational r;
  r.value_ = ::abs(value_);
  return r;
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::hash() const {
  const std::size_t n = mpz_get_ui(value_.get_num_mpz_t());
  const std::size_t d = mpz_get_ui(value_.get_den_mpz_t());
  const std::size_t s = static_cast<std::size_t>(mpz_sgn(value_.get_num_mpz_t()) + 1);
  return (n * 0x9e3779b97f4a7c15ULL) ^ (d + 0x7f4a7c15ULL + (n << 6) + (n >> 2)) ^ (s << 61);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace hvalab
