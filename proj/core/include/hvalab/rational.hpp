#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hvalab {

using BigInt = mpz_class;

// Exact rational scalar. Always canonical: lowest terms, positive
// denominator, zero stored as 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(implicit)
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)
  Rational(const BigInt& value) : value_(value) {}  // NOLINT(implicit)
  Rational(const BigInt& numerator, const BigInt& denominator);
  Rational(long numerator, long denominator);

  /// Parses "p", "-p" or "p/q" (decimal integers, q != 0).
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// Integer power; negative exponents invert (zero base then throws).
  Rational pow(long exponent) const;
  Rational reciprocal() const;
  Rational abs() const;

  std::string to_string() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

BigInt lcm(const BigInt& a, const BigInt& b);
BigInt gcd(const BigInt& a, const BigInt& b);

}  // namespace hvalab

template <>
struct std::hash<hvalab::Rational> {
  std::size_t operator()(const hvalab::Rational& r) const noexcept { return r.hash(); }
};
