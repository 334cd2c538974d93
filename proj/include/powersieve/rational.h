#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace powersieve {

using BigInt = mpz_class;

// Reduced fraction with arbitrary-precision numerator and positive
// denominator. Ordering is by cross-multiplication, never by conversion.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value)  // NOLINT(google-explicit-constructor)
      : num_(static_cast<long>(value)), den_(1) {}
  // Throws std::invalid_argument when den <= 0.
  Rational(BigInt num, BigInt den);

  static Rational from_ints(std::int64_t num, std::int64_t den);
  // Parses "p/q" or "p".
  static Rational parse(const std::string& text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return sgn(num_) == 0; }
  int sign() const { return sgn(num_); }

  BigInt floor() const;
  Rational abs() const;
  double to_double() const;
  std::string to_string() const;  // "p/q", or "p" when q = 1

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  struct Reduced {};
  Rational(BigInt num, BigInt den, Reduced)
      : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Distance from a real number to its nearest integer, kept exact.
struct CircleDistance {
  Rational value;  // 0 <= value <= 1/2
};

// Reduced p/q; q must be positive.
Rational make_rational(std::int64_t p, std::int64_t q);

// Representative of x modulo 1 in [0, 1).
Rational mod1(const Rational& x);

// ||x - y||, the circle distance on R/Z.
CircleDistance circle_distance(const Rational& x, const Rational& y);

}  // namespace powersieve
