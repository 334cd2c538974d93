#include "powersieve/rational.h"

#include <ostream>
#include <stdexcept>

namespace powersieve {

Rational::Rational(BigInt num, BigInt den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (sgn(den_) == 0) throw std::invalid_argument("rational: zero denominator");
  if (sgn(den_) < 0)
    throw std::invalid_argument("rational: negative denominator");
  normalize();
}

Rational Rational::from_ints(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(static_cast<long>(num)),
                  BigInt(static_cast<long>(den)));
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
    return Rational(BigInt(text.substr(0, slash)),
                    BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("rational: cannot parse '" + text + "'");
  }
}

void Rational::normalize() {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  return q;
}

Rational Rational::abs() const {
  return Rational(powersieve::BigInt(::abs(num_)), den_, Reduced{});
}

double Rational::to_double() const {
  mpq_class q(num_, den_);
  return q.get_d();
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational: division by zero");
  BigInt num = a.num_ * b.den_;
  BigInt den = a.den_ * b.num_;
  if (sgn(den) < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

Rational Rational::operator-() const {
  return Rational(BigInt(-num_), den_, Reduced{});
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

Rational make_rational(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("make_rational: denominator must be >= 1");
  return Rational::from_ints(p, q);
}

Rational mod1(const Rational& x) { return x - Rational(x.floor(), BigInt(1)); }

CircleDistance circle_distance(const Rational& x, const Rational& y) {
  const Rational d = mod1(x - y);
  const Rational other = Rational(1) - d;
  return CircleDistance{d < other ? d : other};
}

}  // namespace powersieve
