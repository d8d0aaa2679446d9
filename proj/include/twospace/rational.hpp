#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "twospace/error.hpp"

namespace twospace {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Values are kept in canonical form at all times: denominator > 0 and
/// gcd(|num|, den) == 1. Equality is structural equality of the canonical
/// form. All analysis-path arithmetic in this project goes through this
/// type; floating point appears only in presentation layers.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}

  /// Normalized n/d. Throws ValidationError on d == 0.
  Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}

  Rational(mpz_class n, mpz_class d) {
    if (d == 0)
      throw ValidationError("rational: zero denominator");
    v_ = mpq_class(std::move(n), std::move(d));
    v_.canonicalize();
  }

  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  /// Parses "p/q" or a bare integer string "p". Whitespace is not accepted.
  static Rational parse(const std::string& text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  /// Canonical string form: "p/q", or "p" when the denominator is 1.
  std::string str() const;

  /// Nearest-double approximation (presentation only, never analysis).
  double to_double() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero())
      throw ValidationError("rational: division by zero");
    return wrap(a.v_ / b.v_);
  }
  friend Rational operator-(const Rational& a) { return wrap(-a.v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  static Rational wrap(mpq_class q) {
    Rational r;
    r.v_ = std::move(q); // gmp arithmetic preserves canonical form
    return r;
  }

  mpq_class v_;
};

Rational abs(const Rational& r);

} // namespace twospace
