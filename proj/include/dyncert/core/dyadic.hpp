#pragma once

#include <compare>
#include <string>

#include <gmpxx.h>

namespace dyncert {

/// Exact binary rational mantissa * 2^exponent.
///
/// Values are kept canonical: the mantissa is odd, or the value is zero with
/// exponent 0. Addition, subtraction and multiplication are exact; rounding
/// only happens through the explicit round_down / round_up calls.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(mpz_class mantissa, long exponent);
  Dyadic(long value) : Dyadic(mpz_class(value), 0) {}  // NOLINT implicit

  /// Exact conversion; every finite double is dyadic. Throws on inf/nan.
  static Dyadic from_double(double x);

  /// Largest multiple of 2^-bits not above q (floor) / smallest not below (ceil).
  static Dyadic floor_of(const mpq_class& q, long bits);
  static Dyadic ceil_of(const mpq_class& q, long bits);

  const mpz_class& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }

  bool is_zero() const { return sgn(mantissa_) == 0; }
  int sign() const { return sgn(mantissa_); }

  mpq_class to_rational() const;
  /// Round-to-nearest double (exact when the mantissa fits in 53 bits).
  double to_double() const;
  /// Directed conversions: to_double_down() <= value <= to_double_up().
  double to_double_down() const;
  double to_double_up() const;

  /// Multiple of 2^-bits, rounded toward -inf / +inf.
  Dyadic round_down(long bits) const;
  Dyadic round_up(long bits) const;

  /// this * 2^k, exact.
  Dyadic ldexp(long k) const;
  Dyadic abs() const;

  /// "m*2^e" form, parseable by parse().
  std::string to_string() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void canonicalize();
  double to_double_rounded(int mode) const;

  mpz_class mantissa_{0};
  long exponent_ = 0;
};

Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

}  // namespace dyncert
