#include "dyncert/core/dyadic.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

#include <mpfr.h>

#include "dyncert/core/error.hpp"

namespace dyncert {

namespace {

// floor(q * 2^bits) as an integer.
mpz_class scaled_floor(const mpq_class& q, long bits) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (bits >= 0) {
    num <<= static_cast<unsigned long>(bits);
  } else {
    den <<= static_cast<unsigned long>(-bits);
  }
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

mpz_class scaled_ceil(const mpq_class& q, long bits) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (bits >= 0) {
    num <<= static_cast<unsigned long>(bits);
  } else {
    den <<= static_cast<unsigned long>(-bits);
  }
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace

Dyadic::Dyadic(mpz_class mantissa, long exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (sgn(mantissa_) == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<long>(tz);
  }
}

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x)) {
    throw DynError(Errc::InvalidArgument, "Dyadic::from_double: non-finite value");
  }
  if (x == 0.0) return {};
  int e = 0;
  const double frac = std::frexp(x, &e);  // x = frac * 2^e, 0.5 <= |frac| < 1
  const auto m = static_cast<long long>(std::ldexp(frac, 53));
  mpz_class mant;
  mpz_set_si(mant.get_mpz_t(), static_cast<long>(m));
  return {mant, static_cast<long>(e) - 53};
}

Dyadic Dyadic::floor_of(const mpq_class& q, long bits) {
  return {scaled_floor(q, bits), -bits};
}

Dyadic Dyadic::ceil_of(const mpq_class& q, long bits) {
  return {scaled_ceil(q, bits), -bits};
}

mpq_class Dyadic::to_rational() const {
  mpq_class q(mantissa_);
  if (exponent_ >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(exponent_));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-exponent_));
  }
  return q;
}

double Dyadic::to_double() const { return to_double_rounded(MPFR_RNDN); }
double Dyadic::to_double_down() const { return to_double_rounded(MPFR_RNDD); }
double Dyadic::to_double_up() const { return to_double_rounded(MPFR_RNDU); }

double Dyadic::to_double_rounded(int mode) const {
  if (is_zero()) return 0.0;
  const auto bits = std::max<std::size_t>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2), 2);
  mpfr_t tmp;
  mpfr_init2(tmp, static_cast<mpfr_prec_t>(bits));
  mpfr_set_z_2exp(tmp, mantissa_.get_mpz_t(), exponent_, MPFR_RNDN);  // exact
  const double d = mpfr_get_d(tmp, static_cast<mpfr_rnd_t>(mode));
  mpfr_clear(tmp);
  return d;
}

Dyadic Dyadic::round_down(long bits) const {
  if (exponent_ >= -bits) return *this;
  mpz_class m;
  mpz_fdiv_q_2exp(m.get_mpz_t(), mantissa_.get_mpz_t(),
                  static_cast<unsigned long>(-bits - exponent_));
  return {m, -bits};
}

Dyadic Dyadic::round_up(long bits) const {
  if (exponent_ >= -bits) return *this;
  mpz_class m;
  mpz_cdiv_q_2exp(m.get_mpz_t(), mantissa_.get_mpz_t(),
                  static_cast<unsigned long>(-bits - exponent_));
  return {m, -bits};
}

Dyadic Dyadic::ldexp(long k) const {
  if (is_zero()) return {};
  Dyadic out = *this;
  out.exponent_ += k;
  return out;
}

Dyadic Dyadic::abs() const { return sign() < 0 ? -*this : *this; }

std::string Dyadic::to_string() const {
  return mantissa_.get_str() + "*2^" + std::to_string(exponent_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long e = std::min(a.exponent_, b.exponent_);
  mpz_class ma = a.mantissa_;
  mpz_class mb = b.mantissa_;
  if (a.exponent_ > e) ma <<= static_cast<unsigned long>(a.exponent_ - e);
  if (b.exponent_ > e) mb <<= static_cast<unsigned long>(b.exponent_ - e);
  return {ma + mb, e};
}

Dyadic operator-(const Dyadic& a) {
  Dyadic out = a;
  out.mantissa_ = -out.mantissa_;
  return out;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_};
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int c = 0;
  if (a.sign() != b.sign() || a.exponent_ == b.exponent_) {
    c = a.sign() != b.sign() ? a.sign() - b.sign() : cmp(a.mantissa_, b.mantissa_);
  } else if (a.exponent_ > b.exponent_) {
    mpz_class shifted = a.mantissa_;
    shifted <<= static_cast<unsigned long>(a.exponent_ - b.exponent_);
    c = cmp(shifted, b.mantissa_);
  } else {
    mpz_class shifted = b.mantissa_;
    shifted <<= static_cast<unsigned long>(b.exponent_ - a.exponent_);
    c = cmp(a.mantissa_, shifted);
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace dyncert
