#include "dyncert/core/numeric.hpp"

#include <cctype>

#include <mpfr.h>

#include "dyncert/core/error.hpp"

namespace dyncert {

namespace {

class Mpfr {
 public:
  explicit Mpfr(long bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return v_; }

  Dyadic to_dyadic() {
    if (mpfr_zero_p(v_)) return {};
    mpz_class m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    return {m, static_cast<long>(e)};
  }

 private:
  mpfr_t v_;
};

Dyadic log_rounded(const mpq_class& x, long bits, mpfr_rnd_t mode) {
  if (sgn(x) <= 0) throw DynError(Errc::InvalidArgument, "log of non-positive value");
  Mpfr arg(bits);
  Mpfr out(bits);
  mpfr_set_q(arg.get(), x.get_mpq_t(), mode);  // log is increasing
  mpfr_log(out.get(), arg.get(), mode);
  return out.to_dyadic();
}

Dyadic sqrt_rounded(const mpq_class& x, long bits, mpfr_rnd_t mode) {
  if (sgn(x) < 0) throw DynError(Errc::InvalidArgument, "sqrt of negative value");
  Mpfr arg(bits);
  Mpfr out(bits);
  mpfr_set_q(arg.get(), x.get_mpq_t(), mode);
  mpfr_sqrt(out.get(), arg.get(), mode);
  return out.to_dyadic();
}

Dyadic trig_turn(long k, long n, long bits, bool cosine) {
  Mpfr angle(bits + 32);
  mpfr_const_pi(angle.get(), MPFR_RNDN);
  mpfr_mul_si(angle.get(), angle.get(), 2 * k, MPFR_RNDN);
  mpfr_div_si(angle.get(), angle.get(), n, MPFR_RNDN);
  Mpfr out(bits);
  if (cosine) {
    mpfr_cos(out.get(), angle.get(), MPFR_RNDN);
  } else {
    mpfr_sin(out.get(), angle.get(), MPFR_RNDN);
  }
  return out.to_dyadic();
}

double q_to_double(const mpq_class& q, mpfr_rnd_t mode) {
  Mpfr tmp(53);
  mpfr_set_q(tmp.get(), q.get_mpq_t(), mode);
  return mpfr_get_d(tmp.get(), mode);
}

}  // namespace

Dyadic log_lower(const mpq_class& x, long bits) { return log_rounded(x, bits, MPFR_RNDD); }
Dyadic log_upper(const mpq_class& x, long bits) { return log_rounded(x, bits, MPFR_RNDU); }
Interval log_enclosure(const mpq_class& x, long bits) {
  return {log_lower(x, bits), log_upper(x, bits)};
}

Dyadic sqrt_lower(const mpq_class& x, long bits) { return sqrt_rounded(x, bits, MPFR_RNDD); }
Dyadic sqrt_upper(const mpq_class& x, long bits) { return sqrt_rounded(x, bits, MPFR_RNDU); }

Interval pi_enclosure(long bits) {
  Mpfr lo(bits);
  Mpfr hi(bits);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {lo.to_dyadic(), hi.to_dyadic()};
}

Dyadic cos_turn_nearest(long k, long n, long bits) { return trig_turn(k, n, bits, true); }
Dyadic sin_turn_nearest(long k, long n, long bits) { return trig_turn(k, n, bits, false); }

double to_double_down(const mpq_class& q) { return q_to_double(q, MPFR_RNDD); }
double to_double_up(const mpq_class& q) { return q_to_double(q, MPFR_RNDU); }
double to_double_nearest(const mpq_class& q) { return q_to_double(q, MPFR_RNDN); }

mpq_class parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  auto fail = [&]() -> mpq_class {
    throw DynError(Errc::ParseError, "cannot parse rational '" + raw + "'");
  };
  if (text.empty()) return fail();
  try {
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      if (text.find_first_of("/eE") != std::string::npos) return fail();
      const bool negative = text[0] == '-';
      const std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
      std::string digits = text.substr(start, dot - start) + text.substr(dot + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        return fail();
      }
      const std::size_t frac_len = text.size() - dot - 1;
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      mpq_class q(negative ? mpz_class(-num) : num, den);
      q.canonicalize();
      return q;
    }
    const std::string body = (text[0] == '+') ? text.substr(1) : text;
    if (body.find_first_not_of("-0123456789/") != std::string::npos) return fail();
    mpq_class q(body, 10);
    if (q.get_den() == 0) return fail();
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return fail();
  }
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

}  // namespace dyncert
