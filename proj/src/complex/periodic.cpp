#include "dyncert/complex/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"

namespace dyncert::complex {

const char* periodic_class_name(PeriodicClass c) {
  switch (c) {
    case PeriodicClass::Attracting:
      return "Attracting";
    case PeriodicClass::Repelling:
      return "Repelling";
    case PeriodicClass::NeutralParabolicSuspected:
      return "NeutralParabolicSuspected";
    case PeriodicClass::NeutralUnresolved:
      return "NeutralUnresolved";
  }
  return "?";
}

namespace {

struct Orbit {
  ComplexBox image;       // f^k(B)
  ComplexBox derivative;  // (f^k)'(B)
};

Orbit iterate(const BoxPolynomial& f, const ComplexBox& b, int k, WorkPrecision p) {
  ComplexBox z = b;
  ComplexBox der = ComplexBox::point(Dyadic(1), Dyadic(0));
  for (int j = 0; j < k; ++j) {
    der = mul(der, box_derivative(f, z, p), p);
    z = box_image(f, z, p);
  }
  return {z, der};
}

ComplexBox box_of(cdouble c, double r, WorkPrecision p) {
  const Dyadic re = Dyadic::from_double(c.real()).round_down(p.bits);
  const Dyadic im = Dyadic::from_double(c.imag()).round_down(p.bits);
  const Dyadic rad = Dyadic::from_double(r);
  return {Interval(re - rad, re + rad).rounded(p), Interval(im - rad, im + rad).rounded(p)};
}

cdouble centre(const ComplexBox& b) { return {b.re().midpoint().to_double(), b.im().midpoint().to_double()}; }

// Krawczyk operator for g(z) = f^k(z) - z on a square box around c. Returns
// the contracted box when it maps strictly inside the input box.
std::optional<ComplexBox> krawczyk(const BoxPolynomial& f, int k, cdouble c, double r, cdouble y, WorkPrecision p) {
  const ComplexBox b = box_of(c, r, p);
  const ComplexBox mid = ComplexBox::point(b.re().midpoint(), b.im().midpoint());
  const ComplexBox one = ComplexBox::point(Dyadic(1), Dyadic(0));
  const ComplexBox yb = ComplexBox::point(Dyadic::from_double(y.real()).round_down(p.bits),
                                          Dyadic::from_double(y.imag()).round_down(p.bits));
  const Orbit at_mid = iterate(f, mid, k, p);
  const ComplexBox g_mid = sub(at_mid.image, mid, p);
  const Orbit over = iterate(f, b, k, p);
  const ComplexBox dg = sub(over.derivative, one, p);
  const ComplexBox kb =
      add(sub(mid, mul(yb, g_mid, p), p), mul(sub(one, mul(yb, dg, p), p), sub(b, mid, p), p), p);
  if (!b.contains_strictly(kb)) return std::nullopt;
  return kb;
}

bool near_root_of_unity(const ComplexBox& m) {
  const double pad = 1e-9;
  const double lo_re = m.re().lo().to_double_down() - pad;
  const double hi_re = m.re().hi().to_double_up() + pad;
  const double lo_im = m.im().lo().to_double_down() - pad;
  const double hi_im = m.im().hi().to_double_up() + pad;
  for (int q = 1; q <= 12; ++q) {
    for (int s = 0; s < q; ++s) {
      if (std::gcd(s, q) != 1) continue;
      const double a = 2.0 * M_PI * s / q;
      const double x = std::cos(a);
      const double y = std::sin(a);
      if (lo_re <= x && x <= hi_re && lo_im <= y && y <= hi_im) return true;
    }
  }
  return false;
}

PeriodicClass classify_multiplier(const ComplexBox& m, WorkPrecision p, bool isolated) {
  const Interval n2 = m.norm2(p);
  if (isolated && n2.hi() < Dyadic(1)) return PeriodicClass::Attracting;
  if (isolated && n2.lo() > Dyadic(1)) return PeriodicClass::Repelling;
  return near_root_of_unity(m) ? PeriodicClass::NeutralParabolicSuspected : PeriodicClass::NeutralUnresolved;
}

bool lower_period(const BoxPolynomial& f, const ComplexBox& b, int k, WorkPrecision p) {
  for (int j = 1; j < k; ++j) {
    if (k % j != 0) continue;
    if (iterate(f, b, j, p).image.intersects(b)) return true;
  }
  return false;
}

}  // namespace

std::vector<PeriodicPointReport> classify_periodic(const PolySpec& f, int k, long bits) {
  if (k < 1) throw DynError(Errc::InvalidArgument, "period must be positive");
  const int d = f.degree();
  long degree = 1;
  for (int j = 0; j < k; ++j) {
    degree *= d;
    if (degree > (1L << 16)) throw DynError(Errc::InvalidArgument, "d^k must not exceed 2^16");
  }
  const WorkPrecision p{bits};
  const BoxPolynomial fb = f.boxes(bits + 8);

  RootProblem problem;
  problem.degree = static_cast<int>(degree);
  problem.p = [&f, k](cdouble w) {
    cdouble z = w;
    for (int j = 0; j < k; ++j) z = f.eval(z);
    return z - w;
  };
  problem.dp = [&f, k](cdouble w) {
    cdouble z = w;
    cdouble der = 1.0;
    for (int j = 0; j < k; ++j) {
      der *= f.derivative(z);
      z = f.eval(z);
    }
    return der - 1.0;
  };
  problem.start_radius = escape_radius(f).to_double();
  auto [roots, converged] = aberth(problem, 0.4, 400);
  if (!converged) std::tie(roots, converged) = aberth(problem, 1.3, 800);
  for (const auto& w : roots) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw DynError(Errc::NoConvergence, "periodic-point iteration diverged");
    }
  }

  // Group approximations that sit on top of each other (multiple roots).
  const std::size_t n = roots.size();
  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(roots[i] - roots[j]) < 1e-6 * (1.0 + std::abs(roots[i]))) {
        group[i] = group[j];
        break;
      }
    }
  }

  std::vector<PeriodicPointReport> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (group[i] != i) continue;
    std::vector<cdouble> members;
    for (std::size_t j = 0; j < n; ++j) {
      if (group[j] == i) members.push_back(roots[j]);
    }
    PeriodicPointReport rep;
    rep.period = k;
    bool done = false;
    if (members.size() == 1) {
      const cdouble c = members[0];
      const cdouble y = 1.0 / problem.dp(c);
      const double scale = 1.0 + std::abs(c);
      for (double r : {0x1p-40, 0x1p-32, 0x1p-24, 0x1p-16, 0x1p-10}) {
        const auto kb = krawczyk(fb, k, c, r * scale, y, p);
        if (kb) {
          rep.point = *kb;
          rep.isolated = true;
          done = true;
          break;
        }
      }
    }
    if (!done) {
      cdouble lo = members[0];
      cdouble hi = members[0];
      for (const auto& m : members) {
        lo = {std::min(lo.real(), m.real()), std::min(lo.imag(), m.imag())};
        hi = {std::max(hi.real(), m.real()), std::max(hi.imag(), m.imag())};
      }
      const cdouble c = 0.5 * (lo + hi);
      const double r = std::max({0.5 * (hi.real() - lo.real()), 0.5 * (hi.imag() - lo.imag()), 0x1p-30}) * 2.0;
      rep.point = box_of(c, r, p);
      rep.isolated = false;
    }
    if (lower_period(fb, rep.point, k, p)) continue;
    rep.multiplier = iterate(fb, rep.point, k, p).derivative;
    rep.cls = classify_multiplier(rep.multiplier, p, rep.isolated);
    out.push_back(std::move(rep));
  }
  std::sort(out.begin(), out.end(), [](const PeriodicPointReport& a, const PeriodicPointReport& b) {
    const Dyadic ar = a.point.re().midpoint();
    const Dyadic br = b.point.re().midpoint();
    if (ar != br) return ar < br;
    return a.point.im().midpoint() < b.point.im().midpoint();
  });
  return out;
}

std::vector<TrapBox> attracting_traps(const PolySpec& f, int max_period, long bits) {
  const WorkPrecision p{bits};
  const BoxPolynomial fb = f.boxes(bits + 8);
  std::vector<TrapBox> traps;
  long degree = 1;
  for (int k = 1; k <= max_period; ++k) {
    degree *= f.degree();
    if (degree > (1L << 10)) break;
    for (const auto& rep : classify_periodic(f, k, bits)) {
      if (rep.cls != PeriodicClass::Attracting) continue;
      const cdouble c = centre(rep.point);
      bool found = false;
      for (int e = 1; e <= 30 && !found; ++e) {
        for (int m : {7, 6, 5, 4}) {
          const double rho = std::ldexp(static_cast<double>(m), -(e + 2));
          const ComplexBox t = box_of(c, rho, WorkPrecision{std::min<long>(bits, 40)});
          if (!t.contains_strictly(rep.point)) continue;
          if (t.contains_strictly(iterate(fb, t, k, p).image)) {
            traps.push_back({t, k});
            found = true;
            break;
          }
        }
      }
    }
  }
  return traps;
}

namespace {

double log_mpz(const mpz_class& z) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

mpz_class floor_q(const mpq_class& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// Continued-fraction quotients valid for every point of [lo, hi]. Stops early
// when the quotient is ambiguous or the expansion of an endpoint terminates.
std::vector<mpz_class> common_quotients(mpq_class lo, mpq_class hi, int terms, bool& terminated) {
  std::vector<mpz_class> a;
  terminated = false;
  while (static_cast<int>(a.size()) < terms) {
    if (sgn(lo) == 0 || sgn(hi) == 0) {
      terminated = lo == hi;
      return a;
    }
    const mpq_class inv_lo = 1 / hi;  // 1/x is decreasing
    const mpq_class inv_hi = 1 / lo;
    const mpz_class q = floor_q(inv_lo);
    if (floor_q(inv_hi) != q) return a;
    a.push_back(q);
    lo = inv_lo - q;
    hi = inv_hi - q;
  }
  return a;
}

}  // namespace

BryunoReport bryuno_partial_sums(const RealOracle& theta, int terms, int max_bits) {
  if (terms < 1) throw DynError(Errc::InvalidArgument, "need at least one term");
  std::vector<mpz_class> a;
  int used = 0;
  if (theta.exact()) {
    const mpq_class& t = *theta.exact();
    if (sgn(t) <= 0 || t >= 1) throw DynError(Errc::InvalidArgument, "theta must lie in (0, 1)");
    bool terminated = false;
    a = common_quotients(t, t, terms, terminated);
    if (static_cast<int>(a.size()) < terms) {
      throw DynError(Errc::RationalDetected, "theta = " + rational_string(t) + " is rational");
    }
  } else {
    std::optional<mpq_class> previous;
    bool same_rational = true;
    int queries = 0;
    for (int bits = 64;; bits *= 2) {
      bits = std::min(bits, max_bits);
      const mpq_class q = theta.query(bits);
      if (previous && *previous != q) same_rational = false;
      previous = q;
      ++queries;
      const mpq_class eps(1, mpz_class(1) << static_cast<mp_bitcnt_t>(bits));
      const mpq_class lo = q - eps;
      const mpq_class hi = q + eps;
      bool terminated = false;
      if (sgn(lo) > 0 && hi < 1) a = common_quotients(lo, hi, terms, terminated);
      used = bits;
      if (static_cast<int>(a.size()) == terms) break;
      if (bits >= max_bits) {
        bool exact_end = false;
        const auto own = common_quotients(q, q, terms, exact_end);
        if (queries > 1 && same_rational && exact_end && static_cast<int>(own.size()) < terms) {
          throw DynError(Errc::RationalDetected, "oracle keeps returning the rational " + rational_string(q));
        }
        throw DynError(Errc::PrecisionExhausted, "quotient " + std::to_string(a.size() + 1) +
                                                     " is not determined at 2^-" + std::to_string(bits));
      }
    }
  }

  BryunoReport out;
  out.partial_quotients = a;
  out.precision_used = used;
  out.denominators.push_back(1);
  mpz_class q_prev = 0;
  mpz_class q = 1;
  for (const auto& ai : a) {
    const mpz_class next = ai * q + q_prev;
    q_prev = q;
    q = next;
    out.denominators.push_back(q);
  }
  double sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    const auto& qn = out.denominators[static_cast<std::size_t>(n)];
    const auto& qn1 = out.denominators[static_cast<std::size_t>(n + 1)];
    sum += log_mpz(qn1) / qn.get_d();
    out.partial_sums.push_back(sum);
  }
  return out;
}

}  // namespace dyncert::complex
