#include "dyncert/complex/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"

namespace dyncert::complex {

namespace {

ComplexRational from_double(cdouble z) {
  mpq_class re(z.real());
  mpq_class im(z.imag());
  return {re, im};
}

ComplexRational cmul(const ComplexRational& a, const ComplexRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexRational cadd(const ComplexRational& a, const ComplexRational& b) { return {a.re + b.re, a.im + b.im}; }

// Horner on rational coefficients c_{d-1}, ..., c_0 of a monic polynomial.
ComplexRational horner(const std::vector<ComplexRational>& c, const ComplexRational& z) {
  ComplexRational acc = cadd(z, c.front());
  for (std::size_t i = 1; i < c.size(); ++i) acc = cadd(cmul(acc, z), c[i]);
  return acc;
}

ComplexRational horner_derivative(const std::vector<ComplexRational>& c, const ComplexRational& z) {
  const auto d = static_cast<long>(c.size());
  ComplexRational acc{mpq_class(d), 0};
  for (long k = d - 2; k >= 0; --k) {
    acc = cmul(acc, z);
    const auto& ck = c[static_cast<std::size_t>(d - 1 - (k + 1))];
    acc = cadd(acc, {ck.re * (k + 1), ck.im * (k + 1)});
  }
  return acc;
}

mpq_class norm_upper(const ComplexRational& z) {
  return sqrt_upper(z.re * z.re + z.im * z.im, 64).to_rational();
}

long bits_for(const mpq_class& tol) {
  const long num = static_cast<long>(mpz_sizeinbase(tol.get_num_mpz_t(), 2));
  const long den = static_cast<long>(mpz_sizeinbase(tol.get_den_mpz_t(), 2));
  return std::max<long>(64, den - num + 24);
}

ComplexRational round_point(const ComplexRational& z, long bits) {
  return {Dyadic::floor_of(z.re, bits).to_rational(), Dyadic::floor_of(z.im, bits).to_rational()};
}

}  // namespace

PolySpec::PolySpec(std::vector<ComplexOracle> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw DynError(Errc::InvalidArgument, "degree must be at least 2");
  for (const auto& c : coeffs_) {
    const ComplexRational q = c.query(60);
    doubles_.emplace_back(q.re.get_d(), q.im.get_d());
  }
}

PolySpec PolySpec::from_rationals(std::vector<ComplexRational> coeffs) {
  std::vector<ComplexOracle> o;
  for (auto& c : coeffs) o.push_back(ComplexOracle::constant(std::move(c)));
  return PolySpec(std::move(o));
}

PolySpec PolySpec::quadratic(const ComplexRational& c) { return from_rationals({{0, 0}, c}); }

PolySpec PolySpec::quadratic(const ComplexOracle& c) {
  return PolySpec({ComplexOracle::constant({0, 0}), c});
}

PolySpec PolySpec::monomial(int d) {
  if (d < 2) throw DynError(Errc::InvalidArgument, "degree must be at least 2");
  return from_rationals(std::vector<ComplexRational>(static_cast<std::size_t>(d)));
}

std::optional<std::vector<ComplexRational>> PolySpec::exact_coeffs() const {
  std::vector<ComplexRational> out;
  for (const auto& c : coeffs_) {
    if (!c.exact()) return std::nullopt;
    out.push_back(*c.exact());
  }
  return out;
}

bool PolySpec::is_monomial() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const ComplexOracle& c) {
    return c.exact() && sgn(c.exact()->re) == 0 && sgn(c.exact()->im) == 0;
  });
}

BoxPolynomial PolySpec::boxes(long bits) const {
  BoxPolynomial b;
  b.degree = degree();
  const WorkPrecision p{bits};
  const int n = static_cast<int>(std::min<long>(bits + 2, 100000));
  const auto& top = coeffs_.front();
  if (!(top.exact() && sgn(top.exact()->re) == 0 && sgn(top.exact()->im) == 0)) b.top = top.enclosure(n, p);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) b.lower.push_back(coeffs_[i].enclosure(n, p));
  return b;
}

cdouble PolySpec::eval(cdouble z) const {
  cdouble acc = z + doubles_.front();
  for (std::size_t i = 1; i < doubles_.size(); ++i) acc = acc * z + doubles_[i];
  return acc;
}

cdouble PolySpec::derivative(cdouble z) const {
  const int d = degree();
  cdouble acc = static_cast<double>(d);
  for (int k = d - 2; k >= 0; --k) {
    acc = acc * z + static_cast<double>(k + 1) * doubles_[static_cast<std::size_t>(d - 2 - k)];
  }
  return acc;
}

ComplexRational PolySpec::eval_exact(const ComplexRational& z) const {
  const auto c = exact_coeffs();
  if (!c) throw DynError(Errc::InvalidArgument, "polynomial coefficients are only known by oracle");
  return horner(*c, z);
}

std::string PolySpec::describe() const {
  std::string out = "z^" + std::to_string(degree());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int power = degree() - 1 - static_cast<int>(i);
    const auto& c = coeffs_[i];
    if (c.exact() && sgn(c.exact()->re) == 0 && sgn(c.exact()->im) == 0) continue;
    const ComplexRational q = c.exact() ? *c.exact() : c.query(40);
    std::string coeff = "(" + rational_string(q.re);
    if (sgn(q.im) != 0) coeff += (sgn(q.im) > 0 ? "+" : "") + rational_string(q.im) + "i";
    coeff += ")";
    out += " + " + coeff + (power > 0 ? (power == 1 ? "z" : "z^" + std::to_string(power)) : "");
  }
  return out;
}

Dyadic escape_radius(const PolySpec& f) {
  mpq_class sum = 2;
  for (const auto& c : f.coeffs()) {
    if (c.exact()) {
      sum += norm_upper(*c.exact());
    } else {
      sum += norm_upper(c.query(8)) + mpq_class(1, 256);
    }
  }
  return Dyadic::ceil_of(sum, 8);
}

std::pair<std::vector<cdouble>, bool> aberth(const RootProblem& problem, double phase, int budget) {
  const int d = problem.degree;
  std::vector<cdouble> w(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double angle = 2.0 * M_PI * k / d + phase;
    w[static_cast<std::size_t>(k)] = std::polar(problem.start_radius, angle);
  }
  std::vector<bool> done(w.size(), false);
  constexpr double tiny = 4.0 * std::numeric_limits<double>::epsilon();
  for (int it = 0; it < budget; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (done[i]) continue;
      const cdouble pv = problem.p(w[i]);
      if (pv == 0.0) {
        done[i] = true;
        continue;
      }
      const cdouble ratio = pv / problem.dp(w[i]);
      cdouble sum = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j != i && w[i] != w[j]) sum += 1.0 / (w[i] - w[j]);
      }
      cdouble step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        all = false;
        continue;
      }
      w[i] -= step;
      if (std::abs(step) <= tiny * std::max(1.0, std::abs(w[i]))) {
        done[i] = true;
      } else {
        all = false;
      }
    }
    if (all) return {w, true};
  }
  return {w, std::all_of(done.begin(), done.end(), [](bool b) { return b; })};
}

mpq_class residual_bound(const PolySpec& f, const ComplexRational& w, const ComplexRational& z, long bits) {
  if (const auto c = f.exact_coeffs()) {
    const ComplexRational r = horner(*c, w);
    return norm_upper({r.re - z.re, r.im - z.im});
  }
  const WorkPrecision p{bits};
  const ComplexBox image = box_image(f.boxes(bits), ComplexBox::around(w, p), p);
  const ComplexBox diff = sub(image, ComplexBox::around(z, p), p);
  return sqrt_upper(diff.norm2(p).hi().to_rational(), 64).to_rational();
}

PreimageSet preimages(const PolySpec& f, const ComplexRational& z, const mpq_class& tol) {
  if (sgn(tol) <= 0) throw DynError(Errc::InvalidArgument, "tolerance must be positive");
  const int d = f.degree();
  const cdouble zd(z.re.get_d(), z.im.get_d());
  std::vector<cdouble> c = f.doubles();
  c.back() -= zd;
  double biggest = 0.0;
  for (const auto& ci : c) biggest = std::max(biggest, std::abs(ci));

  RootProblem problem;
  problem.degree = d;
  problem.p = [&f, zd](cdouble w) { return f.eval(w) - zd; };
  problem.dp = [&f](cdouble w) { return f.derivative(w); };
  problem.start_radius = 1.0 + std::pow(biggest, 1.0 / d);
  auto [roots, converged] = aberth(problem, 0.4);
  if (!converged) std::tie(roots, converged) = aberth(problem, 1.3);

  for (auto& w : roots) {
    for (int k = 0; k < 2; ++k) {
      const cdouble dv = f.derivative(w);
      if (std::abs(dv) < 1e-8) break;
      const cdouble next = w - (f.eval(w) - zd) / dv;
      if (std::isfinite(next.real()) && std::isfinite(next.imag())) w = next;
    }
  }

  const long bits = bits_for(tol);
  PreimageSet out;
  out.residual = 0;
  std::optional<std::vector<ComplexRational>> polish_coeffs;
  for (const auto& w : roots) {
    ComplexRational r = from_double(w);
    mpq_class res = residual_bound(f, r, z, bits);
    if (res >= tol) {
      if (!polish_coeffs) {
        polish_coeffs = f.exact_coeffs();
        if (!polish_coeffs) {
          polish_coeffs.emplace();
          for (const auto& o : f.coeffs()) polish_coeffs->push_back(o.query(static_cast<int>(bits + 8)));
        }
      }
      for (int k = 0; k < 12 && res >= tol; ++k) {
        ComplexRational v = horner(*polish_coeffs, r);
        v.re -= z.re;
        v.im -= z.im;
        const ComplexRational dv = horner_derivative(*polish_coeffs, r);
        const mpq_class n2 = dv.re * dv.re + dv.im * dv.im;
        if (sgn(n2) == 0) break;
        // r -= v / dv
        const ComplexRational step{(v.re * dv.re + v.im * dv.im) / n2, (v.im * dv.re - v.re * dv.im) / n2};
        r = round_point({r.re - step.re, r.im - step.im}, bits);
        res = residual_bound(f, r, z, bits);
      }
    }
    if (res >= tol) {
      throw DynError(Errc::NoConvergence, "root finder missed the tolerance for a preimage of " +
                                              rational_string(z.re) + " + " + rational_string(z.im) + "i");
    }
    out.residual = std::max(out.residual, res);
    out.roots.push_back(std::move(r));
  }

  // Clusters: connected components of the "closer than 10 tol" relation.
  const std::size_t n = out.roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const mpq_class radius2 = 100 * tol * tol;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const mpq_class dx = out.roots[i].re - out.roots[j].re;
      const mpq_class dy = out.roots[i].im - out.roots[j].im;
      if (dx * dx + dy * dy < radius2) parent[find(i)] = find(j);
    }
  }
  std::vector<std::size_t> size(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++size[find(i)];
  for (std::size_t i = 0; i < n; ++i) out.multiplicity.push_back(size[find(i)]);
  return out;
}

}  // namespace dyncert::complex
