#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dyncert/core/complex_box.hpp"
#include "dyncert/core/oracle.hpp"

namespace dyncert::complex {

using cdouble = std::complex<double>;

/// Monic polynomial z^d + c_{d-1} z^{d-1} + ... + c_0 with oracle coefficients.
class PolySpec {
 public:
  /// coeffs = c_{d-1}, ..., c_0, so the degree is coeffs.size() (>= 2).
  PolySpec(std::vector<ComplexOracle> coeffs);
  static PolySpec from_rationals(std::vector<ComplexRational> coeffs);
  /// z^2 + c.
  static PolySpec quadratic(const ComplexRational& c);
  static PolySpec quadratic(const ComplexOracle& c);
  /// z^d.
  static PolySpec monomial(int d);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<ComplexOracle>& coeffs() const { return coeffs_; }
  /// Exact coefficients when every oracle is a constant.
  std::optional<std::vector<ComplexRational>> exact_coeffs() const;
  /// True for z^d exactly.
  bool is_monomial() const;

  /// Coefficient enclosures at absolute precision 2^-bits.
  BoxPolynomial boxes(long bits) const;
  /// Coefficients rounded to double (queried at 2^-60).
  const std::vector<cdouble>& doubles() const { return doubles_; }

  cdouble eval(cdouble z) const;
  cdouble derivative(cdouble z) const;
  /// Exact image of a rational point; throws InvalidArgument unless exact.
  ComplexRational eval_exact(const ComplexRational& z) const;
  std::string describe() const;

 private:
  std::vector<ComplexOracle> coeffs_;
  std::vector<cdouble> doubles_;
};

/// R = 2 + sum |c_i| rounded up to a multiple of 2^-8, with oracle error
/// 2^-8 per inexact coefficient. |z| >= R implies |f(z)| >= 2|z|.
Dyadic escape_radius(const PolySpec& f);

/// Roots of a monic polynomial given by evaluation of p and p'.
struct RootProblem {
  int degree = 0;
  std::function<cdouble(cdouble)> p;
  std::function<cdouble(cdouble)> dp;
  double start_radius = 1.0;
};
/// Aberth-Ehrlich iteration from equispaced starts rotated by `phase`.
/// Returns the approximations and whether every root met the step criterion.
std::pair<std::vector<cdouble>, bool> aberth(const RootProblem& problem, double phase = 0.4, int budget = 200);

struct PreimageSet {
  std::vector<ComplexRational> roots;    // exactly d entries
  std::vector<std::size_t> multiplicity;  // size of the cluster each root belongs to
  /// Certified upper bound on max |f(w) - z| over the roots.
  mpq_class residual;
};

/// The d solutions of f(w) = z with certified residual |f(w) - z| < tol.
/// Roots closer than 10 tol form a cluster. Throws NoConvergence.
PreimageSet preimages(const PolySpec& f, const ComplexRational& z, const mpq_class& tol);

/// Certified upper bound on |f(w) - z|.
mpq_class residual_bound(const PolySpec& f, const ComplexRational& w, const ComplexRational& z, long bits);

}  // namespace dyncert::complex
