#pragma once

#include <span>
#include <optional>
#include <string>
#include <vector>

#include "dyncert/core/interval.hpp"

namespace dyncert {

/// Exact complex rational, used for polynomial coefficients and root centers.
struct ComplexRational {
  mpq_class re{0};
  mpq_class im{0};

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Axis-aligned rectangle re x im in the complex plane.
class ComplexBox {
 public:
  ComplexBox() = default;
  ComplexBox(Interval re, Interval im) : re_(std::move(re)), im_(std::move(im)) {}

  static ComplexBox point(const Dyadic& re, const Dyadic& im) {
    return {Interval(re), Interval(im)};
  }
  static ComplexBox around(const ComplexRational& z, WorkPrecision p) {
    return {Interval::around(z.re, p), Interval::around(z.im, p)};
  }
  /// Square of half-side `radius` centred at z, rounded outward.
  static ComplexBox ball(const ComplexRational& z, const mpq_class& radius, WorkPrecision p) {
    return {Interval::ball(z.re, radius, p), Interval::ball(z.im, radius, p)};
  }

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }

  /// Enclosure of { |z|^2 : z in box }.
  Interval norm2(WorkPrecision p) const;
  /// Larger half-width of the two sides.
  Dyadic radius() const;
  ComplexBox rounded(WorkPrecision p) const { return {re_.rounded(p), im_.rounded(p)}; }

  bool contains(const ComplexBox& other) const {
    return re_.contains(other.re_) && im_.contains(other.im_);
  }
  bool contains_strictly(const ComplexBox& other) const {
    return re_.contains_strictly(other.re_) && im_.contains_strictly(other.im_);
  }
  bool contains(const ComplexRational& z) const { return re_.contains(z.re) && im_.contains(z.im); }
  bool intersects(const ComplexBox& other) const {
    return re_.intersects(other.re_) && im_.intersects(other.im_);
  }

  friend ComplexBox add(const ComplexBox& a, const ComplexBox& b, WorkPrecision p);
  friend ComplexBox sub(const ComplexBox& a, const ComplexBox& b, WorkPrecision p);
  friend ComplexBox mul(const ComplexBox& a, const ComplexBox& b, WorkPrecision p);
  friend ComplexBox sqr(const ComplexBox& a, WorkPrecision p);
  friend ComplexBox scale(const ComplexBox& a, long k, WorkPrecision p);
  friend ComplexBox hull(const ComplexBox& a, const ComplexBox& b);

  std::string to_string() const { return re_.to_string() + " x " + im_.to_string(); }

 private:
  Interval re_;
  Interval im_;
};

/// Monic polynomial z^d + c_{d-1} z^{d-1} + c_{d-2} z^{d-2} + ... + c_0 with
/// box coefficients. `lower` holds c_{d-2}, ..., c_0 (d - 1 entries); `top` is
/// c_{d-1}, absent for the centred form.
struct BoxPolynomial {
  int degree = 2;
  std::vector<ComplexBox> lower;
  std::optional<ComplexBox> top;
};

/// Horner evaluation with outward rounding; encloses f(w) for every w in z and
/// every choice of coefficients inside their boxes. Throws InvalidArgument if
/// the coefficient list does not match the degree.
ComplexBox box_image(const BoxPolynomial& f, const ComplexBox& z, WorkPrecision p = {});

/// Enclosure of f'(z) over the box.
ComplexBox box_derivative(const BoxPolynomial& f, const ComplexBox& z, WorkPrecision p = {});

}  // namespace dyncert
