#include "dyncert/core/complex_box.hpp"

#include "dyncert/core/error.hpp"

namespace dyncert {

Interval ComplexBox::norm2(WorkPrecision p) const {
  return add(sqr(re_, p), sqr(im_, p), p);
}

Dyadic ComplexBox::radius() const { return max(re_.width(), im_.width()).ldexp(-1); }

ComplexBox add(const ComplexBox& a, const ComplexBox& b, WorkPrecision p) {
  return {add(a.re_, b.re_, p), add(a.im_, b.im_, p)};
}

ComplexBox sub(const ComplexBox& a, const ComplexBox& b, WorkPrecision p) {
  return {sub(a.re_, b.re_, p), sub(a.im_, b.im_, p)};
}

ComplexBox mul(const ComplexBox& a, const ComplexBox& b, WorkPrecision p) {
  return {sub(mul(a.re_, b.re_, p), mul(a.im_, b.im_, p), p),
          add(mul(a.re_, b.im_, p), mul(a.im_, b.re_, p), p)};
}

ComplexBox sqr(const ComplexBox& a, WorkPrecision p) {
  const Interval cross = mul(a.re_, a.im_, p);
  return {sub(sqr(a.re_, p), sqr(a.im_, p), p), add(cross, cross, p)};
}

ComplexBox scale(const ComplexBox& a, long k, WorkPrecision p) {
  const Interval factor{Dyadic(k)};
  return {mul(a.re_, factor, p), mul(a.im_, factor, p)};
}

ComplexBox hull(const ComplexBox& a, const ComplexBox& b) {
  return {hull(a.re_, b.re_), hull(a.im_, b.im_)};
}

namespace {

void check_shape(const BoxPolynomial& f) {
  if (f.degree < 2 || f.lower.size() != static_cast<std::size_t>(f.degree - 1)) {
    throw DynError(Errc::InvalidArgument,
                   "polynomial must be monic of degree >= 2 with d-1 lower coefficients");
  }
}

}  // namespace

ComplexBox box_image(const BoxPolynomial& f, const ComplexBox& z, WorkPrecision p) {
  check_shape(f);
  // z^d + c_{d-2} z^{d-2} + ... + c_0  ==  ((z^2 + c_{d-2}) z + c_{d-3}) z + ...
  ComplexBox acc = f.top ? mul(add(z, *f.top, p), z, p) : sqr(z, p);
  for (int i = 0; i < f.degree - 1; ++i) {
    acc = add(acc, f.lower[static_cast<std::size_t>(i)], p);
    if (i + 1 < f.degree - 1) acc = mul(acc, z, p);
  }
  return acc;
}

ComplexBox box_derivative(const BoxPolynomial& f, const ComplexBox& z, WorkPrecision p) {
  check_shape(f);
  // f'(z) = d z^{d-1} + sum_{k=0}^{d-3} (k+1) c_{k+1} z^k, Horner from the top.
  const int d = f.degree;
  ComplexBox acc = ComplexBox::point(Dyadic(d), Dyadic{});
  for (int k = d - 2; k >= 0; --k) {
    acc = mul(acc, z, p);
    if (k == d - 2 && f.top) acc = add(acc, scale(*f.top, d - 1, p), p);
    if (k <= d - 3) {
      const ComplexBox& c = f.lower[static_cast<std::size_t>(d - 3 - k)];
      acc = add(acc, scale(c, k + 1, p), p);
    }
  }
  return acc;
}

}  // namespace dyncert
