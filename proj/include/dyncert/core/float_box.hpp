#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace dyncert {

/// Interval with double endpoints. Each operation rounds to nearest and then
/// steps one ulp outward, which encloses the exact result because a single
/// IEEE operation errs by at most half an ulp. Doubles are dyadic, so this is
/// the fast path of the dyadic interval type at 53-bit relative precision.
struct FloatInterval {
  double lo = 0.0;
  double hi = 0.0;

  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

  double magnitude() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  double mignitude() const {
    if (lo <= 0.0 && hi >= 0.0) return 0.0;
    return std::min(std::fabs(lo), std::fabs(hi));
  }
  double width() const { return hi - lo; }
};

inline FloatInterval operator+(const FloatInterval& a, const FloatInterval& b) {
  return {FloatInterval::down(a.lo + b.lo), FloatInterval::up(a.hi + b.hi)};
}

inline FloatInterval operator-(const FloatInterval& a, const FloatInterval& b) {
  return {FloatInterval::down(a.lo - b.hi), FloatInterval::up(a.hi - b.lo)};
}

inline FloatInterval operator*(const FloatInterval& a, const FloatInterval& b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return {FloatInterval::down(std::min(std::min(p1, p2), std::min(p3, p4))),
          FloatInterval::up(std::max(std::max(p1, p2), std::max(p3, p4)))};
}

inline FloatInterval square(const FloatInterval& a) {
  const double l2 = a.lo * a.lo;
  const double h2 = a.hi * a.hi;
  if (a.lo >= 0.0) return {FloatInterval::down(l2), FloatInterval::up(h2)};
  if (a.hi <= 0.0) return {FloatInterval::down(h2), FloatInterval::up(l2)};
  return {0.0, FloatInterval::up(std::max(l2, h2))};
}

struct FloatBox {
  FloatInterval re;
  FloatInterval im;

  double width() const { return std::max(re.width(), im.width()); }
};

inline FloatBox operator+(const FloatBox& a, const FloatBox& b) { return {a.re + b.re, a.im + b.im}; }

inline FloatBox operator*(const FloatBox& a, const FloatBox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline FloatBox square(const FloatBox& a) {
  const FloatInterval cross = a.re * a.im;
  return {square(a.re) - square(a.im), cross + cross};
}

/// Lower bound of min |z|^2 over the box.
inline double min_norm2_down(const FloatBox& b) {
  const double x = b.re.mignitude();
  const double y = b.im.mignitude();
  return FloatInterval::down(FloatInterval::down(x * x) + FloatInterval::down(y * y));
}

/// Upper bound of max |z - c|^2 over the box, c exact.
inline double max_dist2_up(const FloatBox& b, double cx, double cy) {
  const double dx = std::max(FloatInterval::up(b.re.hi - cx), FloatInterval::up(cx - b.re.lo));
  const double dy = std::max(FloatInterval::up(b.im.hi - cy), FloatInterval::up(cy - b.im.lo));
  return FloatInterval::up(FloatInterval::up(dx * dx) + FloatInterval::up(dy * dy));
}

}  // namespace dyncert
