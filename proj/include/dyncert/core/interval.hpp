#pragma once

#include <string>

#include "dyncert/core/dyadic.hpp"

namespace dyncert {

/// Absolute working precision: results of inexact-size operations are rounded
/// outward to the grid 2^-bits.
struct WorkPrecision {
  long bits = 53;
};

/// Closed interval [lo, hi] with dyadic endpoints. Every operation returns an
/// enclosure of the exact image, rounded outward to the working precision.
class Interval {
 public:
  Interval() = default;
  explicit Interval(Dyadic point) : lo_(point), hi_(std::move(point)) {}
  Interval(Dyadic lo, Dyadic hi);

  /// Smallest grid-aligned enclosure of the rational q.
  static Interval around(const mpq_class& q, WorkPrecision p);
  /// [q - r, q + r] rounded outward.
  static Interval ball(const mpq_class& center, const mpq_class& radius, WorkPrecision p);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }

  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return (lo_ + hi_).ldexp(-1); }
  /// max(|lo|, |hi|).
  Dyadic magnitude() const;
  /// min |x| over the interval.
  Dyadic mignitude() const;

  bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const mpq_class& x) const;
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  /// other lies in the open interior.
  bool contains_strictly(const Interval& other) const { return lo_ < other.lo_ && other.hi_ < hi_; }
  bool intersects(const Interval& other) const { return !(hi_ < other.lo_ || other.hi_ < lo_); }
  bool is_point() const { return lo_ == hi_; }

  Interval rounded(WorkPrecision p) const { return {lo_.round_down(p.bits), hi_.round_up(p.bits)}; }

  friend Interval add(const Interval& a, const Interval& b, WorkPrecision p);
  friend Interval sub(const Interval& a, const Interval& b, WorkPrecision p);
  friend Interval mul(const Interval& a, const Interval& b, WorkPrecision p);
  /// Tight square: never negative, unlike mul(a, a).
  friend Interval sqr(const Interval& a, WorkPrecision p);
  friend Interval neg(const Interval& a) { return {-a.hi_, -a.lo_}; }
  friend Interval hull(const Interval& a, const Interval& b);

  std::string to_string() const { return "[" + lo_.to_string() + ", " + hi_.to_string() + "]"; }

 private:
  Dyadic lo_;
  Dyadic hi_;
};

}  // namespace dyncert
