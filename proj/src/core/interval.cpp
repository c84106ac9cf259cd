#include "dyncert/core/interval.hpp"

#include "dyncert/core/error.hpp"

namespace dyncert {

Interval::Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw DynError(Errc::InvalidArgument, "Interval: lo > hi");
}

Interval Interval::around(const mpq_class& q, WorkPrecision p) {
  return {Dyadic::floor_of(q, p.bits), Dyadic::ceil_of(q, p.bits)};
}

Interval Interval::ball(const mpq_class& center, const mpq_class& radius, WorkPrecision p) {
  return {Dyadic::floor_of(center - radius, p.bits), Dyadic::ceil_of(center + radius, p.bits)};
}

Dyadic Interval::magnitude() const { return max(lo_.abs(), hi_.abs()); }

Dyadic Interval::mignitude() const {
  if (lo_.sign() <= 0 && hi_.sign() >= 0) return {};
  return min(lo_.abs(), hi_.abs());
}

bool Interval::contains(const mpq_class& x) const {
  return lo_.to_rational() <= x && x <= hi_.to_rational();
}

Interval add(const Interval& a, const Interval& b, WorkPrecision p) {
  return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_).rounded(p);
}

Interval sub(const Interval& a, const Interval& b, WorkPrecision p) {
  return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_).rounded(p);
}

Interval mul(const Interval& a, const Interval& b, WorkPrecision p) {
  const Dyadic p1 = a.lo_ * b.lo_;
  const Dyadic p2 = a.lo_ * b.hi_;
  const Dyadic p3 = a.hi_ * b.lo_;
  const Dyadic p4 = a.hi_ * b.hi_;
  return Interval(min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))).rounded(p);
}

Interval sqr(const Interval& a, WorkPrecision p) {
  const Dyadic l2 = a.lo_ * a.lo_;
  const Dyadic h2 = a.hi_ * a.hi_;
  if (a.lo_.sign() >= 0) return Interval(l2, h2).rounded(p);
  if (a.hi_.sign() <= 0) return Interval(h2, l2).rounded(p);
  return Interval(Dyadic{}, max(l2, h2)).rounded(p);
}

Interval hull(const Interval& a, const Interval& b) {
  return {min(a.lo_, b.lo_), max(a.hi_, b.hi_)};
}

}  // namespace dyncert
