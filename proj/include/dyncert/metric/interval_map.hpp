#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dyncert/core/oracle.hpp"
#include "dyncert/measures/measure.hpp"

namespace dyncert::metric {

/// Point of the circle [0, 1) in 64-bit fixed point: x = value / 2^64.
using Fixed = std::uint64_t;

inline double fixed_to_double(Fixed x) { return static_cast<double>(x) * 0x1p-64; }
/// floor(frac(q) * 2^64).
Fixed fixed_from_rational(const mpq_class& q);
mpq_class fixed_to_rational(Fixed x);
/// min(|x - y|, 1 - |x - y|) in units of 2^-64.
inline Fixed circle_gap(Fixed x, Fixed y) {
  const Fixed a = x - y;
  const Fixed b = y - x;
  return a < b ? a : b;
}

enum class MapKind { Doubling, Rotation, Table };

/// Circle map: x -> 2x mod 1, x -> x + alpha mod 1, or a piecewise-linear
/// table map taken mod 1.
class IntervalMap {
 public:
  static IntervalMap doubling();
  static IntervalMap rotation(RealOracle alpha);
  /// Nodes (x_k, y_k) with 0 = x_0 < ... < x_K = 1 and 0 <= y_k <= 1. The map
  /// interpolates linearly; y = 1 is identified with 0. Throws InvalidArgument.
  static IntervalMap table(std::vector<std::pair<mpq_class, mpq_class>> nodes);

  MapKind kind() const { return kind_; }
  std::string describe() const;

  /// Exact image of a rational point. Rotations need an exact alpha; throws
  /// InvalidArgument otherwise.
  mpq_class apply(const mpq_class& x) const;
  /// True when apply() is available.
  bool exact() const;

  /// x, f(x), ..., f^{length-1}(x) in fixed point.
  ///   doubling: exact windows of the binary expansion of x (every entry is
  ///             floor(2^64 frac(2^t x))).
  ///   rotation: error at most (2t + 1) 2^-64 at step t.
  ///   table:    one double-precision evaluation per step.
  std::vector<Fixed> orbit(const mpq_class& x, std::size_t length) const;
  /// Fixed-point orbit of a fixed-point start (exact for doubling).
  std::vector<Fixed> orbit(Fixed x, std::size_t length) const;

 private:
  IntervalMap() = default;
  Fixed step(Fixed x) const;

  MapKind kind_ = MapKind::Doubling;
  std::optional<RealOracle> alpha_;
  Fixed alpha_fixed_ = 0;
  std::vector<std::pair<mpq_class, mpq_class>> nodes_;
  std::vector<std::pair<double, double>> nodes_d_;
};

/// Orbit segment with its start.
struct OrbitSample {
  mpq_class start;
  std::vector<Fixed> points;
};
OrbitSample sample_orbit(const IntervalMap& f, const mpq_class& start, std::size_t length);

/// Deterministic non-dyadic start (3c + r) / (3 * 2^bits) with c a uniformly
/// random bits-bit integer and r in {1, 2}, drawn from mt19937_64(seed).
/// The doubling orbit of such a point looks random for about bits steps.
mpq_class random_start(std::uint64_t seed, std::size_t bits);

/// (1/N) sum_{t < N} delta_{f^t(x)}, atoms on the real axis in [0, 1). Exact
/// rational atoms when f.exact(), otherwise the fixed-point orbit.
measures::DiscreteMeasure birkhoff_measure(const IntervalMap& f, const mpq_class& x, std::size_t length);

/// "index,point" lines with the point as a 17-digit decimal.
std::string orbit_csv(const OrbitSample& orbit);

}  // namespace dyncert::metric
