#pragma once

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dyncert/core/complex_box.hpp"
#include "dyncert/core/interval.hpp"

namespace dyncert::measures {

enum class MetricKind { Spherical, Planar, Circle };

const char* metric_name(MetricKind m);
/// Throws ParseError on unknown names.
MetricKind parse_metric(const std::string& name);

struct Atom {
  ComplexRational point;
  mpq_class weight;
};

/// Finitely many weighted atoms with exact rational weights.
///
/// Atoms are kept sorted by (re, im) and merged: exactly equal points always,
/// points within `merge_tol` (Euclidean) when a positive tolerance is given,
/// in which case each cluster collapses onto its first point in sorted order.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  /// Throws InfeasibleWeights unless all weights are positive and sum to 1.
  static DiscreteMeasure from_atoms(std::vector<Atom> atoms, const mpq_class& merge_tol = 0);
  /// Same merging, no weight checks. For parsers; call validate() before use.
  static DiscreteMeasure unchecked(std::vector<Atom> atoms, const mpq_class& merge_tol = 0);
  /// Equal weights 1/n on the given points.
  static DiscreteMeasure uniform(const std::vector<ComplexRational>& points, const mpq_class& merge_tol = 0);
  static DiscreteMeasure dirac(const ComplexRational& z);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  mpq_class total_mass() const;
  void validate() const;

 private:
  std::vector<Atom> atoms_;
};

/// Enclosure of d(a, b) of width <= 2^-bits.
///   planar:    |a - b|
///   spherical: 2|a - b| / sqrt((1 + |a|^2)(1 + |b|^2))
///   circle:    min(|x - y| mod 1, 1 - |x - y| mod 1) on the real parts
Interval metric_eval(MetricKind m, const ComplexRational& a, const ComplexRational& b, long bits = 53);
/// Spherical distance to the point at infinity, 2 / sqrt(1 + |a|^2).
Interval spherical_to_infinity(const ComplexRational& a, long bits = 53);

/// Image measure; colliding images merge (exactly, or within merge_tol).
DiscreteMeasure pushforward(const DiscreteMeasure& mu,
                            const std::function<ComplexRational(const ComplexRational&)>& map,
                            const mpq_class& merge_tol = 0);

/// k equal atoms at the k-th roots of unity, coordinates rounded to 2^-bits.
DiscreteMeasure uniform_circle(std::size_t k, long bits = 53);
/// k equal atoms at the midpoints (2j + 1) / 2k of [0, 1], on the real axis.
DiscreteMeasure lebesgue_interval(std::size_t k);

}  // namespace dyncert::measures
