#pragma once

#include <functional>
#include <vector>

#include <gmpxx.h>

#include "dyncert/shifts/presentation.hpp"

namespace dyncert::shifts {

/// Certified enclosure lo <= rho(A) <= hi of a spectral radius.
struct PerronBounds {
  mpq_class lo{0};
  mpq_class hi{0};
};

/// Strongly connected components of the support graph, each sorted; a
/// component is "cyclic" when it carries at least one closed walk.
struct Component {
  std::vector<std::size_t> vertices;
  bool cyclic = false;
};
std::vector<Component> strongly_connected_components(const NonnegMatrix& a);

/// Collatz-Wielandt enclosure of rho(A) refined until `done(lo, hi)` holds.
///
/// Each cyclic component is iterated with A + I (primitive whenever the
/// component is irreducible, so the power method converges even for periodic
/// components). The ratios min_i (Av)_i / v_i and max_i (Av)_i / v_i are
/// evaluated exactly on an integer vector v, so the bounds hold no matter how
/// v was produced. rho(A) is the maximum over components; acyclic components
/// contribute 0. Throws NoConvergence only if `max_iterations` power steps do
/// not satisfy `done`.
PerronBounds perron_root_bounds(const NonnegMatrix& a,
                                const std::function<bool(const mpq_class&, const mpq_class&)>& done,
                                long max_iterations = 200000);

/// Interval of width < 2^-p containing rho(A).
PerronBounds perron_root_interval(const NonnegMatrix& a, int p);

}  // namespace dyncert::shifts
