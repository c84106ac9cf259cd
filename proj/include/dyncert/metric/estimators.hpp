#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "dyncert/metric/interval_map.hpp"

namespace dyncert::metric {

/// Grid points g / grid for g < grid, visited in increasing order.
struct SeparatedSetReport {
  std::size_t n = 0;
  mpq_class eps;
  std::size_t grid = 0;
  /// Greedy maximal (n, eps)-separated subset of the grid; a lower bound for
  /// the largest separated set of the map.
  std::size_t count = 0;
  std::vector<mpq_class> witnesses;
};

/// Throws InvalidArgument unless 0 < eps <= 1/2, n >= 1 and 1/grid < eps/4.
/// Orbits are generated in parallel; the greedy pass is deterministic.
SeparatedSetReport separated_count(const IntervalMap& f, std::size_t n, const mpq_class& eps, std::size_t grid);
/// Same greedy set, every candidate compared with every accepted point.
SeparatedSetReport separated_count_reference(const IntervalMap& f, std::size_t n, const mpq_class& eps,
                                             std::size_t grid);

/// max_{k<n} circle distance >= eps, re-evaluated from fixed-point orbits.
bool is_separated(const IntervalMap& f, const mpq_class& x, const mpq_class& y, std::size_t n, const mpq_class& eps);

struct SeparationEntropy {
  std::vector<std::size_t> counts;  // F_k for k = 1..n_max
  std::vector<double> h;            // min_{j <= k} log(F_j) / j
  /// Grid counts only bound F_k from below, so h is an estimate, never a
  /// certified upper bound.
  bool estimator = true;
};
SeparationEntropy entropy_from_separation(const IntervalMap& f, const mpq_class& eps0, std::size_t n_max,
                                          std::size_t grid);

struct KatokBrinReport {
  std::size_t hits = 0;    // returns within the Bowen ball
  std::size_t trials = 0;  // N - n
  double estimate = 0.0;   // -log(hits / trials) / n
};

/// Fraction of times t in [1, N - n] with max_{k<n} d(x_{t+k}, x_k) < eps.
/// Throws ZeroHits when no time returns; the message carries the bound
/// log(trials) / n that the estimate would exceed.
KatokBrinReport katok_brin(const OrbitSample& orbit, const mpq_class& eps, std::size_t n, bool parallel = true);

}  // namespace dyncert::metric
