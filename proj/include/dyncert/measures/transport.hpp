#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "dyncert/measures/measure.hpp"

namespace dyncert::measures {

/// Balanced transportation problem with integer data: ship supply[i] from
/// source i to sink j at cost costs[i * sinks + j] per unit.
struct IntegerTransport {
  std::vector<std::int64_t> supply;
  std::vector<std::int64_t> demand;
  std::vector<std::int64_t> costs;  // row-major, supply.size() x demand.size()
};

struct IntegerFlow {
  std::size_t source = 0;
  std::size_t target = 0;
  std::int64_t amount = 0;
};

struct IntegerSolution {
  std::vector<IntegerFlow> flows;
  mpz_class cost;
  /// Dual potentials with phi[i] + psi[j] <= costs(i, j) and
  /// sum supply * phi + sum demand * psi == cost.
  std::vector<std::int64_t> phi;
  std::vector<std::int64_t> psi;
  std::size_t pivots = 0;
};

/// Primal network simplex (strongly feasible spanning trees, block pricing).
/// Deterministic and single-threaded. Throws InfeasibleWeights if supply and
/// demand totals differ or any entry is not positive, InvalidArgument if the
/// costs are negative or too large (|c| must stay below 2^52).
IntegerSolution solve_transport(const IntegerTransport& problem);

struct Flow {
  std::size_t source = 0;
  std::size_t target = 0;
  mpq_class mass;
};

struct TransportPlan {
  std::vector<Flow> flows;
};

struct W1Result {
  /// W1 lies in [value - error, value + error]; error is 0 when exact.
  mpq_class value;
  mpq_class error{0};
  TransportPlan plan;
  /// Kantorovich potentials on the atoms with phi[i] + psi[j] <= cost(i, j)
  /// for the costs actually used and sum mu_i phi_i + sum nu_j psi_j == value.
  /// Empty when a closed form was used.
  std::vector<mpq_class> phi;
  std::vector<mpq_class> psi;
  bool closed_form = false;
  std::size_t pivots = 0;
};

/// Integer costs with cost(i, j) ~ costs[i * m + j] / scale. When the metric
/// takes rational values on the atoms and a common scale fits, the costs are
/// exact and error is 0. Otherwise they are d evaluated in double precision and
/// rounded to 2^-bits; error then bounds |costs / scale - d| for every entry.
struct CostMatrix {
  std::vector<std::int64_t> costs;
  mpz_class scale{1};
  mpq_class error{0};
};
CostMatrix assemble_costs(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricKind metric,
                          long bits = 40, bool parallel = true);

/// W1(mu, nu) under the chosen metric. Circle measures and planar measures on
/// one horizontal line use exact quantile couplings; everything else goes
/// through solve_transport. Throws InfeasibleWeights.
W1Result wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricKind metric,
                      long bits = 40);

/// Same, always through the network simplex.
W1Result wasserstein1_simplex(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricKind metric,
                              long bits = 40, bool parallel = true);

}  // namespace dyncert::measures
