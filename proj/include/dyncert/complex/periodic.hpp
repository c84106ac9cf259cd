#pragma once

#include <vector>

#include <gmpxx.h>

#include "dyncert/complex/poly.hpp"
#include "dyncert/core/oracle.hpp"

namespace dyncert::complex {

enum class PeriodicClass { Attracting, Repelling, NeutralParabolicSuspected, NeutralUnresolved };
const char* periodic_class_name(PeriodicClass c);

struct PeriodicPointReport {
  int period = 1;
  ComplexBox point;       // contains exactly one point of exact period `period`
  ComplexBox multiplier;  // encloses (f^k)'(alpha)
  PeriodicClass cls = PeriodicClass::NeutralUnresolved;
  /// False for clusters of f^k(z) = z that no box could isolate; those are
  /// reported with the hull of the cluster and never certified.
  bool isolated = true;
};

/// Periodic points of exact period k, sorted by (re, im) of the box centres.
/// Roots of f^k(z) - z come from Aberth iteration on the composed map; each
/// is then isolated by a Krawczyk test in dyadic box arithmetic at 2^-bits.
/// Points of a lower period dividing k are dropped. Throws NoConvergence,
/// InvalidArgument when d^k > 2^16.
std::vector<PeriodicPointReport> classify_periodic(const PolySpec& f, int k, long bits = 53);

/// Square trap around an attracting cycle point: f^k(trap) lies strictly
/// inside trap, so every orbit that enters it stays bounded.
struct TrapBox {
  ComplexBox box;
  int period = 1;
};
/// Traps for every attracting cycle of period <= max_period.
std::vector<TrapBox> attracting_traps(const PolySpec& f, int max_period, long bits = 53);

/// Partial sums S_m = sum_{n < m} log(q_{n+1}) / q_n of the Bryuno series,
/// with q_n the continued-fraction denominators of theta.
struct BryunoReport {
  std::vector<mpz_class> partial_quotients;  // a_1, a_2, ...
  std::vector<mpz_class> denominators;       // q_0 = 1, q_1, ..., q_terms
  std::vector<double> partial_sums;          // S_1, ..., S_terms
  int precision_used = 0;                    // oracle bits needed to validate every quotient
};
/// Throws RationalDetected when theta is a rational with a short expansion,
/// PrecisionExhausted when 2^-max_bits cannot separate the next quotient.
BryunoReport bryuno_partial_sums(const RealOracle& theta, int terms, int max_bits = 4096);

}  // namespace dyncert::complex
