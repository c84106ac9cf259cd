#pragma once

#include <variant>
#include <vector>

#include <gmpxx.h>

#include "dyncert/shifts/entropy.hpp"
#include "dyncert/shifts/presentation.hpp"

namespace dyncert::shifts {

/// Rose presentation of X_m = X({g_1, ..., g_m}): vertex 0 is the base, and
/// each generator is a simple cycle through fresh vertices spelling it.
LabeledGraph coded_sofic_approximation(const GeneratingSet& g, std::size_t m);

struct CodedBudget {
  std::size_t max_m = 64;
  int max_n = 4096;
};

struct CodedEntropyReport {
  EntropyResult result;
  /// Running maximum of the lower bounds after each m = 1, 2, ...
  std::vector<mpq_class> lower_history;
  /// h_1, ..., h_n for the largest n queried.
  std::vector<mpq_class> upper_bounds;
  std::size_t m_used = 0;
  int n_used = 0;
};

/// Two-sided enclosure of H_top(X(G)) from the sofic approximations X_m
/// (below) and the language counts (above). The interval is sound whatever
/// the flags say; the lower bounds only approach H_top when a unique
/// representation exists. Throws InconsistentOracle or InvalidArgument.
CodedEntropyReport entropy_coded(const GeneratingSet& g, const LanguageOracle& language, int p,
                                 CodedBudget budget = {});

/// Language oracle of the shift generated by all materialized generators.
LanguageOracle coded_language(const GeneratingSet& g);

struct ZeroEntropyValue {
  mpq_class value;  // h_n / 2
  int n = 0;
};
struct Inconclusive {
  mpq_class best;  // smallest h_n seen
  int n = 0;
};
using ZeroEntropyOutcome = std::variant<ZeroEntropyValue, Inconclusive>;

/// Searches n <= max_n for h_n < eps. Throws InvalidArgument if eps <= 0,
/// InconsistentOracle on bad counts.
ZeroEntropyOutcome zero_entropy_semialgorithm(const LanguageOracle& language, const mpq_class& eps,
                                              int max_n);

}  // namespace dyncert::shifts
