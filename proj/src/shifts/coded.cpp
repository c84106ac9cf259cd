#include "dyncert/shifts/coded.hpp"

#include <algorithm>

#include "dyncert/core/error.hpp"
#include "dyncert/shifts/sofic.hpp"

namespace dyncert::shifts {

LabeledGraph coded_sofic_approximation(const GeneratingSet& g, std::size_t m) {
  check_alphabet(g);
  if (m > g.generators.size()) {
    throw DynError(Errc::InvalidArgument, "m exceeds the number of materialized generators");
  }
  LabeledGraph rose{1, g.alphabet, {}};
  for (std::size_t i = 0; i < m; ++i) {
    const Word& w = g.generators[i];
    std::size_t at = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const bool last = k + 1 == w.size();
      const std::size_t to = last ? 0 : rose.vertices++;
      rose.edges.push_back({at, to, w[k]});
      at = to;
    }
  }
  return rose;
}

LanguageOracle coded_language(const GeneratingSet& g) {
  return LanguageOracle::from_sofic(coded_sofic_approximation(g, g.generators.size()));
}

CodedEntropyReport entropy_coded(const GeneratingSet& g, const LanguageOracle& language, int p,
                                 CodedBudget budget) {
  check_alphabet(g);
  if (g.generators.empty()) throw DynError(Errc::InvalidArgument, "generating set is empty");
  if (budget.max_n < 1 || budget.max_m < 1) {
    throw DynError(Errc::InvalidArgument, "budgets must be positive");
  }
  const std::size_t max_m = std::min(budget.max_m, g.generators.size());
  mpq_class target(1);
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<unsigned long>(p));

  CodedEntropyReport report;
  mpq_class lo(0);
  mpq_class hi(0);
  bool have_hi = false;
  int n = std::min(16, budget.max_n);
  bool more_n = true;
  while (true) {
    if (report.m_used < max_m) {
      ++report.m_used;
      const auto part = entropy_sofic(coded_sofic_approximation(g, report.m_used), p + 2);
      lo = std::max(lo, part.lo);
      report.lower_history.push_back(lo);
    }
    if (more_n) {
      report.upper_bounds = entropy_upper_bounds(language, n);
      report.n_used = n;
      hi = report.upper_bounds.back();
      have_hi = true;
      if (n == budget.max_n) more_n = false;
      n = std::min(2 * n, budget.max_n);
    }
    if (have_hi && hi - lo < target) {
      report.result = {lo, std::max(lo, hi), EntropyStatus::Converged};
      return report;
    }
    if (report.m_used == max_m && !more_n) break;
  }
  report.result = {lo, std::max(lo, hi), EntropyStatus::BudgetExhausted};
  return report;
}

ZeroEntropyOutcome zero_entropy_semialgorithm(const LanguageOracle& language, const mpq_class& eps,
                                              int max_n) {
  if (sgn(eps) <= 0) throw DynError(Errc::InvalidArgument, "eps must be positive");
  if (max_n < 1) throw DynError(Errc::InvalidArgument, "budget must be positive");
  int n = std::min(8, max_n);
  std::vector<mpq_class> h;
  while (true) {
    h = entropy_upper_bounds(language, n);
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k] < eps) return ZeroEntropyValue{h[k] / 2, static_cast<int>(k + 1)};
    }
    if (n == max_n) break;
    n = std::min(2 * n, max_n);
  }
  return Inconclusive{h.back(), max_n};
}

}  // namespace dyncert::shifts
