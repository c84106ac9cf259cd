#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dyncert/shifts/perron.hpp"
#include "dyncert/shifts/presentation.hpp"

namespace dyncert::shifts {

enum class EntropyStatus { Converged, BudgetExhausted };

const char* status_name(EntropyStatus s);

/// Validated enclosure lo <= H_top <= hi in nats.
struct EntropyResult {
  mpq_class lo{0};
  mpq_class hi{0};
  EntropyStatus status = EntropyStatus::Converged;

  mpq_class width() const { return hi - lo; }
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
};

/// Unique minimal forbidden set of X_F, sorted by (length, lexicographic).
/// Throws AlphabetMismatch, or EmptyShift when X_F has no points.
ForbiddenSetSFT minimal_forbidden_set(const ForbiddenSetSFT& x);

/// Higher-block presentation of an SFT as a one-step vertex shift.
struct OneStepRecoding {
  std::size_t block_length = 1;  // N = max(step size, 1)
  std::vector<Word> states;      // locally allowed words of length N
  NonnegMatrix matrix;           // binary; (u, v) = 1 iff u v overlap and the N+1 word is allowed
};

/// Throws EmptyShift if the recoded graph has no bi-infinite path.
OneStepRecoding recode_to_one_step(const ForbiddenSetSFT& x);

/// Entropy log rho(A) of the one-step SFT with (binary or counting) matrix A.
/// Converged with width < 2^-p. Throws EmptyShift when no bi-infinite path exists.
EntropyResult entropy_sft(const NonnegMatrix& a, int p);
EntropyResult entropy_sft(const ForbiddenSetSFT& x, int p);

/// Enclosure of log rho(A) of width < 2^-p, clamped below at 0 and above at
/// log_upper(cap) when cap > 0. Shared by the SFT and sofic routes.
EntropyResult entropy_from_matrix(const NonnegMatrix& a, int p, std::size_t cap);

/// #L(X_A, n) for the vertex shift of A: the sum of the entries of A^{n-1}
/// over the essential subgraph. Throws EmptyShift.
mpz_class count_words(const NonnegMatrix& a, int n);
/// Counts for n = 1..max_n in one pass.
std::vector<mpz_class> count_words_prefix(const NonnegMatrix& a, int max_n);

/// Language oracle: exact counts #L(X, n) for n >= 1, optionally the words.
class LanguageOracle {
 public:
  using Count = std::function<mpz_class(int)>;
  using Prefix = std::function<std::vector<mpz_class>(int)>;
  using Words = std::function<std::vector<Word>(int)>;

  static LanguageOracle from_count(Count count);
  /// Batch form: prefix(n) returns counts 1..n.
  static LanguageOracle from_prefix(Prefix prefix);
  static LanguageOracle from_matrix(NonnegMatrix a);
  static LanguageOracle from_sofic(const LabeledGraph& g);

  LanguageOracle with_words(Words words) const;

  mpz_class count(int n) const { return count_(n); }
  std::vector<mpz_class> counts_up_to(int n) const;
  bool has_words() const { return static_cast<bool>(words_); }
  std::vector<Word> words(int n) const { return words_(n); }

 private:
  Count count_;
  Prefix prefix_;
  Words words_;
};

/// Checks counts c_1..c_n: positive, nondecreasing, and c_{j+k} <= c_j c_k
/// for j <= 8 and j = k. Throws InconsistentOracle.
void check_language_counts(const std::vector<mpz_class>& counts);

/// h_k = min_{j<=k} (1/j) log #L(X, j) for k = 1..n, each an upper bound on
/// H_top with outward-rounded logarithms. Throws InconsistentOracle.
std::vector<mpq_class> entropy_upper_bounds(const LanguageOracle& oracle, int n);
/// Same, from already-queried counts.
std::vector<mpq_class> entropy_upper_bounds(const std::vector<mpz_class>& counts);

}  // namespace dyncert::shifts
