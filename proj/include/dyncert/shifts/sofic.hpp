#pragma once

#include <vector>

#include <gmpxx.h>

#include "dyncert/shifts/entropy.hpp"
#include "dyncert/shifts/presentation.hpp"

namespace dyncert::shifts {

/// Right-resolving presentation obtained by the subset construction.
///
/// States are nonempty sets of essential vertices of the input, reachable from
/// `start` (the set of all essential vertices) by following labels. Every
/// label word read from `start` is a word of the language and conversely, so
/// path counts from `start` are exact language counts.
struct DeterminizedGraph {
  std::size_t alphabet = 2;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<LabeledEdge> edges;
  std::size_t start = 0;
  /// States lying on bi-infinite paths, sorted.
  std::vector<std::size_t> essential;
  /// Edge-count matrix restricted to `essential`.
  NonnegMatrix adjacency;

  /// The trimmed graph, which presents the same shift and is right-resolving.
  LabeledGraph as_labeled_graph() const;
};

/// Throws AlphabetMismatch, InvalidArgument, or EmptyShift.
DeterminizedGraph sofic_determinize(const LabeledGraph& g);

/// Always Converged, width < 2^-p. Throws EmptyShift.
EntropyResult entropy_sofic(const LabeledGraph& g, int p);

/// #L(X_T, n) for n = 1..max_n.
std::vector<mpz_class> count_words_sofic(const DeterminizedGraph& d, int max_n);
std::vector<Word> enumerate_words_sofic(const DeterminizedGraph& d, int n);

}  // namespace dyncert::shifts
