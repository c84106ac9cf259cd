#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dyncert::shifts {

using Symbol = std::uint32_t;
/// Finite word over {0, ..., d-1}; the alphabet size travels with the owner.
using Word = std::vector<Symbol>;

/// X_F: the largest shift space none of whose points contains a word of F.
struct ForbiddenSetSFT {
  std::size_t alphabet = 2;
  std::vector<Word> forbidden;
};

/// Square matrix with nonnegative integer entries. Binary instances are the
/// transition matrices of one-step SFTs; general ones count labelled edges.
class NonnegMatrix {
 public:
  NonnegMatrix() = default;
  explicit NonnegMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}
  static NonnegMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows);

  std::size_t size() const { return n_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  bool is_zero_one() const;
  /// Principal submatrix on the given (sorted) index set.
  NonnegMatrix restricted(const std::vector<std::size_t>& keep) const;
  std::vector<std::vector<std::uint32_t>> rows() const;

  friend bool operator==(const NonnegMatrix&, const NonnegMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> entries_;
};

struct LabeledEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Symbol label = 0;

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Finite labelled directed graph presenting a sofic shift.
struct LabeledGraph {
  std::size_t vertices = 0;
  std::size_t alphabet = 2;
  std::vector<LabeledEdge> edges;
};

/// Generating set of a coded shift. Only the materialized prefix is stored;
/// order matters because X_m uses the first m generators.
struct GeneratingSet {
  std::size_t alphabet = 2;
  std::vector<Word> generators;
  bool unique_representation_asserted = false;
};

/// Throws AlphabetMismatch if any symbol is >= alphabet.
void check_alphabet(const ForbiddenSetSFT& x);
void check_alphabet(const LabeledGraph& g);
void check_alphabet(const GeneratingSet& g);

/// Vertices lying on some bi-infinite path (iteratively drops sources and
/// sinks). Returned sorted.
std::vector<std::size_t> essential_vertices(const NonnegMatrix& adjacency);
std::vector<std::size_t> essential_vertices(const LabeledGraph& g);

}  // namespace dyncert::shifts
