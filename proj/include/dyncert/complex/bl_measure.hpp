#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "dyncert/complex/poly.hpp"
#include "dyncert/measures/measure.hpp"

namespace dyncert::complex {

/// Backward orbit of z0. levels[0] = {z0}; every node of levels[n] satisfies
/// |f(node) - levels[n-1][parent[n][i]]| < residual.
struct PreimageTree {
  ComplexRational root;
  int depth = 0;
  std::vector<std::vector<ComplexRational>> levels;
  std::vector<std::vector<std::size_t>> parent;  // parent[0] is empty
  mpq_class residual;
};

enum class Sampling { Full, MonteCarlo };

struct BLOptions {
  int depth = 10;
  mpq_class tol = mpq_class(1, mpz_class(1) << 40);
  Sampling sampling = Sampling::Full;
  std::size_t paths = 1u << 14;
  std::uint64_t seed = 0;
  bool parallel = true;
  /// Defaults to R + 1 on the real axis, R = escape_radius(f).
  std::optional<ComplexRational> z0;
};

struct BLResult {
  measures::DiscreteMeasure measure;
  PreimageTree tree;
  /// Leaf node of every atom before merging: all d^n leaves in full mode, one
  /// per path in Monte Carlo mode.
  std::vector<std::size_t> leaf_of_sample;
};

/// Equal-weight measure on the depth-n preimages of z0. Full mode keeps all
/// d^n leaves (requires d^n <= 2^20); Monte Carlo mode follows `paths` random
/// backward branches, each path seeded from (seed, path index) alone.
/// Throws ExceptionalPoint for z^d with z0 = 0, NoConvergence from preimages.
BLResult bl_measure_approx(const PolySpec& f, const BLOptions& options);

/// Certified max |f(child) - parent| over the whole tree.
mpq_class pushforward_residual(const PolySpec& f, const PreimageTree& tree, bool parallel = true);

/// Counter-based generator: the k-th output for a stream depends on (seed, stream, k) only.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dyncert::complex
