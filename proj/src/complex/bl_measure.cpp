#include "dyncert/complex/bl_measure.hpp"

#include <algorithm>
#include <exception>
#include <map>

#include "dyncert/core/error.hpp"

namespace dyncert::complex {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

// Runs body(i) for i in [0, n), rethrowing the first exception after the loop.
template <class Body>
void parallel_for(std::size_t n, bool parallel, Body body) {
  std::exception_ptr error;
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(dyncert_bl_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

BLResult bl_measure_approx(const PolySpec& f, const BLOptions& o) {
  if (o.depth < 1) throw DynError(Errc::InvalidArgument, "depth must be positive");
  if (sgn(o.tol) <= 0) throw DynError(Errc::InvalidArgument, "tolerance must be positive");
  const auto d = static_cast<std::size_t>(f.degree());
  const ComplexRational z0 = o.z0 ? *o.z0 : ComplexRational{escape_radius(f).to_rational() + 1, 0};
  if (f.is_monomial() && sgn(z0.re) == 0 && sgn(z0.im) == 0) {
    throw DynError(Errc::ExceptionalPoint, "0 is totally invariant under z^d");
  }

  BLResult out;
  PreimageTree& t = out.tree;
  t.root = z0;
  t.depth = o.depth;
  t.levels.push_back({z0});
  t.parent.emplace_back();
  t.residual = 0;

  if (o.sampling == Sampling::Full) {
    double leaves = 1.0;
    for (int n = 0; n < o.depth; ++n) leaves *= static_cast<double>(d);
    if (leaves > static_cast<double>(1u << 20)) throw DynError(Errc::InvalidArgument, "full mode needs d^n <= 2^20");
    for (int n = 1; n <= o.depth; ++n) {
      const auto& above = t.levels.back();
      std::vector<ComplexRational> level(above.size() * d);
      std::vector<mpq_class> res(above.size());
      parallel_for(above.size(), o.parallel, [&](std::size_t i) {
        PreimageSet s = preimages(f, above[i], o.tol);
        res[i] = s.residual;
        for (std::size_t j = 0; j < d; ++j) level[i * d + j] = std::move(s.roots[j]);
      });
      std::vector<std::size_t> par(level.size());
      for (std::size_t i = 0; i < level.size(); ++i) par[i] = i / d;
      for (const auto& r : res) t.residual = std::max(t.residual, r);
      t.levels.push_back(std::move(level));
      t.parent.push_back(std::move(par));
    }
    out.leaf_of_sample.resize(t.levels.back().size());
    for (std::size_t i = 0; i < out.leaf_of_sample.size(); ++i) out.leaf_of_sample[i] = i;
  } else {
    if (o.paths == 0) throw DynError(Errc::InvalidArgument, "need at least one path");
    // Node of each path at the current level; only distinct nodes are expanded.
    std::vector<std::size_t> node(o.paths, 0);
    std::vector<std::uint64_t> state(o.paths);
    for (std::size_t p = 0; p < o.paths; ++p) state[p] = splitmix64(o.seed ^ splitmix64(p));
    for (int n = 1; n <= o.depth; ++n) {
      const auto& above = t.levels.back();
      std::vector<std::size_t> choice(o.paths);
      for (std::size_t p = 0; p < o.paths; ++p) {
        state[p] = splitmix64(state[p]);
        choice[p] = static_cast<std::size_t>(state[p] % d);
      }
      // Distinct (parent, root index) pairs in sorted order give the level.
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
      for (std::size_t p = 0; p < o.paths; ++p) slot.emplace(std::make_pair(node[p], choice[p]), 0);
      std::vector<std::size_t> parents;
      for (const auto& [key, _] : slot) {
        if (parents.empty() || parents.back() != key.first) parents.push_back(key.first);
      }
      std::vector<std::vector<ComplexRational>> roots(parents.size());
      std::vector<mpq_class> res(parents.size());
      parallel_for(parents.size(), o.parallel, [&](std::size_t i) {
        PreimageSet s = preimages(f, above[parents[i]], o.tol);
        res[i] = s.residual;
        roots[i] = std::move(s.roots);
      });
      std::vector<ComplexRational> level;
      std::vector<std::size_t> par;
      std::size_t k = 0;
      for (auto& [key, index] : slot) {
        while (parents[k] != key.first) ++k;
        index = level.size();
        level.push_back(roots[k][key.second]);
        par.push_back(key.first);
      }
      for (std::size_t p = 0; p < o.paths; ++p) node[p] = slot.at({node[p], choice[p]});
      for (const auto& r : res) t.residual = std::max(t.residual, r);
      t.levels.push_back(std::move(level));
      t.parent.push_back(std::move(par));
    }
    out.leaf_of_sample = node;
  }

  std::vector<ComplexRational> points;
  points.reserve(out.leaf_of_sample.size());
  for (auto i : out.leaf_of_sample) points.push_back(t.levels.back()[i]);
  out.measure = measures::DiscreteMeasure::uniform(points, 10 * o.tol);
  return out;
}

mpq_class pushforward_residual(const PolySpec& f, const PreimageTree& tree, bool parallel) {
  mpq_class worst = 0;
  for (std::size_t n = 1; n < tree.levels.size(); ++n) {
    const auto& level = tree.levels[n];
    std::vector<mpq_class> r(level.size());
    parallel_for(level.size(), parallel, [&](std::size_t i) {
      r[i] = residual_bound(f, level[i], tree.levels[n - 1][tree.parent[n][i]], 96);
    });
    for (const auto& v : r) worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace dyncert::complex
