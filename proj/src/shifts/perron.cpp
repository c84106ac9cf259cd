#include "dyncert/shifts/perron.hpp"

#include <algorithm>
#include <cmath>

#include "dyncert/core/error.hpp"

namespace dyncert::shifts {

std::vector<Component> strongly_connected_components(const NonnegMatrix& a) {
  const std::size_t n = a.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<Component> out;
  std::size_t counter = 0;

  // Iterative Tarjan: frame = (vertex, next neighbour to scan).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      bool descended = false;
      while (next < n) {
        const std::size_t w = next++;
        if (a(v, w) == 0) continue;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      const std::size_t v_done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[v_done]);
      }
      if (low[v_done] == index[v_done]) {
        Component c;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          c.vertices.push_back(w);
        } while (w != v_done);
        std::sort(c.vertices.begin(), c.vertices.end());
        c.cyclic = c.vertices.size() > 1 || a(v_done, v_done) != 0;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

namespace {

// Power iteration state for one irreducible block.
class ComponentIteration {
 public:
  explicit ComponentIteration(NonnegMatrix block) : b_(std::move(block)), v_(b_.size()) {
    const std::size_t k = b_.size();
    // Floating warm start on B + I; only the starting vector depends on it.
    std::vector<double> x(k, 1.0);
    std::vector<double> y(k, 0.0);
    for (int it = 0; it < 400; ++it) {
      double norm = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < k; ++j) s += b_(i, j) * x[j];
        y[i] = s;
        norm = std::max(norm, s);
      }
      for (std::size_t i = 0; i < k; ++i) x[i] = y[i] / norm;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double scaled = std::ldexp(std::max(x[i], 0.0), 52);
      v_[i] = mpz_class(std::max(scaled, 1.0));
    }
    evaluate();
  }

  const mpq_class& lo() const { return lo_; }
  const mpq_class& hi() const { return hi_; }

  void step() {
    const std::size_t k = b_.size();
    for (std::size_t i = 0; i < k; ++i) v_[i] += w_[i];  // (B + I) v
    mpz_class largest = 0;
    for (const auto& x : v_) largest = std::max(largest, x);
    const auto size = static_cast<long>(mpz_sizeinbase(largest.get_mpz_t(), 2));
    if (size > bits_) {
      const auto shift = static_cast<unsigned long>(size - bits_);
      for (auto& x : v_) {
        mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), shift);
        if (x < 1) x = 1;
      }
    }
    ++steps_;
    evaluate();
    const mpq_class width = hi_ - lo_;
    if (steps_ % 32 == 0) {
      if (checkpoint_width_ >= 0 && width * 2 > checkpoint_width_ && bits_ < (1L << 16)) bits_ *= 2;
      checkpoint_width_ = width;
    }
  }

 private:
  void evaluate() {
    const std::size_t k = b_.size();
    w_.assign(k, mpz_class(0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (b_(i, j) != 0) w_[i] += v_[j] * b_(i, j);
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      mpq_class r(w_[i], v_[i]);
      r.canonicalize();
      if (i == 0 || r < lo_) lo_ = r;
      if (i == 0 || r > hi_) hi_ = r;
    }
  }

  NonnegMatrix b_;
  std::vector<mpz_class> v_;
  std::vector<mpz_class> w_;
  mpq_class lo_{0};
  mpq_class hi_{0};
  long bits_ = 96;
  long steps_ = 0;
  mpq_class checkpoint_width_{-1};
};

}  // namespace

PerronBounds perron_root_bounds(const NonnegMatrix& a,
                                const std::function<bool(const mpq_class&, const mpq_class&)>& done,
                                long max_iterations) {
  std::vector<ComponentIteration> blocks;
  for (const auto& c : strongly_connected_components(a)) {
    if (c.cyclic) blocks.emplace_back(a.restricted(c.vertices));
  }
  if (blocks.empty()) return {};

  auto current = [&]() {
    PerronBounds out{blocks.front().lo(), blocks.front().hi()};
    for (const auto& b : blocks) {
      out.lo = std::max(out.lo, b.lo());
      out.hi = std::max(out.hi, b.hi());
    }
    return out;
  };

  PerronBounds bounds = current();
  for (long it = 0; !done(bounds.lo, bounds.hi); ++it) {
    if (it >= max_iterations) {
      throw DynError(Errc::NoConvergence, "Perron root: iteration budget exhausted");
    }
    // Blocks whose upper bound is already below the global lower bound cannot
    // hold the spectral radius.
    std::erase_if(blocks, [&](const ComponentIteration& b) { return b.hi() < bounds.lo; });
    for (auto& b : blocks) {
      if (b.hi() - b.lo() > 0) b.step();
    }
    bounds = current();
  }
  return bounds;
}

PerronBounds perron_root_interval(const NonnegMatrix& a, int p) {
  mpq_class target(1);
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<unsigned long>(p));
  return perron_root_bounds(a, [&](const mpq_class& lo, const mpq_class& hi) {
    return hi - lo < target;
  });
}

}  // namespace dyncert::shifts
