#include <algorithm>
#include <cmath>
#include <limits>

#include "dyncert/core/error.hpp"
#include "dyncert/measures/transport.hpp"

namespace dyncert::measures {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
constexpr int kUp = 1;     // pred arc runs node -> parent
constexpr int kDown = -1;  // pred arc runs parent -> node
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Complete bipartite network plus a root joined to every node by an
// artificial arc. Arc ids: i * m + j for real arcs, then n artificial arcs
// i -> root, then m artificial arcs root -> sink.
class Simplex {
 public:
  explicit Simplex(const IntegerTransport& p)
      : n_(p.supply.size()), m_(p.demand.size()), costs_(p.costs), root_(n_ + m_) {
    const std::size_t nodes = n_ + m_ + 1;
    parent_.assign(nodes, kNone);
    pred_.assign(nodes, 0);
    dir_.assign(nodes, kUp);
    flow_.assign(nodes, 0);
    pot_.assign(nodes, 0);
    depth_.assign(nodes, 0);
    first_child_.assign(nodes, kNone);
    next_.assign(nodes, kNone);
    prev_.assign(nodes, kNone);

    std::int64_t max_cost = 0;
    for (auto c : costs_) max_cost = std::max(max_cost, c);
    artificial_ = static_cast<std::int64_t>(nodes) * (max_cost + 1) + 1;

    for (std::size_t i = 0; i < n_; ++i) {
      attach(i, root_, n_ * m_ + i, kUp, p.supply[i]);
      pot_[i] = -artificial_;
      depth_[i] = 1;
    }
    for (std::size_t j = 0; j < m_; ++j) {
      attach(n_ + j, root_, n_ * m_ + n_ + j, kDown, p.demand[j]);
      pot_[n_ + j] = artificial_;
      depth_[n_ + j] = 1;
    }
    const auto arcs = static_cast<double>(n_ * m_);
    block_ = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(arcs)));
  }

  std::size_t run() {
    std::size_t pivots = 0;
    std::size_t in_i = 0;
    std::size_t in_j = 0;
    while (find_entering(in_i, in_j)) {
      pivot(in_i, in_j);
      ++pivots;
    }
    return pivots;
  }

  IntegerSolution solution() const {
    IntegerSolution out;
    for (std::size_t v = 0; v < root_; ++v) {
      if (pred_[v] >= n_ * m_) {
        if (flow_[v] != 0) throw DynError(Errc::InfeasibleWeights, "transport problem is infeasible");
        continue;
      }
      if (flow_[v] == 0) continue;
      const std::size_t i = pred_[v] / m_;
      const std::size_t j = pred_[v] % m_;
      out.flows.push_back({i, j, flow_[v]});
      out.cost += mpz_class(static_cast<long>(costs_[pred_[v]])) * static_cast<long>(flow_[v]);
    }
    std::sort(out.flows.begin(), out.flows.end(), [](const IntegerFlow& a, const IntegerFlow& b) {
      return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    // Shift so that the potentials are small and the duals read naturally.
    const std::int64_t shift = n_ > 0 ? pot_[0] : 0;
    out.phi.resize(n_);
    out.psi.resize(m_);
    for (std::size_t i = 0; i < n_; ++i) out.phi[i] = -(pot_[i] - shift);
    for (std::size_t j = 0; j < m_; ++j) out.psi[j] = pot_[n_ + j] - shift;
    return out;
  }

 private:
  std::size_t source(std::size_t arc) const {
    if (arc < n_ * m_) return arc / m_;
    if (arc < n_ * m_ + n_) return arc - n_ * m_;
    return root_;
  }
  std::size_t target(std::size_t arc) const {
    if (arc < n_ * m_) return n_ + arc % m_;
    if (arc < n_ * m_ + n_) return root_;
    return n_ + (arc - n_ * m_ - n_);
  }
  std::int64_t cost(std::size_t arc) const { return arc < n_ * m_ ? costs_[arc] : artificial_; }

  void link_child(std::size_t v, std::size_t p) {
    prev_[v] = kNone;
    next_[v] = first_child_[p];
    if (first_child_[p] != kNone) prev_[first_child_[p]] = v;
    first_child_[p] = v;
  }
  void unlink_child(std::size_t v) {
    const std::size_t p = parent_[v];
    if (prev_[v] != kNone) {
      next_[prev_[v]] = next_[v];
    } else {
      first_child_[p] = next_[v];
    }
    if (next_[v] != kNone) prev_[next_[v]] = prev_[v];
    prev_[v] = next_[v] = kNone;
  }
  void attach(std::size_t v, std::size_t p, std::size_t arc, int dir, std::int64_t flow) {
    parent_[v] = p;
    pred_[v] = arc;
    dir_[v] = dir;
    flow_[v] = flow;
    link_child(v, p);
  }

  // Block search pricing over the real arcs.
  bool find_entering(std::size_t& in_i, std::size_t& in_j) {
    const std::size_t arcs = n_ * m_;
    std::int64_t best = 0;
    std::size_t scanned_in_block = 0;
    std::size_t arc = next_arc_;
    std::size_t i = arc / m_;
    std::size_t j = arc % m_;
    for (std::size_t count = 0; count < arcs; ++count) {
      const std::int64_t rc = costs_[arc] + pot_[i] - pot_[n_ + j];
      if (rc < best) {
        best = rc;
        in_i = i;
        in_j = j;
      }
      ++arc;
      if (++j == m_) {
        j = 0;
        ++i;
        if (i == n_) {
          i = 0;
          arc = 0;
        }
      }
      if (++scanned_in_block == block_) {
        if (best < 0) {
          next_arc_ = arc;
          return true;
        }
        scanned_in_block = 0;
      }
    }
    next_arc_ = arc;
    return best < 0;
  }

  void pivot(std::size_t in_i, std::size_t in_j) {
    const std::size_t in_arc = in_i * m_ + in_j;
    const std::size_t first = in_i;
    const std::size_t second = n_ + in_j;

    std::size_t a = first;
    std::size_t b = second;
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    const std::size_t join = a;

    // Leaving arc: last blocking arc in cycle order from the join.
    std::int64_t delta = kInf;
    std::size_t u_out = kNone;
    int side = 0;
    for (std::size_t u = first; u != join; u = parent_[u]) {
      const std::int64_t d = dir_[u] == kDown ? kInf : flow_[u];
      if (d < delta) {
        delta = d;
        u_out = u;
        side = 1;
      }
    }
    for (std::size_t u = second; u != join; u = parent_[u]) {
      const std::int64_t d = dir_[u] == kUp ? kInf : flow_[u];
      if (d <= delta) {
        delta = d;
        u_out = u;
        side = 2;
      }
    }
    if (side == 0) throw DynError(Errc::InvalidArgument, "transport problem is unbounded");

    if (delta > 0) {
      for (std::size_t u = first; u != join; u = parent_[u]) flow_[u] -= dir_[u] * delta;
      for (std::size_t u = second; u != join; u = parent_[u]) flow_[u] += dir_[u] * delta;
    }

    // Re-hang the subtree cut off at u_out from the entering arc.
    const std::size_t start = side == 1 ? first : second;
    std::size_t carry_parent = side == 1 ? second : first;
    std::size_t carry_arc = in_arc;
    int carry_dir = side == 1 ? kUp : kDown;
    std::int64_t carry_flow = delta;
    const std::int64_t new_pot = side == 1 ? pot_[second] - cost(in_arc) : pot_[first] + cost(in_arc);
    const std::int64_t sigma = new_pot - pot_[start];

    std::size_t x = start;
    while (true) {
      const std::size_t old_parent = parent_[x];
      const std::size_t old_arc = pred_[x];
      const int old_dir = dir_[x];
      const std::int64_t old_flow = flow_[x];
      unlink_child(x);
      attach(x, carry_parent, carry_arc, carry_dir, carry_flow);
      if (x == u_out) break;
      carry_parent = x;
      carry_arc = old_arc;
      carry_dir = -old_dir;
      carry_flow = old_flow;
      x = old_parent;
    }

    // Potentials shift uniformly on the moved subtree; depths are recomputed.
    stack_.clear();
    stack_.push_back(start);
    while (!stack_.empty()) {
      const std::size_t v = stack_.back();
      stack_.pop_back();
      pot_[v] += sigma;
      depth_[v] = depth_[parent_[v]] + 1;
      for (std::size_t c = first_child_[v]; c != kNone; c = next_[c]) stack_.push_back(c);
    }
  }

  std::size_t n_;
  std::size_t m_;
  const std::vector<std::int64_t>& costs_;
  std::size_t root_;
  std::int64_t artificial_ = 0;
  std::size_t block_ = 10;
  std::size_t next_arc_ = 0;

  std::vector<std::size_t> parent_;
  std::vector<std::size_t> pred_;
  std::vector<int> dir_;
  std::vector<std::int64_t> flow_;
  std::vector<std::int64_t> pot_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> first_child_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> prev_;
  std::vector<std::size_t> stack_;
};

}  // namespace

IntegerSolution solve_transport(const IntegerTransport& problem) {
  const std::size_t n = problem.supply.size();
  const std::size_t m = problem.demand.size();
  if (n == 0 || m == 0) throw DynError(Errc::InfeasibleWeights, "empty transport problem");
  if (problem.costs.size() != n * m) throw DynError(Errc::InvalidArgument, "cost matrix has the wrong size");
  std::int64_t total_supply = 0;
  std::int64_t total_demand = 0;
  for (auto s : problem.supply) {
    if (s <= 0) throw DynError(Errc::InfeasibleWeights, "supplies must be positive");
    if (__builtin_add_overflow(total_supply, s, &total_supply)) {
      throw DynError(Errc::InvalidArgument, "total supply overflows");
    }
  }
  for (auto d : problem.demand) {
    if (d <= 0) throw DynError(Errc::InfeasibleWeights, "demands must be positive");
    if (__builtin_add_overflow(total_demand, d, &total_demand)) {
      throw DynError(Errc::InvalidArgument, "total demand overflows");
    }
  }
  if (total_supply != total_demand) throw DynError(Errc::InfeasibleWeights, "supply and demand totals differ");
  constexpr std::int64_t kCostLimit = std::int64_t{1} << 52;
  for (auto c : problem.costs) {
    if (c < 0 || c >= kCostLimit) throw DynError(Errc::InvalidArgument, "costs must lie in [0, 2^52)");
  }
  // Potentials stay below (nodes + 1) * (max cost + 1) * 2 in magnitude.
  const double bound = 4.0 * static_cast<double>(n + m + 2) * static_cast<double>(kCostLimit);
  if (bound > 9.0e18) {
    std::int64_t max_cost = 0;
    for (auto c : problem.costs) max_cost = std::max(max_cost, c);
    if (4.0 * static_cast<double>(n + m + 2) * static_cast<double>(max_cost + 1) > 9.0e18) {
      throw DynError(Errc::InvalidArgument, "costs too large for the problem size");
    }
  }

  Simplex simplex(problem);
  const std::size_t pivots = simplex.run();
  IntegerSolution out = simplex.solution();
  out.pivots = pivots;
  return out;
}

}  // namespace dyncert::measures
