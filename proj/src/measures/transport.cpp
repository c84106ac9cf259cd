#include "dyncert/measures/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dyncert/core/error.hpp"

namespace dyncert::measures {

namespace {

// Potentials in the simplex stay below 4 * nodes * max cost; keep that in int64.
constexpr double kPotentialBudget = 2.0e18;
constexpr std::int64_t kCostCeiling = std::int64_t{1} << 50;

std::int64_t to_int64(const mpz_class& z) { return static_cast<std::int64_t>(z.get_si()); }

mpq_class frac(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - q;
}

mpq_class circle_distance(const mpq_class& x, const mpq_class& y) {
  const mpq_class t = frac(x - y);
  return std::min(t, mpq_class(1 - t));
}

mpz_class weight_denominator(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  mpz_class d = 1;
  for (const auto* m : {&mu, &nu}) {
    for (const auto& a : m->atoms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a.weight.get_den_mpz_t());
  }
  return d;
}

bool on_common_line(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const mpq_class& y = mu.atoms().front().point.im;
  for (const auto* m : {&mu, &nu}) {
    for (const auto& a : m->atoms()) {
      if (a.point.im != y) return false;
    }
  }
  return true;
}

double cost_budget(std::size_t nodes) { return kPotentialBudget / (4.0 * static_cast<double>(nodes + 2)); }

// Exact integer costs when every distance is a rational with a small common
// denominator. Returns false if the scaled costs would be too large.
bool exact_costs(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricKind metric, CostMatrix& out) {
  if (metric == MetricKind::Spherical) return false;
  if (metric == MetricKind::Planar && !on_common_line(mu, nu)) return false;
  const bool circle = metric == MetricKind::Circle;
  mpz_class scale = 1;
  for (const auto* m : {&mu, &nu}) {
    for (const auto& a : m->atoms()) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.point.re.get_den_mpz_t());
      if (scale > kCostCeiling) return false;
    }
  }
  const std::size_t n = mu.size();
  const std::size_t m = nu.size();
  const double budget = std::min(cost_budget(n + m), static_cast<double>(kCostCeiling));
  std::vector<std::int64_t> costs(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const mpq_class& x = mu.atoms()[i].point.re;
      const mpq_class& y = nu.atoms()[j].point.re;
      const mpq_class d = circle ? circle_distance(x, y) : mpq_class(abs(x - y));
      const mpq_class scaled = d * scale;
      if (scaled.get_den() != 1 || scaled.get_d() > budget) return false;
      costs[i * m + j] = to_int64(scaled.get_num());
    }
  }
  out.costs = std::move(costs);
  out.scale = scale;
  out.error = 0;
  return true;
}

double distance_double(MetricKind metric, double ax, double ay, double bx, double by) {
  switch (metric) {
    case MetricKind::Planar:
      return std::hypot(ax - bx, ay - by);
    case MetricKind::Spherical: {
      const double na = 1.0 + ax * ax + ay * ay;
      const double nb = 1.0 + bx * bx + by * by;
      return 2.0 * std::hypot(ax - bx, ay - by) / (std::sqrt(na) * std::sqrt(nb));
    }
    case MetricKind::Circle: {
      double t = std::fabs(ax - bx);
      t -= std::floor(t);
      return std::min(t, 1.0 - t);
    }
  }
  return 0.0;
}

}  // namespace

CostMatrix assemble_costs(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricKind metric, long bits,
                          bool parallel) {
  if (mu.size() == 0 || nu.size() == 0) throw DynError(Errc::InfeasibleWeights, "measure has no atoms");
  if (bits < 1 || bits > 50) throw DynError(Errc::InvalidArgument, "cost bits must lie in [1, 50]");
  CostMatrix out;
  if (exact_costs(mu, nu, metric, out)) return out;

  const std::size_t n = mu.size();
  const std::size_t m = nu.size();
  std::vector<double> ax(n), ay(n), bx(m), by(m);
  double coord = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ax[i] = mu.atoms()[i].point.re.get_d();
    ay[i] = mu.atoms()[i].point.im.get_d();
    coord = std::max({coord, std::fabs(ax[i]), std::fabs(ay[i])});
  }
  for (std::size_t j = 0; j < m; ++j) {
    bx[j] = nu.atoms()[j].point.re.get_d();
    by[j] = nu.atoms()[j].point.im.get_d();
    coord = std::max({coord, std::fabs(bx[j]), std::fabs(by[j])});
  }
  if (metric == MetricKind::Circle) coord = 1.0;

  std::vector<double> dist(n * m);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < rows; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < m; ++j) dist[ii * m + j] = distance_double(metric, ax[ii], ay[ii], bx[j], by[j]);
  }
  const double max_dist = *std::max_element(dist.begin(), dist.end());
  const double budget = std::min(cost_budget(n + m), static_cast<double>(kCostCeiling));
  long scale_bits = bits;
  while (scale_bits > 0 && std::ldexp(max_dist + 1.0, static_cast<int>(scale_bits)) > budget) --scale_bits;
  if (std::ldexp(max_dist + 1.0, static_cast<int>(scale_bits)) > budget) {
    throw DynError(Errc::InvalidArgument, "distances too large for integer transport costs");
  }

  out.costs.resize(n * m);
  for (std::size_t k = 0; k < n * m; ++k) {
    out.costs[k] = std::llround(std::ldexp(dist[k], static_cast<int>(scale_bits)));
  }
  out.scale = mpz_class(1) << static_cast<mp_bitcnt_t>(scale_bits);
  // Floating evaluation: inputs rounded once, a handful of correctly rounded
  // operations; 2^-45 (1 + max |coordinate|) covers all three metrics.
  const mpq_class float_err = mpq_class(mpz_class(static_cast<long>(std::ceil(coord)) + 1), mpz_class(1) << 45);
  out.error = mpq_class(1, out.scale * 2) + float_err;
  return out;
}

namespace {

struct Level {
  mpq_class pos;  // coupling coordinate, frac(re) on the circle or re on a line
  mpq_class weight;
  std::size_t index;
};

std::vector<Level> levels(const DiscreteMeasure& mu, bool circle) {
  std::vector<Level> out;
  out.reserve(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto& a = mu.atoms()[i];
    out.push_back({circle ? frac(a.point.re) : a.point.re, a.weight, i});
  }
  std::stable_sort(out.begin(), out.end(), [](const Level& a, const Level& b) { return a.pos < b.pos; });
  return out;
}

// Weighted median of F - G over the unit circle, weights = segment lengths.
mpq_class circle_shift(const std::vector<Level>& mu, const std::vector<Level>& nu) {
  struct Event {
    mpq_class pos;
    mpq_class delta;
  };
  std::vector<Event> events;
  for (const auto& l : mu) events.push_back({l.pos, l.weight});
  for (const auto& l : nu) events.push_back({l.pos, -l.weight});
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.pos < b.pos; });
  std::vector<std::pair<mpq_class, mpq_class>> segments;  // (value of F - G, length)
  mpq_class value = 0;
  mpq_class last = 0;
  for (const auto& e : events) {
    if (e.pos > last) segments.emplace_back(value, e.pos - last);
    value += e.delta;
    last = e.pos;
  }
  if (last < 1) segments.emplace_back(value, 1 - last);
  std::sort(segments.begin(), segments.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  mpq_class acc = 0;
  for (const auto& [v, len] : segments) {
    acc += len;
    if (2 * acc >= 1) return v;
  }
  return segments.back().first;
}

// Quantile coupling: mu level s is sent to nu level s - shift (mod 1).
std::vector<Flow> quantile_coupling(const std::vector<Level>& mu, const std::vector<Level>& nu,
                                    const mpq_class& shift) {
  struct Piece {
    mpq_class lo;
    mpq_class hi;
    std::size_t index;
  };
  std::vector<Piece> mu_pieces;
  mpq_class acc = 0;
  for (const auto& l : mu) {
    mu_pieces.push_back({acc, acc + l.weight, l.index});
    acc += l.weight;
  }
  std::vector<Piece> nu_pieces;
  acc = 0;
  for (const auto& l : nu) {
    mpq_class lo = frac(acc + shift);
    mpq_class hi = lo + l.weight;
    if (hi > 1) {
      nu_pieces.push_back({lo, 1, l.index});
      nu_pieces.push_back({0, hi - 1, l.index});
    } else {
      nu_pieces.push_back({lo, hi, l.index});
    }
    acc += l.weight;
  }
  std::sort(nu_pieces.begin(), nu_pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });

  std::vector<Flow> flows;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < mu_pieces.size() && b < nu_pieces.size()) {
    const mpq_class lo = std::max(mu_pieces[a].lo, nu_pieces[b].lo);
    const mpq_class hi = std::min(mu_pieces[a].hi, nu_pieces[b].hi);
    if (hi > lo) {
      const std::size_t i = mu_pieces[a].index;
      const std::size_t j = nu_pieces[b].index;
      if (!flows.empty() && flows.back().source == i && flows.back().target == j) {
        flows.back().mass += hi - lo;
      } else {
        flows.push_back({i, j, hi - lo});
      }
    }
    if (mu_pieces[a].hi < nu_pieces[b].hi) {
      ++a;
    } else if (nu_pieces[b].hi < mu_pieces[a].hi) {
      ++b;
    } else {
      ++a;
      ++b;
    }
  }
  // A piece of nu may have been split by the wrap; merge duplicate pairs.
  std::sort(flows.begin(), flows.end(), [](const Flow& x, const Flow& y) {
    return x.source != y.source ? x.source < y.source : x.target < y.target;
  });
  std::vector<Flow> merged;
  for (auto& f : flows) {
    if (!merged.empty() && merged.back().source == f.source && merged.back().target == f.target) {
      merged.back().mass += f.mass;
    } else {
      merged.push_back(std::move(f));
    }
  }
  return merged;
}

W1Result closed_form(const DiscreteMeasure& mu, const DiscreteMeasure& nu, bool circle) {
  const auto a = levels(mu, circle);
  const auto b = levels(nu, circle);
  const mpq_class shift = circle ? circle_shift(a, b) : mpq_class(0);
  W1Result out;
  out.closed_form = true;
  out.plan.flows = quantile_coupling(a, b, shift);
  out.value = 0;
  for (const auto& f : out.plan.flows) {
    const mpq_class& x = mu.atoms()[f.source].point.re;
    const mpq_class& y = nu.atoms()[f.target].point.re;
    out.value += f.mass * (circle ? circle_distance(x, y) : mpq_class(abs(x - y)));
  }
  return out;
}

}  // namespace

W1Result wasserstein1_simplex(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricKind metric, long bits,
                              bool parallel) {
  mu.validate();
  nu.validate();
  const mpz_class denom = weight_denominator(mu, nu);
  if (denom > (mpz_class(1) << 62)) throw DynError(Errc::InvalidArgument, "weight denominators are too large");

  CostMatrix cm = assemble_costs(mu, nu, metric, bits, parallel);
  IntegerTransport problem;
  problem.costs = std::move(cm.costs);
  for (const auto& a : mu.atoms()) problem.supply.push_back(to_int64(mpz_class(a.weight * denom)));
  for (const auto& a : nu.atoms()) problem.demand.push_back(to_int64(mpz_class(a.weight * denom)));
  const IntegerSolution sol = solve_transport(problem);

  W1Result out;
  out.error = cm.error;
  out.pivots = sol.pivots;
  out.value = mpq_class(sol.cost, denom * cm.scale);
  out.value.canonicalize();
  for (const auto& f : sol.flows) {
    mpq_class mass(mpz_class(static_cast<long>(f.amount)), denom);
    mass.canonicalize();
    out.plan.flows.push_back({f.source, f.target, mass});
  }
  const auto dual = [&cm](std::int64_t v) -> mpq_class {
    mpq_class q(mpz_class(static_cast<long>(v)), cm.scale);
    q.canonicalize();
    return q;
  };
  for (auto v : sol.phi) out.phi.push_back(dual(v));
  for (auto v : sol.psi) out.psi.push_back(dual(v));
  return out;
}

W1Result wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricKind metric, long bits) {
  mu.validate();
  nu.validate();
  if (metric == MetricKind::Circle) return closed_form(mu, nu, true);
  if (metric == MetricKind::Planar && on_common_line(mu, nu)) return closed_form(mu, nu, false);
  return wasserstein1_simplex(mu, nu, metric, bits);
}

}  // namespace dyncert::measures
