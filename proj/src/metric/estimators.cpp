#include "dyncert/metric/estimators.hpp"

#include <cmath>
#include <string>

#include "dyncert/core/error.hpp"

namespace dyncert::metric {

namespace {

// ceil(eps * 2^64) for 0 < eps <= 1/2.
Fixed radius(const mpq_class& eps) {
  if (sgn(eps) <= 0 || eps > mpq_class(1, 2)) throw DynError(Errc::InvalidArgument, "eps must lie in (0, 1/2]");
  mpz_class r = eps.get_num() << 64;
  mpz_cdiv_q(r.get_mpz_t(), r.get_mpz_t(), eps.get_den_mpz_t());
  return static_cast<Fixed>(r.get_ui());
}

void check_grid(std::size_t n, const mpq_class& eps, std::size_t grid) {
  if (n == 0) throw DynError(Errc::InvalidArgument, "horizon must be positive");
  if (grid == 0 || mpq_class(4, grid) >= eps) {
    throw DynError(Errc::InvalidArgument, "grid spacing must be below eps / 4");
  }
}

// Row g holds the first `stride` orbit points of g / grid.
std::vector<Fixed> grid_orbits(const IntervalMap& f, std::size_t stride, std::size_t grid) {
  std::vector<Fixed> orbits(grid * stride);
  const auto rows = static_cast<std::int64_t>(grid);
#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < rows; ++g) {
    const auto gg = static_cast<std::size_t>(g);
    const auto start =
        static_cast<Fixed>((static_cast<unsigned __int128>(gg) << 64) / static_cast<unsigned __int128>(grid));
    Fixed x = start;
    const auto row = f.orbit(x, stride);
    std::copy(row.begin(), row.end(), orbits.begin() + static_cast<std::ptrdiff_t>(gg * stride));
  }
  return orbits;
}

// Separated within the first n steps; time 0 is assumed already close.
inline bool separated(const Fixed* a, const Fixed* b, std::size_t n, Fixed e) {
  if (circle_gap(a[n - 1], b[n - 1]) >= e) return true;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (circle_gap(a[k], b[k]) >= e) return true;
  }
  return false;
}

std::vector<std::size_t> greedy(const std::vector<Fixed>& orbits, std::size_t stride, std::size_t n,
                                std::size_t grid, Fixed e) {
  std::vector<std::size_t> accepted;
  for (std::size_t g = 0; g < grid; ++g) {
    const Fixed* row = &orbits[g * stride];
    const Fixed x = row[0];
    bool ok = true;
    // Accepted points lie at or before x; scan back while still within eps.
    for (std::size_t a = accepted.size(); ok && a-- > 0;) {
      const Fixed* other = &orbits[accepted[a] * stride];
      if (x - other[0] >= e) break;
      ok = separated(row, other, n, e);
    }
    // Points just after 0 are close to x across the wrap.
    for (std::size_t a = 0; ok && a < accepted.size(); ++a) {
      const Fixed* other = &orbits[accepted[a] * stride];
      if (static_cast<Fixed>(other[0] - x) >= e) break;
      ok = separated(row, other, n, e);
    }
    if (ok) accepted.push_back(g);
  }
  return accepted;
}

SeparatedSetReport make_report(std::size_t n, const mpq_class& eps, std::size_t grid,
                               const std::vector<std::size_t>& accepted, const std::vector<Fixed>& orbits,
                               std::size_t stride) {
  SeparatedSetReport r;
  r.n = n;
  r.eps = eps;
  r.grid = grid;
  r.count = accepted.size();
  for (std::size_t g : accepted) r.witnesses.push_back(fixed_to_rational(orbits[g * stride]));
  return r;
}

}  // namespace

SeparatedSetReport separated_count(const IntervalMap& f, std::size_t n, const mpq_class& eps, std::size_t grid) {
  const Fixed e = radius(eps);
  check_grid(n, eps, grid);
  const auto orbits = grid_orbits(f, n, grid);
  return make_report(n, eps, grid, greedy(orbits, n, n, grid, e), orbits, n);
}

SeparatedSetReport separated_count_reference(const IntervalMap& f, std::size_t n, const mpq_class& eps,
                                             std::size_t grid) {
  const Fixed e = radius(eps);
  check_grid(n, eps, grid);
  std::vector<std::size_t> accepted;
  std::vector<Fixed> flat;
  for (std::size_t g = 0; g < grid; ++g) {
    const auto start =
        static_cast<Fixed>((static_cast<unsigned __int128>(g) << 64) / static_cast<unsigned __int128>(grid));
    const auto row = f.orbit(start, n);
    flat.insert(flat.end(), row.begin(), row.end());
    bool ok = true;
    for (std::size_t a : accepted) {
      bool sep = false;
      for (std::size_t k = 0; k < n && !sep; ++k) sep = circle_gap(row[k], flat[a * n + k]) >= e;
      if (!sep) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(g);
  }
  return make_report(n, eps, grid, accepted, flat, n);
}

bool is_separated(const IntervalMap& f, const mpq_class& x, const mpq_class& y, std::size_t n, const mpq_class& eps) {
  const Fixed e = radius(eps);
  const auto a = f.orbit(x, n);
  const auto b = f.orbit(y, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (circle_gap(a[k], b[k]) >= e) return true;
  }
  return false;
}

SeparationEntropy entropy_from_separation(const IntervalMap& f, const mpq_class& eps0, std::size_t n_max,
                                          std::size_t grid) {
  const Fixed e = radius(eps0);
  check_grid(n_max, eps0, grid);
  const auto orbits = grid_orbits(f, n_max, grid);
  SeparationEntropy out;
  double best = 0.0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    const std::size_t count = greedy(orbits, n_max, k, grid, e).size();
    out.counts.push_back(count);
    const double h = std::log(static_cast<double>(count)) / static_cast<double>(k);
    best = k == 1 ? h : std::min(best, h);
    out.h.push_back(best);
  }
  return out;
}

KatokBrinReport katok_brin(const OrbitSample& orbit, const mpq_class& eps, std::size_t n, bool parallel) {
  const Fixed e = radius(eps);
  const std::size_t length = orbit.points.size();
  if (n == 0 || length <= n) throw DynError(Errc::InvalidArgument, "orbit must be longer than the horizon");
  const Fixed* p = orbit.points.data();
  const auto last = static_cast<std::int64_t>(length - n);
  std::int64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits) if (parallel)
  for (std::int64_t t = 1; t <= last; ++t) {
    const Fixed* q = p + t;
    bool inside = true;
    for (std::size_t k = 0; k < n && inside; ++k) inside = circle_gap(q[k], p[k]) < e;
    hits += inside ? 1 : 0;
  }
  KatokBrinReport r;
  r.trials = length - n;
  r.hits = static_cast<std::size_t>(hits);
  const double bound = std::log(static_cast<double>(r.trials)) / static_cast<double>(n);
  if (r.hits == 0) {
    throw DynError(Errc::ZeroHits, "no return to the Bowen ball in " + std::to_string(r.trials) +
                                       " steps; the estimate exceeds log(N)/n = " + std::to_string(bound));
  }
  r.estimate = (std::log(static_cast<double>(r.trials)) - std::log(static_cast<double>(r.hits))) /
               static_cast<double>(n);
  return r;
}

}  // namespace dyncert::metric
