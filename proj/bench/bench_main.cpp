// Serial versus OpenMP timings for the parallel kernels. Each pair must
// produce identical output; a mismatch is reported and fails the run.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>

#include "dyncert/complex/bl_measure.hpp"
#include "dyncert/complex/julia.hpp"
#include "dyncert/measures/transport.hpp"
#include "dyncert/metric/estimators.hpp"

using namespace dyncert;

namespace {

double seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %5.2fx   %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "identical" : "MISMATCH");
  return same;
}

measures::DiscreteMeasure random_measure(std::uint64_t seed, std::size_t k) {
  std::vector<measures::Atom> atoms;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t a = complex::splitmix64(seed * 1000003 + 2 * i);
    const std::uint64_t b = complex::splitmix64(seed * 1000003 + 2 * i + 1);
    atoms.push_back({{mpq_class(static_cast<long>(a % 20001) - 10000, 4096),
                      mpq_class(static_cast<long>(b % 20001) - 10000, 4096)},
                     mpq_class(1, static_cast<long>(k))});
  }
  return measures::DiscreteMeasure::from_atoms(std::move(atoms));
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  std::printf("OpenMP threads: %d%s\n", omp_get_max_threads(), quick ? " (quick)" : "");
  bool ok = true;

  {
    complex::JuliaOptions o;
    o.resolution = quick ? 7 : 9;
    o.max_iter = 64;
    const auto f = complex::PolySpec::quadratic(ComplexRational{mpq_class(-1), mpq_class(0)});
    complex::BoxGrid a;
    complex::BoxGrid b;
    o.parallel = false;
    const double ts = seconds([&] { a = complex::filled_julia_approx(f, o); });
    o.parallel = true;
    const double tp = seconds([&] { b = complex::filled_julia_approx(f, o); });
    ok &= report("julia box kernel", ts, tp, a.cls == b.cls && a.steps == b.steps);
    o.resolution = 4;
    complex::BoxGrid ref;
    const double tr = seconds([&] { ref = complex::filled_julia_reference(f, o, 80); });
    std::printf("%-28s %9.4f s at r = 4 (multiprecision reference)\n", "julia dyadic reference", tr);
  }
  {
    const auto f = metric::IntervalMap::doubling();
    const std::size_t grid = quick ? 1u << 14 : 1u << 18;
    metric::SeparatedSetReport a;
    metric::SeparatedSetReport b;
    omp_set_num_threads(1);
    const double ts = seconds([&] { a = metric::separated_count(f, 14, mpq_class(1, 4), grid); });
    omp_set_num_threads(omp_get_num_procs());
    const double tp = seconds([&] { b = metric::separated_count(f, 14, mpq_class(1, 4), grid); });
    ok &= report("separated orbits", ts, tp, a.count == b.count && a.witnesses == b.witnesses);
  }
  {
    const auto f = metric::IntervalMap::doubling();
    const std::size_t n = quick ? 100000 : 1000000;
    const auto sample = metric::sample_orbit(f, metric::random_start(3, n + 128), n);
    metric::KatokBrinReport a;
    metric::KatokBrinReport b;
    const double ts = seconds([&] { a = metric::katok_brin(sample, mpq_class(1, 4), 12, false); });
    const double tp = seconds([&] { b = metric::katok_brin(sample, mpq_class(1, 4), 12, true); });
    ok &= report("Katok-Brin returns", ts, tp, a.hits == b.hits);
  }
  {
    const std::size_t k = quick ? 500 : 2000;
    const auto mu = random_measure(1, k);
    const auto nu = random_measure(2, k);
    measures::CostMatrix a;
    measures::CostMatrix b;
    const double ts = seconds([&] { a = measures::assemble_costs(mu, nu, measures::MetricKind::Spherical, 40, false); });
    const double tp = seconds([&] { b = measures::assemble_costs(mu, nu, measures::MetricKind::Spherical, 40, true); });
    ok &= report("transport cost assembly", ts, tp, a.costs == b.costs && a.scale == b.scale);
  }
  {
    complex::BLOptions o;
    o.depth = quick ? 8 : 12;
    o.z0 = ComplexRational{mpq_class(2), mpq_class(0)};
    const auto f = complex::PolySpec::quadratic(ComplexRational{mpq_class(-1, 4), mpq_class(1, 2)});
    complex::BLResult a;
    complex::BLResult b;
    o.parallel = false;
    const double ts = seconds([&] { a = complex::bl_measure_approx(f, o); });
    o.parallel = true;
    const double tp = seconds([&] { b = complex::bl_measure_approx(f, o); });
    bool same = a.measure.size() == b.measure.size();
    for (std::size_t i = 0; same && i < a.measure.size(); ++i) {
      same = a.measure.atoms()[i].point == b.measure.atoms()[i].point;
    }
    ok &= report("preimage tree", ts, tp, same);
  }
  return ok ? 0 : 1;
}
