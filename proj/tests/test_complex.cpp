#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dyncert/complex/bl_measure.hpp"
#include "dyncert/complex/julia.hpp"
#include "dyncert/complex/periodic.hpp"
#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"
#include "dyncert/measures/transport.hpp"

using namespace dyncert;
using namespace dyncert::complex;

namespace {

mpq_class q(long p, long d = 1) {
  mpq_class r(p, d);
  r.canonicalize();
  return r;
}

ComplexRational cr(long re, long im = 0, long den = 1) { return {q(re, den), q(im, den)}; }

cdouble approx(const ComplexBox& b) { return {b.re().midpoint().to_double(), b.im().midpoint().to_double()}; }

bool box_contains(const ComplexBox& b, cdouble z) {
  return b.re().lo().to_double_down() <= z.real() && z.real() <= b.re().hi().to_double_up() &&
         b.im().lo().to_double_down() <= z.imag() && z.imag() <= b.im().hi().to_double_up();
}

mpq_class norm2(const ComplexRational& z) { return z.re * z.re + z.im * z.im; }

using ldc = std::complex<long double>;

// Orbit of z under w^2 + c in long double; true if it stays in |w| <= 2 for `steps`.
bool stays_bounded(ldc z, ldc c, int steps) {
  for (int i = 0; i < steps; ++i) {
    if (std::norm(z) > 4.0L) return false;
    z = z * z + c;
  }
  return std::norm(z) <= 4.0L;
}

}  // namespace

TEST_CASE("escape radius") {
  CHECK(escape_radius(PolySpec::quadratic(cr(0))) == Dyadic(2));
  CHECK(escape_radius(PolySpec::quadratic(cr(-2))) == Dyadic(4));
  CHECK(escape_radius(PolySpec::monomial(3)) == Dyadic(2));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coord(-4000, 4000);
  for (const auto& c : {cr(-2), cr(1, 2, 3), cr(-3, 5, 4)}) {
    const PolySpec f = PolySpec::quadratic(c);
    const mpq_class r = escape_radius(f).to_rational();
    int tested = 0;
    while (tested < 1000) {
      const ComplexRational z{q(coord(rng), 300), q(coord(rng), 300)};
      if (norm2(z) < r * r) continue;
      ++tested;
      CHECK(norm2(f.eval_exact(z)) >= 4 * norm2(z));
    }
  }
}

TEST_CASE("box polynomial with a z^{d-1} term") {
  const PolySpec f = PolySpec::from_rationals({cr(1), cr(0)});  // z^2 + z
  const BoxPolynomial b = f.boxes(60);
  REQUIRE(b.top.has_value());
  const WorkPrecision p{60};
  const ComplexRational z = cr(3, -2, 7);
  const ComplexBox img = box_image(b, ComplexBox::around(z, p), p);
  CHECK(img.contains(f.eval_exact(z)));
  const ComplexBox der = box_derivative(b, ComplexBox::around(z, p), p);
  CHECK(der.contains(ComplexRational{2 * z.re + 1, 2 * z.im}));
  CHECK_FALSE(PolySpec::quadratic(cr(1)).boxes(60).top.has_value());
}

TEST_CASE("preimages") {
  const mpq_class tol = q(1, 1L << 40);
  {
    const auto s = preimages(PolySpec::quadratic(cr(0)), cr(4), tol);
    REQUIRE(s.roots.size() == 2);
    CHECK(s.residual < tol);
    std::vector<double> re{s.roots[0].re.get_d(), s.roots[1].re.get_d()};
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(re[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.multiplicity == std::vector<std::size_t>{1, 1});
  }
  {
    const auto s = preimages(PolySpec::quadratic(cr(0)), cr(0), tol);
    CHECK(s.multiplicity == std::vector<std::size_t>{2, 2});
    for (const auto& w : s.roots) CHECK(norm2(w) < tol);
  }
  for (const auto& [f, z] : std::vector<std::pair<PolySpec, ComplexRational>>{
           {PolySpec::quadratic(cr(-2)), cr(2)},
           {PolySpec::quadratic(cr(1, 1, 3)), cr(-1, 2, 5)},
           {PolySpec::from_rationals({cr(0), cr(-1), cr(1, 1, 2)}), cr(2, 0)},
           {PolySpec::monomial(5), cr(0, 1)}}) {
    const auto s = preimages(f, z, tol);
    REQUIRE(s.roots.size() == static_cast<std::size_t>(f.degree()));
    CHECK(s.residual < tol);
    ComplexRational sum{0, 0};
    for (const auto& w : s.roots) {
      CHECK(residual_bound(f, w, z, 96) < tol);
      sum.re += w.re;
      sum.im += w.im;
    }
    // Roots of f(w) - z sum to -c_{d-1} = 0; each root is off by at most tol / |f'|.
    CHECK(std::abs(sum.re.get_d()) < 1e-9);
    CHECK(std::abs(sum.im.get_d()) < 1e-9);
  }
  CHECK_THROWS_AS(preimages(PolySpec::quadratic(cr(0)), cr(1), 0), DynError);
}

TEST_CASE("periodic points of z^2") {
  const auto r = classify_periodic(PolySpec::quadratic(cr(0)), 1);
  REQUIRE(r.size() == 2);
  CHECK(box_contains(r[0].point, 0.0));
  CHECK(r[0].cls == PeriodicClass::Attracting);
  CHECK(r[0].multiplier.contains(cr(0)));
  CHECK(box_contains(r[1].point, 1.0));
  CHECK(r[1].cls == PeriodicClass::Repelling);
  CHECK(r[1].multiplier.contains(cr(2)));
  CHECK(r[0].isolated);
  CHECK(r[1].isolated);
}

TEST_CASE("parabolic fixed point of z^2 + z") {
  const auto r = classify_periodic(PolySpec::from_rationals({cr(1), cr(0)}), 1);
  REQUIRE(r.size() == 1);
  CHECK(box_contains(r[0].point, 0.0));
  CHECK(r[0].multiplier.contains(cr(1)));
  CHECK(r[0].cls == PeriodicClass::NeutralParabolicSuspected);
}

TEST_CASE("period-2 cycle of z^2 - 1") {
  const auto r = classify_periodic(PolySpec::quadratic(cr(-1)), 2);
  REQUIRE(r.size() == 2);
  CHECK(box_contains(r[0].point, -1.0));
  CHECK(box_contains(r[1].point, 0.0));
  for (const auto& p : r) {
    CHECK(p.cls == PeriodicClass::Attracting);
    CHECK(p.multiplier.contains(cr(0)));
  }
}

TEST_CASE("periodic points agree with the quadratic formula") {
  for (const auto& c : {cr(-3, 1, 4), cr(1, 1, 3), cr(0, 1), cr(-2)}) {
    const ldc cc(c.re.get_d(), c.im.get_d());
    const ldc disc = std::sqrt(1.0L - 4.0L * cc);
    const ldc fixed[2] = {(1.0L + disc) / 2.0L, (1.0L - disc) / 2.0L};
    const ldc cycle[2] = {(-1.0L + std::sqrt(-3.0L - 4.0L * cc)) / 2.0L, (-1.0L - std::sqrt(-3.0L - 4.0L * cc)) / 2.0L};
    const auto r1 = classify_periodic(PolySpec::quadratic(c), 1);
    REQUIRE(r1.size() == 2);
    for (const auto& a : fixed) {
      bool found = false;
      for (const auto& p : r1) {
        if (std::abs(approx(p.point) - cdouble(a)) < 1e-9) {
          found = true;
          CHECK(std::abs(approx(p.multiplier) - cdouble(2.0L * a)) < 1e-9);
          const double m = std::abs(2.0 * cdouble(a));
          if (m < 0.999) CHECK(p.cls == PeriodicClass::Attracting);
          if (m > 1.001) CHECK(p.cls == PeriodicClass::Repelling);
        }
      }
      CHECK(found);
    }
    const auto r2 = classify_periodic(PolySpec::quadratic(c), 2);
    REQUIRE(r2.size() == 2);
    for (const auto& a : cycle) {
      bool found = false;
      for (const auto& p : r2) found = found || std::abs(approx(p.point) - cdouble(a)) < 1e-9;
      CHECK(found);
    }
    // Exact periods 3 and 4 of a quadratic: 6 and 12 points.
    CHECK(classify_periodic(PolySpec::quadratic(c), 3).size() == 6);
    CHECK(classify_periodic(PolySpec::quadratic(c), 4).size() == 12);
  }
  CHECK_THROWS_AS(classify_periodic(PolySpec::quadratic(cr(0)), 17), DynError);
}

TEST_CASE("classification is stable under doubled precision") {
  for (const auto& c : {cr(0), cr(-1), cr(1, 2, 5), cr(-3, 1, 4), cr(-7, 1, 4), cr(0, 1)}) {
    const PolySpec f = PolySpec::quadratic(c);
    for (int k = 1; k <= 3; ++k) {
      const auto lo = classify_periodic(f, k, 53);
      const auto hi = classify_periodic(f, k, 106);
      REQUIRE(lo.size() == hi.size());
      for (std::size_t i = 0; i < lo.size(); ++i) {
        CHECK(lo[i].point.intersects(hi[i].point));
        const bool certified = lo[i].cls == PeriodicClass::Attracting || lo[i].cls == PeriodicClass::Repelling;
        if (certified) CHECK(hi[i].cls == lo[i].cls);
      }
    }
  }
}

TEST_CASE("attracting traps") {
  const WorkPrecision p{80};
  for (const auto& [c, k, count] : std::vector<std::tuple<ComplexRational, int, std::size_t>>{
           {cr(0), 1, 1}, {cr(-1), 2, 2}, {cr(-1, 1, 10), 1, 1}, {cr(-2), 1, 0}}) {
    const PolySpec f = PolySpec::quadratic(c);
    const auto traps = attracting_traps(f, 3);
    CHECK(traps.size() == count);
    const BoxPolynomial b = f.boxes(90);
    for (const auto& t : traps) {
      CHECK(t.period == k);
      ComplexBox z = t.box;
      for (int i = 0; i < t.period; ++i) z = box_image(b, z, p);
      CHECK(t.box.contains_strictly(z));
    }
  }
}

TEST_CASE("filled Julia set of z^2") {
  const PolySpec f = PolySpec::quadratic(cr(0));
  JuliaOptions o;
  o.resolution = 8;
  o.max_iter = 64;
  const BoxGrid g = filled_julia_approx(f, o);
  CHECK(g.side == 1024);
  const WorkPrecision p{80};
  for (std::size_t r = 0; r < g.side; ++r) {
    for (std::size_t c = 0; c < g.side; ++c) {
      const ComplexBox b = g.box(r, c);
      const mpq_class near = b.re().mignitude().to_rational() * b.re().mignitude().to_rational() +
                             b.im().mignitude().to_rational() * b.im().mignitude().to_rational();
      const mpq_class far = b.re().magnitude().to_rational() * b.re().magnitude().to_rational() +
                            b.im().magnitude().to_rational() * b.im().magnitude().to_rational();
      if (g.at(r, c) == BoxClass::Escaping) CHECK(near > 1);
      if (g.at(r, c) == BoxClass::Interior) CHECK(far < 1);
      const double cx = approx(b).real();
      const double cy = approx(b).imag();
      const double rad = std::hypot(cx, cy);
      if (rad > 1.0 + 1.0 / 16) CHECK(g.at(r, c) == BoxClass::Escaping);
      if (rad < 1.0 - 1.0 / 16) CHECK(g.at(r, c) == BoxClass::Interior);
    }
  }
  (void)p;
}

TEST_CASE("boundary diagnostic") {
  BoxGrid g;
  g.side = 3;
  g.cls = {BoxClass::Escaping, BoxClass::Escaping, BoxClass::Escaping,  //
           BoxClass::Unknown,  BoxClass::Unknown,  BoxClass::Unknown,   //
           BoxClass::Unknown,  BoxClass::Interior, BoxClass::Unknown};
  // Boxes 3, 4, 5 see both classes; 6 and 8 see no Escaping box.
  CHECK(g.boundary_fraction() == doctest::Approx(3.0 / 5.0));
  g.cls[7] = BoxClass::Unknown;
  CHECK(g.boundary_fraction() == 0.0);
  g.cls[8] = BoxClass::Interior;
  // Only boxes 4 and 5 are adjacent to box 8 and to the top row.
  CHECK(g.boundary_fraction() == doctest::Approx(2.0 / 5.0));
}

TEST_CASE("Julia soundness against bounded orbits") {
  for (const auto& c : {cr(0), cr(-1)}) {
    const PolySpec f = PolySpec::quadratic(c);
    JuliaOptions o;
    o.resolution = 6;
    const BoxGrid g = filled_julia_approx(f, o);
    const ldc cc(c.re.get_d(), c.im.get_d());
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<long double> u(-2.0L, 2.0L);
    int bounded = 0;
    int escaped = 0;
    for (int i = 0; i < 20000; ++i) {
      const ldc z(u(rng), u(rng));
      const double h = g.cell();
      const auto col = static_cast<std::size_t>(std::floor((static_cast<double>(z.real()) + g.corner()) / h));
      const auto row = static_cast<std::size_t>(std::floor((g.corner() - static_cast<double>(z.imag())) / h));
      if (row >= g.side || col >= g.side) continue;
      if (stays_bounded(z, cc, 1000)) {
        ++bounded;
        CHECK(g.at(row, col) != BoxClass::Escaping);
      } else {
        ++escaped;
        CHECK(g.at(row, col) != BoxClass::Interior);
      }
    }
    CHECK(bounded > 1000);
    CHECK(escaped > 1000);
  }
}

TEST_CASE("parallel, serial and multiprecision grids") {
  for (const auto& c : {cr(-1), cr(-1, 1, 8), cr(1, 1, 4)}) {
    const PolySpec f = PolySpec::quadratic(c);
    JuliaOptions o;
    o.resolution = 5;
    o.max_iter = 40;
    const BoxGrid par = filled_julia_approx(f, o);
    o.parallel = false;
    const BoxGrid ser = filled_julia_approx(f, o);
    CHECK(par.cls == ser.cls);
    CHECK(par.steps == ser.steps);
    const BoxGrid ref = filled_julia_reference(f, o, 80);
    REQUIRE(ref.side == par.side);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < par.cls.size(); ++i) {
      const bool clash = (par.cls[i] == BoxClass::Escaping && ref.cls[i] == BoxClass::Interior) ||
                         (par.cls[i] == BoxClass::Interior && ref.cls[i] == BoxClass::Escaping);
      CHECK_FALSE(clash);
      differ += par.cls[i] != ref.cls[i] ? 1 : 0;
    }
    CHECK(differ * 50 < par.cls.size());
  }
}

TEST_CASE("Cantor Julia set for c = 3") {
  JuliaOptions o;
  o.resolution = 9;
  o.max_iter = 64;
  const BoxGrid g = filled_julia_approx(PolySpec::quadratic(cr(3)), o);
  CHECK(g.count(BoxClass::Interior) == 0);
  const double area = static_cast<double>(g.count(BoxClass::Unknown)) * g.cell() * g.cell();
  CHECK(area < 0.1);
}

TEST_CASE("window boxes beyond the escape radius escape at step 0") {
  JuliaOptions o;
  o.resolution = 4;
  const PolySpec f = PolySpec::quadratic(cr(-2));
  const BoxGrid g = filled_julia_approx(f, o);
  const mpq_class r2 = escape_radius(f).to_rational() * escape_radius(f).to_rational();
  for (std::size_t r = 0; r < g.side; ++r) {
    for (std::size_t c = 0; c < g.side; ++c) {
      const ComplexBox b = g.box(r, c);
      const mpq_class m = b.re().mignitude().to_rational();
      const mpq_class n = b.im().mignitude().to_rational();
      if (m * m + n * n >= r2) {
        CHECK(g.at(r, c) == BoxClass::Escaping);
        CHECK(g.steps[g.index(r, c)] == 0);
      }
    }
  }
}

TEST_CASE("grid export") {
  JuliaOptions o;
  o.resolution = 3;
  const PolySpec f = PolySpec::quadratic(cr(0));
  const BoxGrid g = filled_julia_approx(f, o);
  const std::string pgm = grid_pgm(g);
  const std::string header = "P5\n32 32\n255\n";
  CHECK(pgm.substr(0, header.size()) == header);
  CHECK(pgm.size() == header.size() + 32 * 32);
  CHECK(static_cast<unsigned char>(pgm[header.size()]) == 255);
  const auto j = grid_json(g, f);
  CHECK(j["resolution"] == 3);
  CHECK(j["counts"]["escaping"].get<std::size_t>() + j["counts"]["unknown"].get<std::size_t>() +
            j["counts"]["interior"].get<std::size_t>() ==
        32 * 32);
  CHECK(j["window"]["re"][1] == "2");
}

TEST_CASE("Brolin-Lyubich measure of z^2") {
  const PolySpec f = PolySpec::quadratic(cr(0));
  BLOptions o;
  o.depth = 12;
  o.z0 = cr(2);
  const BLResult r = bl_measure_approx(f, o);
  REQUIRE(r.measure.size() == 4096);
  const double radius = std::pow(2.0, 1.0 / 4096);
  std::vector<double> angles;
  for (const auto& a : r.measure.atoms()) {
    CHECK(a.weight == q(1, 4096));
    const cdouble z(a.point.re.get_d(), a.point.im.get_d());
    CHECK(std::abs(std::abs(z) - radius) < 1e-9);
    angles.push_back(std::arg(z));
  }
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 1; i < angles.size(); ++i) CHECK(angles[i] - angles[i - 1] == doctest::Approx(2 * M_PI / 4096).epsilon(1e-6));
  CHECK(pushforward_residual(f, r.tree) < q(1, 1000000000));
  const auto w = measures::wasserstein1(r.measure, measures::uniform_circle(4096), measures::MetricKind::Planar);
  CHECK(w.value + w.error < 0.01);
}

TEST_CASE("depth one is the preimage set") {
  const PolySpec f = PolySpec::quadratic(cr(-1, 1, 2));
  BLOptions o;
  o.depth = 1;
  o.z0 = cr(1, 1, 3);
  const BLResult r = bl_measure_approx(f, o);
  const auto s = preimages(f, *o.z0, o.tol);
  REQUIRE(r.measure.size() == 2);
  std::vector<ComplexRational> expected = s.roots;
  std::sort(expected.begin(), expected.end(),
            [](const auto& a, const auto& b) { return a.re < b.re || (a.re == b.re && a.im < b.im); });
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.measure.atoms()[i].point == expected[i]);
    CHECK(r.measure.atoms()[i].weight == q(1, 2));
  }
}

TEST_CASE("Monte Carlo backward orbits") {
  const PolySpec f = PolySpec::quadratic(cr(0));
  BLOptions full;
  full.depth = 10;
  full.z0 = cr(2);
  BLOptions mc = full;
  mc.sampling = Sampling::MonteCarlo;
  mc.paths = 1u << 14;
  mc.seed = 7;
  const BLResult a = bl_measure_approx(f, full);
  const BLResult b = bl_measure_approx(f, mc);
  CHECK(pushforward_residual(f, b.tree) < mc.tol);
  const auto w = measures::wasserstein1(a.measure, b.measure, measures::MetricKind::Planar);
  CHECK(w.value + w.error < 0.05);
  mc.parallel = false;
  const BLResult c = bl_measure_approx(f, mc);
  REQUIRE(c.measure.size() == b.measure.size());
  for (std::size_t i = 0; i < c.measure.size(); ++i) {
    CHECK(c.measure.atoms()[i].point == b.measure.atoms()[i].point);
    CHECK(c.measure.atoms()[i].weight == b.measure.atoms()[i].weight);
  }
  mc.seed = 8;
  const BLResult d = bl_measure_approx(f, mc);
  CHECK(d.leaf_of_sample != b.leaf_of_sample);
}

TEST_CASE("exceptional point") {
  BLOptions o;
  o.z0 = cr(0);
  CHECK_THROWS_AS(bl_measure_approx(PolySpec::monomial(2), o), DynError);
  o.depth = 3;
  CHECK_NOTHROW(bl_measure_approx(PolySpec::quadratic(cr(-1)), o));
  BLOptions dflt;
  dflt.depth = 2;
  CHECK(bl_measure_approx(PolySpec::quadratic(cr(0)), dflt).tree.root == cr(3));
}

TEST_CASE("Bryuno sums for the golden mean") {
  const RealOracle golden = RealOracle::affine(RealOracle::sqrt_of(5), q(1, 2), q(-1, 2));
  const BryunoReport r = bryuno_partial_sums(golden, 10);
  std::vector<mpz_class> fib{1, 1};
  while (fib.size() < 11) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  CHECK(r.denominators == fib);
  for (const auto& a : r.partial_quotients) CHECK(a == 1);
  double s = 0.0;
  for (std::size_t n = 0; n < 10; ++n) {
    s += std::log(fib[n + 1].get_d()) / fib[n].get_d();
    CHECK(r.partial_sums[n] == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK(r.precision_used >= 64);
}

TEST_CASE("Bryuno rational detection") {
  try {
    bryuno_partial_sums(RealOracle::constant(q(1, 2)), 5);
    FAIL("expected RationalDetected");
  } catch (const DynError& e) {
    CHECK(e.code() == Errc::RationalDetected);
  }
  const RealOracle noisy = RealOracle::from_query([](int) { return q(3, 7); });
  try {
    bryuno_partial_sums(noisy, 6, 512);
    FAIL("expected RationalDetected");
  } catch (const DynError& e) {
    CHECK(e.code() == Errc::RationalDetected);
  }
  const RealOracle golden = RealOracle::affine(RealOracle::sqrt_of(5), q(1, 2), q(-1, 2));
  try {
    bryuno_partial_sums(golden, 200, 64);
    FAIL("expected PrecisionExhausted");
  } catch (const DynError& e) {
    CHECK(e.code() == Errc::PrecisionExhausted);
  }
}

TEST_CASE("Bryuno sums for a fast-growing synthetic expansion") {
  // a_{n+1} chosen so that q_{n+1} is about 2^{q_n}: every term is about log 2.
  std::vector<mpz_class> a;
  mpz_class prev = 0;
  mpz_class cur = 1;
  for (int n = 0; n < 6; ++n) {
    mpz_class target = mpz_class(1) << static_cast<mp_bitcnt_t>(cur.get_ui());
    mpz_class an = target / cur;
    if (an < 1) an = 1;
    a.push_back(an);
    const mpz_class next = an * cur + prev;
    prev = cur;
    cur = next;
    if (cur > mpz_class(1) << 20) break;
  }
  mpq_class theta = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) theta = 1 / (*it + theta);
  const auto terms = static_cast<int>(a.size());
  const BryunoReport r = bryuno_partial_sums(RealOracle::constant(theta), terms);
  CHECK(r.partial_quotients == a);
  for (int n = 1; n < terms; ++n) CHECK(r.partial_sums[n] > r.partial_sums[n - 1] + 0.3);
  CHECK(r.partial_sums.back() > 0.4 * terms);
}
