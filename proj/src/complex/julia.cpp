#include "dyncert/complex/julia.hpp"

#include <cmath>

#include "dyncert/complex/periodic.hpp"
#include "dyncert/core/error.hpp"
#include "dyncert/core/float_box.hpp"
#include "dyncert/core/numeric.hpp"

namespace dyncert::complex {

ComplexBox BoxGrid::box(std::size_t row, std::size_t col) const {
  const Dyadic h = Dyadic(1).ldexp(-resolution);
  const Dyadic x0 = -half_width + Dyadic(static_cast<long>(col)) * h;
  const Dyadic y1 = half_width - Dyadic(static_cast<long>(row)) * h;
  return {Interval(x0, x0 + h), Interval(y1 - h, y1)};
}

double BoxGrid::cell() const { return std::ldexp(1.0, -resolution); }
double BoxGrid::corner() const { return half_width.to_double(); }

std::size_t BoxGrid::count(BoxClass c) const {
  std::size_t n = 0;
  for (auto v : cls) n += v == c ? 1 : 0;
  return n;
}

double BoxGrid::boundary_fraction() const {
  std::size_t unknown = 0;
  std::size_t both = 0;
  const auto s = static_cast<long>(side);
  for (long r = 0; r < s; ++r) {
    for (long c = 0; c < s; ++c) {
      if (cls[index(r, c)] != BoxClass::Unknown) continue;
      ++unknown;
      bool esc = false;
      bool in = false;
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          const long rr = r + dr;
          const long cc = c + dc;
          if (rr < 0 || cc < 0 || rr >= s || cc >= s) continue;
          const BoxClass v = cls[index(rr, cc)];
          esc |= v == BoxClass::Escaping;
          in |= v == BoxClass::Interior;
        }
      }
      both += esc && in ? 1 : 0;
    }
  }
  return unknown == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(unknown);
}

namespace {

struct Setup {
  Dyadic radius;  // escape radius
  Dyadic half_width;
  std::size_t side = 0;
  std::vector<TrapBox> traps;
};

Setup prepare(const PolySpec& f, const JuliaOptions& o) {
  if (o.resolution < 2 || o.resolution > 14) throw DynError(Errc::InvalidArgument, "resolution must lie in [2, 14]");
  if (o.max_iter < 1) throw DynError(Errc::InvalidArgument, "max_iter must be positive");
  Setup s;
  s.radius = escape_radius(f);
  s.half_width = s.radius.round_up(o.resolution);
  const mpz_class cells = s.half_width.ldexp(o.resolution + 1).to_rational().get_num();
  if (cells * cells > mpz_class(1) << 26) throw DynError(Errc::InvalidArgument, "grid exceeds 2^26 boxes");
  s.side = cells.get_ui();
  if (o.trap_period > 0) s.traps = attracting_traps(f, o.trap_period);
  return s;
}

BoxGrid empty_grid(const Setup& s, const JuliaOptions& o) {
  BoxGrid g;
  g.resolution = o.resolution;
  g.half_width = s.half_width;
  g.side = s.side;
  g.cls.assign(s.side * s.side, BoxClass::Unknown);
  g.steps.assign(s.side * s.side, -1);
  return g;
}

FloatInterval to_float(const Interval& i) { return {i.lo().to_double_down(), i.hi().to_double_up()}; }
FloatBox to_float(const ComplexBox& b) { return {to_float(b.re()), to_float(b.im())}; }

// Inner double approximation; contained in the original box.
FloatBox shrink(const ComplexBox& b) {
  return {{b.re().lo().to_double_up(), b.re().hi().to_double_down()},
          {b.im().lo().to_double_up(), b.im().hi().to_double_down()}};
}

struct FloatPoly {
  int degree = 2;
  bool has_top = false;
  FloatBox top;
  std::vector<FloatBox> lower;

  FloatBox image(const FloatBox& z) const {
    FloatBox acc = has_top ? (z + top) * z : square(z);
    for (std::size_t i = 0; i < lower.size(); ++i) {
      acc = acc + lower[i];
      if (i + 1 < lower.size()) acc = acc * z;
    }
    return acc;
  }
};

bool inside(const FloatBox& z, const FloatBox& t) {
  return t.re.lo < z.re.lo && z.re.hi < t.re.hi && t.im.lo < z.im.lo && z.im.hi < t.im.hi;
}

}  // namespace

BoxGrid filled_julia_approx(const PolySpec& f, const JuliaOptions& o) {
  const Setup s = prepare(f, o);
  BoxGrid g = empty_grid(s, o);

  const BoxPolynomial bp = f.boxes(60);
  FloatPoly fp;
  fp.degree = bp.degree;
  fp.has_top = bp.top.has_value();
  if (bp.top) fp.top = to_float(*bp.top);
  for (const auto& c : bp.lower) fp.lower.push_back(to_float(c));
  std::vector<FloatBox> traps;
  for (const auto& t : s.traps) traps.push_back(shrink(t.box));

  const double r2 = s.radius.to_double_down() * s.radius.to_double_down();  // R has 8 fractional bits: exact
  const double big = 64.0 * r2;
  const double h = g.cell();
  const double x0 = -g.corner();
  const auto side = static_cast<long>(g.side);

#pragma omp parallel for schedule(dynamic, 4) if (o.parallel)
  for (long row = 0; row < side; ++row) {
    const double y1 = g.corner() - static_cast<double>(row) * h;
    for (long col = 0; col < side; ++col) {
      const double xl = x0 + static_cast<double>(col) * h;
      FloatBox z{{xl, xl + h}, {y1 - h, y1}};
      const std::size_t idx = g.index(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
      for (int step = 0; step <= o.max_iter; ++step) {
        if (min_norm2_down(z) >= r2) {
          g.cls[idx] = BoxClass::Escaping;
          g.steps[idx] = step;
          break;
        }
        bool trapped = false;
        for (const auto& t : traps) trapped = trapped || inside(z, t);
        if (trapped) {
          g.cls[idx] = BoxClass::Interior;
          break;
        }
        if (step == o.max_iter) break;
        z = fp.image(z);
        if (!(z.re.width() < big && z.im.width() < big)) break;  // also catches NaN
      }
    }
  }
  return g;
}

BoxGrid filled_julia_reference(const PolySpec& f, const JuliaOptions& o, long bits) {
  const Setup s = prepare(f, o);
  BoxGrid g = empty_grid(s, o);
  const WorkPrecision p{bits};
  const BoxPolynomial bp = f.boxes(bits + 4);
  const Dyadic r2 = s.radius * s.radius;
  const Dyadic big = r2.ldexp(6);
  for (std::size_t row = 0; row < g.side; ++row) {
    for (std::size_t col = 0; col < g.side; ++col) {
      ComplexBox z = g.box(row, col);
      const std::size_t idx = g.index(row, col);
      for (int step = 0; step <= o.max_iter; ++step) {
        const Dyadic m = z.re().mignitude();
        const Dyadic n = z.im().mignitude();
        if (m * m + n * n >= r2) {
          g.cls[idx] = BoxClass::Escaping;
          g.steps[idx] = step;
          break;
        }
        bool trapped = false;
        for (const auto& t : s.traps) trapped = trapped || t.box.contains_strictly(z);
        if (trapped) {
          g.cls[idx] = BoxClass::Interior;
          break;
        }
        if (step == o.max_iter) break;
        z = box_image(bp, z, p);
        if (z.re().width() >= big || z.im().width() >= big) break;
      }
    }
  }
  return g;
}

std::string grid_pgm(const BoxGrid& grid) {
  std::string out = "P5\n" + std::to_string(grid.side) + " " + std::to_string(grid.side) + "\n255\n";
  out.reserve(out.size() + grid.cls.size());
  for (auto c : grid.cls) {
    switch (c) {
      case BoxClass::Escaping:
        out.push_back(static_cast<char>(255));
        break;
      case BoxClass::Unknown:
        out.push_back(static_cast<char>(128));
        break;
      case BoxClass::Interior:
        out.push_back(static_cast<char>(0));
        break;
    }
  }
  return out;
}

nlohmann::json grid_json(const BoxGrid& grid, const PolySpec& f) {
  nlohmann::json j;
  const std::string r = rational_string(grid.half_width.to_rational());
  j["polynomial"] = f.describe();
  j["window"] = {{"re", {"-" + r, r}}, {"im", {"-" + r, r}}, {"half_width", grid.corner()}};
  j["resolution"] = grid.resolution;
  j["side"] = grid.side;
  j["counts"] = {{"escaping", grid.count(BoxClass::Escaping)},
                 {"unknown", grid.count(BoxClass::Unknown)},
                 {"interior", grid.count(BoxClass::Interior)}};
  j["boundary_fraction"] = grid.boundary_fraction();
  return j;
}

}  // namespace dyncert::complex
