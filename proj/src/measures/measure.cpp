#include "dyncert/measures/measure.hpp"

#include <algorithm>

#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"

namespace dyncert::measures {

const char* metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::Spherical:
      return "spherical";
    case MetricKind::Planar:
      return "planar";
    case MetricKind::Circle:
      return "circle";
  }
  return "?";
}

MetricKind parse_metric(const std::string& name) {
  if (name == "spherical") return MetricKind::Spherical;
  if (name == "planar") return MetricKind::Planar;
  if (name == "circle") return MetricKind::Circle;
  throw DynError(Errc::ParseError, "unknown metric '" + name + "'");
}

namespace {

bool point_less(const ComplexRational& a, const ComplexRational& b) {
  return a.re != b.re ? a.re < b.re : a.im < b.im;
}

std::vector<Atom> merged(std::vector<Atom> atoms, const mpq_class& tol) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return point_less(a.point, b.point); });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  if (sgn(tol) <= 0) {
    for (auto& a : atoms) {
      if (!out.empty() && out.back().point == a.point) {
        out.back().weight += a.weight;
      } else {
        out.push_back(std::move(a));
      }
    }
    return out;
  }
  const mpq_class tol2 = tol * tol;
  std::size_t window = 0;  // first representative with re >= current re - tol
  for (auto& a : atoms) {
    while (window < out.size() && out[window].point.re < a.point.re - tol) ++window;
    bool absorbed = false;
    for (std::size_t r = window; r < out.size(); ++r) {
      const mpq_class dx = out[r].point.re - a.point.re;
      const mpq_class dy = out[r].point.im - a.point.im;
      if (dx * dx + dy * dy <= tol2) {
        out[r].weight += a.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) out.push_back(std::move(a));
  }
  return out;
}

// Enclosure of 2 sqrt(r) with absolute width <= 2^-bits, for 0 <= r <= 4.
Interval twice_sqrt(const mpq_class& r, long bits) {
  const long prec = bits + 4;
  return {sqrt_lower(r, prec).ldexp(1).round_down(bits + 2), sqrt_upper(r, prec).ldexp(1).round_up(bits + 2)};
}

}  // namespace

DiscreteMeasure DiscreteMeasure::unchecked(std::vector<Atom> atoms, const mpq_class& merge_tol) {
  DiscreteMeasure m;
  m.atoms_ = merged(std::move(atoms), merge_tol);
  return m;
}

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<Atom> atoms, const mpq_class& merge_tol) {
  DiscreteMeasure m = unchecked(std::move(atoms), merge_tol);
  m.validate();
  return m;
}

DiscreteMeasure DiscreteMeasure::uniform(const std::vector<ComplexRational>& points, const mpq_class& merge_tol) {
  if (points.empty()) throw DynError(Errc::InfeasibleWeights, "measure needs at least one atom");
  const mpq_class w(1, points.size());
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (const auto& p : points) atoms.push_back({p, w});
  return from_atoms(std::move(atoms), merge_tol);
}

DiscreteMeasure DiscreteMeasure::dirac(const ComplexRational& z) { return from_atoms({{z, 1}}); }

mpq_class DiscreteMeasure::total_mass() const {
  mpq_class total = 0;
  for (const auto& a : atoms_) total += a.weight;
  return total;
}

void DiscreteMeasure::validate() const {
  if (atoms_.empty()) throw DynError(Errc::InfeasibleWeights, "measure has no atoms");
  for (const auto& a : atoms_) {
    if (sgn(a.weight) <= 0) throw DynError(Errc::InfeasibleWeights, "atom weight must be positive");
  }
  const mpq_class total = total_mass();
  if (total != 1) {
    throw DynError(Errc::InfeasibleWeights, "weights sum to " + total.get_str() + ", not 1");
  }
}

Interval metric_eval(MetricKind m, const ComplexRational& a, const ComplexRational& b, long bits) {
  const mpq_class dx = a.re - b.re;
  const mpq_class dy = a.im - b.im;
  switch (m) {
    case MetricKind::Planar: {
      const mpq_class d2 = dx * dx + dy * dy;
      // sqrt relative precision: value <= 2^size, so bits + size + 2 is enough.
      const long size = std::max<long>(0, static_cast<long>(mpz_sizeinbase(d2.get_num().get_mpz_t(), 2)) -
                                              static_cast<long>(mpz_sizeinbase(d2.get_den().get_mpz_t(), 2)));
      const long prec = bits + size / 2 + 4;
      return {sqrt_lower(d2, prec).round_down(bits + 2), sqrt_upper(d2, prec).round_up(bits + 2)};
    }
    case MetricKind::Spherical: {
      const mpq_class na = 1 + a.re * a.re + a.im * a.im;
      const mpq_class nb = 1 + b.re * b.re + b.im * b.im;
      return twice_sqrt((dx * dx + dy * dy) / (na * nb), bits);
    }
    case MetricKind::Circle: {
      mpq_class t = abs(dx);
      t -= mpz_class(t.get_num() / t.get_den());  // frac
      const mpq_class d = std::min(t, mpq_class(1 - t));
      const Dyadic lo = Dyadic::floor_of(d, bits + 1);
      const Dyadic hi = Dyadic::ceil_of(d, bits + 1);
      return {lo, hi};
    }
  }
  throw DynError(Errc::InvalidArgument, "unknown metric");
}

Interval spherical_to_infinity(const ComplexRational& a, long bits) {
  const mpq_class na = 1 + a.re * a.re + a.im * a.im;
  return twice_sqrt(1 / na, bits);
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu,
                            const std::function<ComplexRational(const ComplexRational&)>& map,
                            const mpq_class& merge_tol) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const auto& a : mu.atoms()) atoms.push_back({map(a.point), a.weight});
  return DiscreteMeasure::unchecked(std::move(atoms), merge_tol);
}

DiscreteMeasure uniform_circle(std::size_t k, long bits) {
  if (k == 0) throw DynError(Errc::InvalidArgument, "k must be positive");
  std::vector<ComplexRational> points;
  points.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto jj = static_cast<long>(j);
    const auto kk = static_cast<long>(k);
    points.push_back({cos_turn_nearest(jj, kk, bits).round_down(bits).to_rational(),
                      sin_turn_nearest(jj, kk, bits).round_down(bits).to_rational()});
  }
  return DiscreteMeasure::uniform(points);
}

DiscreteMeasure lebesgue_interval(std::size_t k) {
  if (k == 0) throw DynError(Errc::InvalidArgument, "k must be positive");
  std::vector<ComplexRational> points;
  points.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    mpq_class x(static_cast<long>(2 * j + 1), static_cast<unsigned long>(2 * k));
    x.canonicalize();
    points.push_back({x, 0});
  }
  return DiscreteMeasure::uniform(points);
}

}  // namespace dyncert::measures
