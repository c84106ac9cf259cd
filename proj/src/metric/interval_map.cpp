#include "dyncert/metric/interval_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"

namespace dyncert::metric {

namespace {

static_assert(sizeof(mp_limb_t) == 8, "64-bit GMP limbs expected");

mpq_class frac(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - q;
}

// Bits [shift, shift + 64) of a nonnegative integer.
Fixed window(const mpz_class& z, std::size_t shift) {
  const std::size_t limb = shift / 64;
  const unsigned bit = static_cast<unsigned>(shift % 64);
  const auto lo = static_cast<Fixed>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(limb)));
  if (bit == 0) return lo;
  const auto hi = static_cast<Fixed>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(limb + 1)));
  return (lo >> bit) | (hi << (64 - bit));
}

std::size_t den_bits(const mpq_class& q) { return mpz_sizeinbase(q.get_den_mpz_t(), 2); }

}  // namespace

Fixed fixed_from_rational(const mpq_class& q) {
  const mpq_class f = frac(q);
  mpz_class scaled = f.get_num() << 64;
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), f.get_den_mpz_t());
  return window(scaled, 0);
}

mpq_class fixed_to_rational(Fixed x) {
  mpz_class num;
  mpz_import(num.get_mpz_t(), 1, -1, sizeof(Fixed), 0, 0, &x);
  mpq_class r(num, mpz_class(1) << 64);
  r.canonicalize();
  return r;
}

IntervalMap IntervalMap::doubling() { return IntervalMap(); }

IntervalMap IntervalMap::rotation(RealOracle alpha) {
  IntervalMap f;
  f.kind_ = MapKind::Rotation;
  f.alpha_fixed_ = fixed_from_rational(alpha.exact() ? *alpha.exact() : alpha.query(72));
  f.alpha_ = std::move(alpha);
  return f;
}

IntervalMap IntervalMap::table(std::vector<std::pair<mpq_class, mpq_class>> nodes) {
  if (nodes.size() < 2) throw DynError(Errc::InvalidArgument, "table map needs at least two nodes");
  if (nodes.front().first != 0 || nodes.back().first != 1) {
    throw DynError(Errc::InvalidArgument, "table nodes must start at 0 and end at 1");
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].second < 0 || nodes[k].second > 1) {
      throw DynError(Errc::InvalidArgument, "table values must lie in [0, 1]");
    }
    if (k > 0 && !(nodes[k - 1].first < nodes[k].first)) {
      throw DynError(Errc::InvalidArgument, "table abscissae must increase");
    }
  }
  IntervalMap f;
  f.kind_ = MapKind::Table;
  for (const auto& [x, y] : nodes) f.nodes_d_.emplace_back(x.get_d(), y.get_d());
  f.nodes_ = std::move(nodes);
  return f;
}

std::string IntervalMap::describe() const {
  switch (kind_) {
    case MapKind::Doubling:
      return "doubling";
    case MapKind::Rotation:
      return "rotation(" + (alpha_->exact() ? rational_string(*alpha_->exact()) : std::string("oracle")) + ")";
    case MapKind::Table:
      return "table(" + std::to_string(nodes_.size() - 1) + " pieces)";
  }
  return "?";
}

bool IntervalMap::exact() const { return kind_ != MapKind::Rotation || alpha_->exact().has_value(); }

mpq_class IntervalMap::apply(const mpq_class& x) const {
  switch (kind_) {
    case MapKind::Doubling:
      return frac(2 * x);
    case MapKind::Rotation:
      if (!alpha_->exact()) throw DynError(Errc::InvalidArgument, "rotation number is only known by oracle");
      return frac(x + *alpha_->exact());
    case MapKind::Table: {
      const mpq_class t = frac(x);
      auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                                 [](const mpq_class& v, const auto& node) { return v < node.first; });
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      return frac(y0 + (t - x0) * (y1 - y0) / (x1 - x0));
    }
  }
  return x;
}

Fixed IntervalMap::step(Fixed x) const {
  switch (kind_) {
    case MapKind::Doubling:
      return x << 1;
    case MapKind::Rotation:
      return x + alpha_fixed_;
    case MapKind::Table: {
      const double t = fixed_to_double(x);
      auto it = std::upper_bound(nodes_d_.begin(), nodes_d_.end(), t,
                                 [](double v, const auto& node) { return v < node.first; });
      if (it == nodes_d_.end()) --it;  // t rounded up to 1
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      double y = y0 + (t - x0) * (y1 - y0) / (x1 - x0);
      y -= std::floor(y);
      const double scaled = std::ldexp(y, 64);
      return scaled >= 0x1p64 ? 0 : static_cast<Fixed>(scaled);
    }
  }
  return x;
}

std::vector<Fixed> IntervalMap::orbit(Fixed x, std::size_t length) const {
  std::vector<Fixed> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    out[t] = x;
    x = step(x);
  }
  return out;
}

std::vector<Fixed> IntervalMap::orbit(const mpq_class& x, std::size_t length) const {
  if (kind_ != MapKind::Doubling || length == 0) return orbit(fixed_from_rational(x), length);
  // z = floor(frac(x) 2^(length + 63)); step t is the window at bit length - 1 - t.
  const mpq_class f = frac(x);
  mpz_class z = f.get_num() << static_cast<mp_bitcnt_t>(length + 63);
  mpz_fdiv_q(z.get_mpz_t(), z.get_mpz_t(), f.get_den_mpz_t());
  std::vector<Fixed> out(length);
  const auto n = static_cast<std::int64_t>(length);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < n; ++t) out[static_cast<std::size_t>(t)] = window(z, length - 1 - static_cast<std::size_t>(t));
  return out;
}

OrbitSample sample_orbit(const IntervalMap& f, const mpq_class& start, std::size_t length) {
  return {start, f.orbit(start, length)};
}

mpq_class random_start(std::uint64_t seed, std::size_t bits) {
  if (bits == 0) throw DynError(Errc::InvalidArgument, "random start needs at least one bit");
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> words((bits + 63) / 64);
  for (auto& w : words) w = gen();
  if (bits % 64 != 0) words.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  mpz_class c;
  mpz_import(c.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
  const unsigned long r = 1 + (gen() & 1);
  mpq_class x(3 * c + r, mpz_class(3) << static_cast<mp_bitcnt_t>(bits));
  x.canonicalize();
  return x;
}

measures::DiscreteMeasure birkhoff_measure(const IntervalMap& f, const mpq_class& x, std::size_t length) {
  if (length == 0) throw DynError(Errc::InvalidArgument, "orbit length must be positive");
  const mpq_class w(1, length);
  std::vector<measures::Atom> atoms;
  atoms.reserve(length);
  bool small = f.exact() && f.kind() != MapKind::Table && den_bits(x) <= 64;
  if (small && f.kind() == MapKind::Rotation) small = den_bits(f.apply(0)) <= 64;
  if (small) {
    mpq_class p = frac(x);
    for (std::size_t t = 0; t < length; ++t) {
      atoms.push_back({{p, 0}, w});
      p = f.apply(p);
    }
  } else {
    for (Fixed v : f.orbit(x, length)) atoms.push_back({{fixed_to_rational(v), 0}, w});
  }
  return measures::DiscreteMeasure::from_atoms(std::move(atoms));
}

std::string orbit_csv(const OrbitSample& orbit) {
  std::string out = "index,point\n";
  char buf[64];
  for (std::size_t t = 0; t < orbit.points.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, fixed_to_double(orbit.points[t]));
    out += buf;
  }
  return out;
}

}  // namespace dyncert::metric
