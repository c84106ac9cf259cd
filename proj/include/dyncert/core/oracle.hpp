#pragma once

#include <functional>
#include <optional>

#include <gmpxx.h>

#include "dyncert/core/complex_box.hpp"
#include "dyncert/core/interval.hpp"

namespace dyncert {

/// Oracle approximation of a real number: query(n) returns a rational within
/// 2^-n of the target. Constant oracles also remember the exact value so
/// consumers can skip enclosure padding.
class RealOracle {
 public:
  using Query = std::function<mpq_class(int)>;

  static RealOracle constant(mpq_class q);
  static RealOracle from_query(Query query);
  /// sqrt(q) for rational q >= 0, by integer square roots.
  static RealOracle sqrt_of(mpq_class q);
  /// scale * inner + shift, with the inner precision raised to absorb |scale|.
  static RealOracle affine(const RealOracle& inner, mpq_class scale, mpq_class shift);

  mpq_class query(int n) const { return query_(n); }
  mpq_class operator()(int n) const { return query_(n); }
  const std::optional<mpq_class>& exact() const { return exact_; }

  /// [query(n) - 2^-n, query(n) + 2^-n] outward to precision p (point if exact).
  Interval enclosure(int n, WorkPrecision p) const;

 private:
  RealOracle(Query query, std::optional<mpq_class> exact)
      : query_(std::move(query)), exact_(std::move(exact)) {}

  Query query_;
  std::optional<mpq_class> exact_;
};

/// Oracle for a point of the plane: query(n) is within 2^-n in the Euclidean
/// metric.
class ComplexOracle {
 public:
  using Query = std::function<ComplexRational(int)>;

  static ComplexOracle constant(ComplexRational z);
  static ComplexOracle from_query(Query query);
  static ComplexOracle from_parts(const RealOracle& re, const RealOracle& im);

  ComplexRational query(int n) const { return query_(n); }
  ComplexRational operator()(int n) const { return query_(n); }
  const std::optional<ComplexRational>& exact() const { return exact_; }

  ComplexBox enclosure(int n, WorkPrecision p) const;

 private:
  ComplexOracle(Query query, std::optional<ComplexRational> exact)
      : query_(std::move(query)), exact_(std::move(exact)) {}

  Query query_;
  std::optional<ComplexRational> exact_;
};

/// Wraps a rational as an exact constant oracle.
inline RealOracle oracle_from_rational(const mpq_class& q) { return RealOracle::constant(q); }

/// |query(n) - query(m)| < 2^-n + 2^-m for all n, m in [1, max_n].
bool oracle_consistent(const RealOracle& oracle, int max_n);

}  // namespace dyncert
