#include "dyncert/core/oracle.hpp"

#include <vector>

#include "dyncert/core/error.hpp"

namespace dyncert {

namespace {

mpq_class pow2_neg(int n) {
  mpq_class q(1);
  if (n >= 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(n));
  } else {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-n));
  }
  return q;
}

}  // namespace

RealOracle RealOracle::constant(mpq_class q) {
  mpq_class copy = q;
  return {[copy](int) { return copy; }, std::move(q)};
}

RealOracle RealOracle::from_query(Query query) { return {std::move(query), std::nullopt}; }

RealOracle RealOracle::sqrt_of(mpq_class q) {
  if (sgn(q) < 0) throw DynError(Errc::InvalidArgument, "sqrt_of: negative argument");
  // floor(sqrt(q * 4^k)) / 2^k is within 2^-k of sqrt(q) (from below).
  return from_query([q](int n) {
    const long k = std::max(n, 0) + 1;
    mpz_class num = q.get_num();
    num <<= static_cast<unsigned long>(2 * k);
    mpz_class scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    mpq_class out(root);
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(k));
    return out;
  });
}

RealOracle RealOracle::affine(const RealOracle& inner, mpq_class scale, mpq_class shift) {
  if (inner.exact_) return constant(scale * *inner.exact_ + shift);
  // Need |scale| * 2^-m <= 2^-n, so m = n + ceil(log2 |scale|) + 1.
  mpz_class bound = abs(scale.get_num()) / scale.get_den() + 1;
  const int extra = static_cast<int>(mpz_sizeinbase(bound.get_mpz_t(), 2)) + 1;
  Query base = inner.query_;
  return from_query([base, scale, shift, extra](int n) -> mpq_class { return scale * base(n + extra) + shift; });
}

Interval RealOracle::enclosure(int n, WorkPrecision p) const {
  if (exact_) return Interval::around(*exact_, p);
  return Interval::ball(query_(n), pow2_neg(n), p);
}

ComplexOracle ComplexOracle::constant(ComplexRational z) {
  ComplexRational copy = z;
  return {[copy](int) { return copy; }, std::move(z)};
}

ComplexOracle ComplexOracle::from_query(Query query) { return {std::move(query), std::nullopt}; }

ComplexOracle ComplexOracle::from_parts(const RealOracle& re, const RealOracle& im) {
  if (re.exact() && im.exact()) return constant({*re.exact(), *im.exact()});
  // Each part within 2^-(n+1) keeps the Euclidean error below 2^-n.
  return from_query([re, im](int n) { return ComplexRational{re(n + 1), im(n + 1)}; });
}

ComplexBox ComplexOracle::enclosure(int n, WorkPrecision p) const {
  if (exact_) return ComplexBox::around(*exact_, p);
  return ComplexBox::ball(query_(n), pow2_neg(n), p);
}

bool oracle_consistent(const RealOracle& oracle, int max_n) {
  std::vector<mpq_class> values;
  values.reserve(static_cast<std::size_t>(max_n));
  for (int n = 1; n <= max_n; ++n) values.push_back(oracle(n));
  for (int n = 1; n <= max_n; ++n) {
    for (int m = 1; m <= max_n; ++m) {
      const mpq_class gap = abs(values[static_cast<std::size_t>(n - 1)] -
                                values[static_cast<std::size_t>(m - 1)]);
      if (!(gap < pow2_neg(n) + pow2_neg(m))) return false;
    }
  }
  return true;
}

}  // namespace dyncert
