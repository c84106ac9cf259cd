#include <algorithm>
#include <set>

#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"
#include "dyncert/shifts/entropy.hpp"

namespace dyncert::shifts {

const char* status_name(EntropyStatus s) {
  return s == EntropyStatus::Converged ? "Converged" : "BudgetExhausted";
}

namespace {

mpq_class pow2_neg(int p) {
  mpq_class q(1);
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(p));
  return q;
}

// All words of length k in lexicographic order.
std::vector<Word> all_words(std::size_t alphabet, std::size_t k) {
  std::vector<Word> out;
  Word w(k, 0);
  while (true) {
    out.push_back(w);
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++w[pos] < alphabet) break;
      w[pos] = 0;
      if (pos == 0) return out;
    }
    if (k == 0) return out;
  }
}

bool contains_subword(const Word& w, const Word& f) {
  if (f.size() > w.size()) return false;
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

bool avoids(const Word& w, const std::vector<Word>& forbidden) {
  return std::none_of(forbidden.begin(), forbidden.end(),
                      [&](const Word& f) { return contains_subword(w, f); });
}

std::size_t max_length(const std::vector<Word>& words) {
  std::size_t m = 0;
  for (const auto& w : words) m = std::max(m, w.size());
  return m;
}

// Higher-block graph on locally allowed words of length k.
OneStepRecoding block_graph(std::size_t alphabet, const std::vector<Word>& forbidden, std::size_t k) {
  OneStepRecoding out;
  out.block_length = k;
  for (auto& w : all_words(alphabet, k)) {
    if (avoids(w, forbidden)) out.states.push_back(std::move(w));
  }
  const std::size_t n = out.states.size();
  out.matrix = NonnegMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Word& u = out.states[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Word& v = out.states[j];
      if (!std::equal(u.begin() + 1, u.end(), v.begin(), v.end() - 1)) continue;
      Word joined = u;
      joined.push_back(v.back());
      // Subwords inside u or v are already allowed; only the full word can offend.
      if (std::find(forbidden.begin(), forbidden.end(), joined) == forbidden.end()) {
        out.matrix(i, j) = 1;
      }
    }
  }
  return out;
}

}  // namespace

ForbiddenSetSFT minimal_forbidden_set(const ForbiddenSetSFT& x) {
  check_alphabet(x);
  ForbiddenSetSFT out{x.alphabet, {}};
  const std::size_t longest = max_length(x.forbidden);
  if (std::any_of(x.forbidden.begin(), x.forbidden.end(), [](const Word& w) { return w.empty(); })) {
    throw DynError(Errc::EmptyShift, "empty shift space: the empty word is forbidden");
  }
  if (longest == 0) return out;

  const std::size_t k = std::max<std::size_t>(longest - 1, 1);
  const OneStepRecoding g = block_graph(x.alphabet, x.forbidden, k);
  const auto essential = essential_vertices(g.matrix);
  if (essential.empty()) throw DynError(Errc::EmptyShift, "empty shift space");

  // Language up to length k + 1: subwords of essential blocks and essential edges.
  std::vector<std::set<Word>> language(k + 2);
  language[0].insert(Word{});
  for (auto i : essential) {
    const Word& w = g.states[i];
    for (std::size_t len = 1; len <= k; ++len) {
      for (std::size_t start = 0; start + len <= k; ++start) {
        language[len].insert(Word(w.begin() + static_cast<long>(start),
                                  w.begin() + static_cast<long>(start + len)));
      }
    }
    for (auto j : essential) {
      if (g.matrix(i, j) == 0) continue;
      Word joined = w;
      joined.push_back(g.states[j].back());
      language[k + 1].insert(std::move(joined));
    }
  }

  for (std::size_t len = 1; len <= longest; ++len) {
    for (const auto& w : all_words(x.alphabet, len)) {
      if (language[len].count(w) != 0) continue;
      const Word head(w.begin(), w.end() - 1);
      const Word tail(w.begin() + 1, w.end());
      if (language[len - 1].count(head) != 0 && language[len - 1].count(tail) != 0) {
        out.forbidden.push_back(w);
      }
    }
  }
  return out;
}

OneStepRecoding recode_to_one_step(const ForbiddenSetSFT& x) {
  const ForbiddenSetSFT minimal = minimal_forbidden_set(x);
  const std::size_t longest = max_length(minimal.forbidden);
  const std::size_t n = longest > 1 ? longest - 1 : 1;
  OneStepRecoding out = block_graph(x.alphabet, minimal.forbidden, n);
  if (essential_vertices(out.matrix).empty()) throw DynError(Errc::EmptyShift, "empty shift space");
  return out;
}

EntropyResult entropy_from_matrix(const NonnegMatrix& a, int p, std::size_t cap) {
  const auto essential = essential_vertices(a);
  if (essential.empty()) throw DynError(Errc::EmptyShift, "empty shift space");
  const NonnegMatrix core = a.restricted(essential);
  const mpq_class target = pow2_neg(p);
  const long log_bits = p + 64;

  for (int extra = 1;; extra += 2) {
    // Relative width 2^-(p+extra) on rho keeps the log width below 2^-(p+extra).
    const mpq_class rel = pow2_neg(p + extra);
    const PerronBounds rho = perron_root_bounds(core, [&](const mpq_class& lo, const mpq_class& hi) {
      return sgn(lo) > 0 && hi - lo < lo * rel;
    });
    EntropyResult out;
    out.lo = std::max(mpq_class(0), log_lower(rho.lo, log_bits).to_rational());
    out.hi = log_upper(rho.hi, log_bits).to_rational();
    if (cap > 0) out.hi = std::min(out.hi, log_upper(mpq_class(cap), log_bits).to_rational());
    out.hi = std::max(out.hi, out.lo);
    if (out.width() < target) return out;
  }
}

EntropyResult entropy_sft(const NonnegMatrix& a, int p) { return entropy_from_matrix(a, p, 0); }

EntropyResult entropy_sft(const ForbiddenSetSFT& x, int p) {
  const OneStepRecoding r = recode_to_one_step(x);
  return entropy_from_matrix(r.matrix, p, x.alphabet);
}

std::vector<mpz_class> count_words_prefix(const NonnegMatrix& a, int max_n) {
  const auto essential = essential_vertices(a);
  if (essential.empty()) throw DynError(Errc::EmptyShift, "empty shift space");
  const NonnegMatrix b = a.restricted(essential);
  const std::size_t k = b.size();
  std::vector<mpz_class> v(k, mpz_class(1));
  std::vector<mpz_class> next(k);
  std::vector<mpz_class> out;
  out.reserve(static_cast<std::size_t>(std::max(max_n, 0)));
  for (int n = 1; n <= max_n; ++n) {
    if (n > 1) {
      for (std::size_t i = 0; i < k; ++i) {
        next[i] = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (b(i, j) != 0) next[i] += v[j] * b(i, j);
        }
      }
      v.swap(next);
    }
    mpz_class total = 0;
    for (const auto& x : v) total += x;
    out.push_back(total);
  }
  return out;
}

mpz_class count_words(const NonnegMatrix& a, int n) {
  if (n < 1) throw DynError(Errc::InvalidArgument, "word length must be >= 1");
  return count_words_prefix(a, n).back();
}

LanguageOracle LanguageOracle::from_count(Count count) {
  LanguageOracle o;
  o.count_ = std::move(count);
  return o;
}

LanguageOracle LanguageOracle::from_prefix(Prefix prefix) {
  LanguageOracle o;
  o.prefix_ = prefix;
  o.count_ = [prefix](int n) { return prefix(n).back(); };
  return o;
}

LanguageOracle LanguageOracle::from_matrix(NonnegMatrix a) {
  LanguageOracle o = from_prefix([a](int n) { return count_words_prefix(a, n); });
  return o.with_words([a](int n) {
    const auto essential = essential_vertices(a);
    std::vector<Word> out;
    Word w;
    // Depth-first enumeration of essential vertex paths with n vertices.
    auto extend = [&](auto&& self) -> void {
      if (w.size() == static_cast<std::size_t>(n)) {
        out.push_back(w);
        return;
      }
      for (auto v : essential) {
        if (!w.empty() && a(w.back(), v) == 0) continue;
        w.push_back(static_cast<Symbol>(v));
        self(self);
        w.pop_back();
      }
    };
    extend(extend);
    return out;
  });
}

LanguageOracle LanguageOracle::with_words(Words words) const {
  LanguageOracle o = *this;
  o.words_ = std::move(words);
  return o;
}

std::vector<mpz_class> LanguageOracle::counts_up_to(int n) const {
  if (prefix_) return prefix_(n);
  std::vector<mpz_class> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 1; k <= n; ++k) out.push_back(count_(k));
  return out;
}

void check_language_counts(const std::vector<mpz_class>& c) {
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (c[k] < 1) throw DynError(Errc::InconsistentOracle, "language count below 1");
    if (k > 0 && c[k] < c[k - 1]) {
      throw DynError(Errc::InconsistentOracle, "language counts decrease at n = " + std::to_string(k + 1));
    }
    const std::size_t len = k + 1;
    auto check = [&](std::size_t j) {
      if (j == 0 || j >= len) return;
      if (c[k] > c[j - 1] * c[len - j - 1]) {
        throw DynError(Errc::InconsistentOracle,
                       "language counts not submultiplicative at n = " + std::to_string(len));
      }
    };
    for (std::size_t j = 1; j <= 8; ++j) check(j);
    check(len / 2);
  }
}

std::vector<mpq_class> entropy_upper_bounds(const std::vector<mpz_class>& counts) {
  check_language_counts(counts);
  std::vector<mpq_class> out;
  out.reserve(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    mpq_class h = log_upper(mpq_class(counts[k]), 96).to_rational() / mpq_class(static_cast<long>(k + 1));
    if (!out.empty()) h = std::min(h, out.back());
    out.push_back(h);
  }
  return out;
}

std::vector<mpq_class> entropy_upper_bounds(const LanguageOracle& oracle, int n) {
  return entropy_upper_bounds(oracle.counts_up_to(n));
}

}  // namespace dyncert::shifts
