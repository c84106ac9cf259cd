#include <doctest.h>

#include <cmath>
#include <random>

#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"
#include "dyncert/shifts/coded.hpp"
#include "dyncert/shifts/entropy.hpp"
#include "dyncert/shifts/sofic.hpp"
#include "oracles.hpp"

using namespace dyncert;
using namespace dyncert::shifts;

namespace {

mpq_class two_pow(int e) {
  mpq_class r(1);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return r;
}

// True log(x) lies in [log_lower(a), log_upper(b)] whenever a <= x <= b.
bool brackets_log(const EntropyResult& r, const mpq_class& a, const mpq_class& b) {
  return r.lo <= log_upper(b, 128).to_rational() && r.hi >= log_lower(a, 128).to_rational();
}

std::pair<mpq_class, mpq_class> golden_root() {
  return oracle::bisect([](const mpq_class& x) -> mpq_class { return x * x - x - 1; }, 1, 2, 80);
}

std::pair<mpq_class, mpq_class> sgap_root() {
  return oracle::bisect([](const mpq_class& x) -> mpq_class { return x * x * x - x * x - 1; }, 1, 2, 80);
}

ForbiddenSetSFT sft(std::size_t d, std::vector<Word> f) { return {d, std::move(f)}; }

LabeledGraph even_shift() { return {2, 2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}; }

std::vector<std::vector<std::uint32_t>> random_binary(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution bit(0.5);
  std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
  for (auto& row : rows) {
    for (auto& x : row) x = bit(rng) ? 1 : 0;
  }
  return rows;
}

ForbiddenSetSFT random_sft(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dist_d(2, 3);
  const std::size_t d = dist_d(rng);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<std::size_t> len(1, 4);
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(d - 1));
  ForbiddenSetSFT x{d, {}};
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Word w(len(rng) == 1 ? 2 : len(rng));
    for (auto& s : w) s = sym(rng);
    x.forbidden.push_back(w);
  }
  return x;
}

// Vertex-shift words: paths whose ends reach cycles in both directions.
std::size_t brute_count_vertex_shift(const std::vector<std::vector<std::uint32_t>>& a, std::size_t n) {
  const std::size_t k = a.size();
  std::vector<bool> fwd(k, true);
  std::vector<bool> bwd(k, true);
  for (std::size_t step = 0; step <= k; ++step) {
    std::vector<bool> f2(k, false);
    std::vector<bool> b2(k, false);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (a[i][j] == 0) continue;
        if (fwd[j]) f2[i] = true;
        if (bwd[i]) b2[j] = true;
      }
    }
    fwd.swap(f2);
    bwd.swap(b2);
  }
  std::size_t total = 0;
  for (const auto& w : oracle::all_words(k, n)) {
    if (!bwd[w.front()] || !fwd[w.back()]) continue;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) ok = a[w[i]][w[i + 1]] != 0;
    if (ok) ++total;
  }
  return total;
}

}  // namespace

TEST_CASE("minimal_forbidden_set examples") {
  CHECK(minimal_forbidden_set(sft(2, {{1, 1}, {1, 1, 0}})).forbidden == std::vector<Word>{{1, 1}});
  CHECK(minimal_forbidden_set(sft(2, {{1, 1}})).forbidden == std::vector<Word>{{1, 1}});
  CHECK(minimal_forbidden_set(sft(2, {})).forbidden.empty());
  CHECK_THROWS_WITH_AS(minimal_forbidden_set(sft(2, {{2}})), doctest::Contains("alphabet"), DynError);
  const ForbiddenSetSFT x = sft(2, {{1, 1}, {1, 1, 0}});
  const ForbiddenSetSFT m = minimal_forbidden_set(x);
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(oracle::SftLanguage(2, x.forbidden).words(n) == oracle::SftLanguage(2, m.forbidden).words(n));
  }
}

TEST_CASE("minimal_forbidden_set on random shifts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const ForbiddenSetSFT x = random_sft(rng);
    const oracle::SftLanguage lx(x.alphabet, x.forbidden);
    ForbiddenSetSFT m;
    try {
      m = minimal_forbidden_set(x);
    } catch (const DynError& e) {
      CHECK(e.code() == Errc::EmptyShift);
      CHECK(lx.words(1).empty());
      continue;
    }
    const oracle::SftLanguage lm(m.alphabet, m.forbidden);
    for (std::size_t n = 1; n <= 5; ++n) REQUIRE(lx.words(n) == lm.words(n));
    for (const auto& w : m.forbidden) {
      const auto lang = lx.words(w.size() - 1);
      REQUIRE(lang.count(Word(w.begin(), w.end() - 1)) == 1);
      REQUIRE(lang.count(Word(w.begin() + 1, w.end())) == 1);
      REQUIRE(lx.words(w.size()).count(w) == 0);
    }
    CHECK(std::is_sorted(m.forbidden.begin(), m.forbidden.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    }));
  }
}

TEST_CASE("recode_to_one_step") {
  const OneStepRecoding golden = recode_to_one_step(sft(2, {{1, 1}}));
  CHECK(golden.block_length == 1);
  CHECK(golden.matrix == NonnegMatrix::from_rows({{1, 1}, {1, 0}}));
  const auto counts = count_words_prefix(golden.matrix, 8);
  const oracle::SftLanguage lang(2, {{1, 1}});
  for (std::size_t n = 1; n <= 8; ++n) CHECK(counts[n - 1] == lang.words(n).size());

  CHECK(recode_to_one_step(sft(2, {})).matrix == NonnegMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK_THROWS_WITH_AS(recode_to_one_step(sft(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})),
                       doctest::Contains("empty shift"), DynError);
}

TEST_CASE("recoded word counts of longer-memory shifts") {
  // Forbidding 010 and 111 needs two-symbol blocks; vertex words of length n
  // correspond to shift words of length n + N - 1.
  const ForbiddenSetSFT x = sft(2, {{0, 1, 0}, {1, 1, 1}});
  const OneStepRecoding r = recode_to_one_step(x);
  CHECK(r.block_length == 2);
  const auto counts = count_words_prefix(r.matrix, 7);
  const oracle::SftLanguage lang(2, x.forbidden);
  for (std::size_t n = 1; n <= 7; ++n) CHECK(counts[n - 1] == lang.words(n + 1).size());
}

TEST_CASE("perron_root_interval examples") {
  const auto [a, b] = golden_root();
  const PerronBounds g = perron_root_interval(NonnegMatrix::from_rows({{1, 1}, {1, 0}}), 20);
  CHECK(g.hi - g.lo < two_pow(-20));
  CHECK(g.lo <= b);
  CHECK(g.hi >= a);
  const PerronBounds two = perron_root_interval(NonnegMatrix::from_rows({{1, 1}, {1, 1}}), 20);
  CHECK(two.lo <= 2);
  CHECK(two.hi >= 2);
  const PerronBounds zero = perron_root_interval(NonnegMatrix::from_rows({{0, 1}, {0, 0}}), 20);
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);
}

TEST_CASE("perron soundness against Sturm counts") {
  std::vector<std::vector<std::vector<std::uint32_t>>> cases;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (unsigned mask = 0; mask < (1U << (n * n)); ++mask) {
      std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
      for (std::size_t i = 0; i < n * n; ++i) rows[i / n][i % n] = (mask >> i) & 1U;
      cases.push_back(rows);
    }
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) cases.push_back(random_binary(rng, 4));

  const mpq_class slack = two_pow(-40);
  for (const auto& rows : cases) {
    const PerronBounds b = perron_root_interval(NonnegMatrix::from_rows(rows), 24);
    REQUIRE(b.hi - b.lo < two_pow(-24));
    const oracle::Poly p = oracle::characteristic_polynomial(rows);
    const mpq_class top(static_cast<long>(rows.size()) + 1);
    if (b.hi == 0) {
      // Nilpotent: every eigenvalue is 0.
      REQUIRE(oracle::sturm_count(p, slack, top) == 0);
      REQUIRE(oracle::sturm_count(p, -top, -slack) == 0);
      continue;
    }
    REQUIRE(oracle::sturm_count(p, b.lo - slack, b.hi + slack) >= 1);
    REQUIRE(oracle::sturm_count(p, b.hi + slack, top) == 0);
  }
}

TEST_CASE("entropy_sft examples") {
  const auto [a, b] = golden_root();
  const EntropyResult g = entropy_sft(sft(2, {{1, 1}}), 20);
  CHECK(g.status == EntropyStatus::Converged);
  CHECK(g.width() < two_pow(-20));
  CHECK(brackets_log(g, a, b));
  CHECK(g.lo.get_d() == doctest::Approx(0.4812118250596).epsilon(1e-6));

  const EntropyResult full = entropy_sft(sft(2, {}), 20);
  CHECK(brackets_log(full, 2, 2));
  CHECK(full.width() < two_pow(-20));
  const EntropyResult three = entropy_sft(NonnegMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), 20);
  CHECK(brackets_log(three, 3, 3));
  CHECK(three.width() < two_pow(-20));
  CHECK_THROWS_AS(entropy_sft(NonnegMatrix::from_rows({{0, 1}, {0, 0}}), 10), DynError);
}

TEST_CASE("entropy stays within [0, log d]") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const ForbiddenSetSFT x = random_sft(rng);
    try {
      const EntropyResult r = entropy_sft(x, 16);
      CHECK(r.lo >= 0);
      CHECK(r.lo <= r.hi);
      CHECK(r.hi <= log_upper(mpq_class(static_cast<long>(x.alphabet))).to_rational() + two_pow(-16));
    } catch (const DynError& e) {
      CHECK(e.code() == Errc::EmptyShift);
    }
  }
}

TEST_CASE("conjugacy invariance and antitonicity") {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 50) {
    ForbiddenSetSFT x = random_sft(rng);
    EntropyResult base;
    try {
      base = entropy_sft(x, 16);
    } catch (const DynError&) {
      continue;
    }
    ++checked;
    const EntropyResult recoded = entropy_sft(recode_to_one_step(x).matrix, 16);
    CHECK(base.lo <= recoded.hi);
    CHECK(recoded.lo <= base.hi);
    // Forbidding one more word cannot raise the upper endpoint.
    std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(x.alphabet - 1));
    x.forbidden.push_back({sym(rng), sym(rng), sym(rng)});
    try {
      const EntropyResult smaller = entropy_sft(x, 16);
      CHECK(smaller.lo <= base.hi);
      CHECK(smaller.hi <= base.hi + two_pow(-16));
    } catch (const DynError& e) {
      CHECK(e.code() == Errc::EmptyShift);
    }
  }
}

TEST_CASE("count_words examples") {
  const auto fib = count_words_prefix(NonnegMatrix::from_rows({{1, 1}, {1, 0}}), 6);
  CHECK(fib == std::vector<mpz_class>{2, 3, 5, 8, 13, 21});
  CHECK(count_words(NonnegMatrix::from_rows({{1, 1}, {1, 1}}), 5) == 32);
  CHECK(count_words(NonnegMatrix::from_rows({{1}}), 7) == 1);
  CHECK_THROWS_AS(count_words(NonnegMatrix::from_rows({{0}}), 3), DynError);
  // A transient vertex feeding a cycle adds nothing.
  CHECK(count_words(NonnegMatrix::from_rows({{0, 1}, {0, 1}}), 4) == 1);
}

TEST_CASE("count_words matches enumeration") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 5);
    const auto rows = random_binary(rng, k);
    const NonnegMatrix a = NonnegMatrix::from_rows(rows);
    if (essential_vertices(a).empty()) continue;
    const std::size_t max_n = k <= 3 ? 10 : 7;
    const auto counts = count_words_prefix(a, static_cast<int>(max_n));
    for (std::size_t n = 1; n <= max_n; ++n) {
      REQUIRE(counts[n - 1] == brute_count_vertex_shift(rows, n));
    }
  }
}

TEST_CASE("language oracle word lists") {
  const LanguageOracle o = LanguageOracle::from_matrix(NonnegMatrix::from_rows({{1, 1}, {1, 0}}));
  REQUIRE(o.has_words());
  const auto words = o.words(4);
  CHECK(words.size() == 8);
  for (const auto& w : words) CHECK(oracle::locally_allowed(w, {{1, 1}}));
}

TEST_CASE("entropy_upper_bounds examples") {
  const auto fib = oracle::fibonacci_counts(32);
  const auto h = entropy_upper_bounds(fib);
  CHECK(h[0] >= log_lower(2).to_rational());
  CHECK(h[0] <= log_upper(2).to_rational());
  CHECK(h[31] <= mpq_class(487, 1000));
  CHECK(h[31] >= log_lower(2178309).to_rational() / 32);  // F_34
  for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1]);

  const auto full = entropy_upper_bounds(LanguageOracle::from_count([](int n) -> mpz_class {
    return mpz_class(1) << static_cast<unsigned>(n);
  }), 20);
  for (const auto& x : full) {
    CHECK(x >= log_lower(2).to_rational());
    CHECK(x <= full[0]);
    CHECK(full[0] - x < two_pow(-80));
  }

  const auto per2 = entropy_upper_bounds(std::vector<mpz_class>(20, 2));
  for (std::size_t k = 0; k < per2.size(); ++k) {
    CHECK(per2[k] * static_cast<long>(k + 1) == log_upper(2).to_rational());
  }
}

TEST_CASE("inconsistent language counts") {
  CHECK_THROWS_AS(entropy_upper_bounds(std::vector<mpz_class>{3, 2}), DynError);
  CHECK_THROWS_AS(entropy_upper_bounds(std::vector<mpz_class>{0, 1}), DynError);
  std::vector<mpz_class> fast;
  for (unsigned n = 1; n <= 6; ++n) fast.push_back(mpz_class(1) << (n * n));
  try {
    entropy_upper_bounds(fast);
    FAIL("expected InconsistentOracle");
  } catch (const DynError& e) {
    CHECK(e.code() == Errc::InconsistentOracle);
  }
}

TEST_CASE("upper bounds dominate SFT entropy") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rows = random_binary(rng, 1 + static_cast<std::size_t>(trial % 4));
    const NonnegMatrix a = NonnegMatrix::from_rows(rows);
    if (essential_vertices(a).empty()) continue;
    const EntropyResult r = entropy_sft(a, 16);
    const auto h = entropy_upper_bounds(count_words_prefix(a, 24));
    for (std::size_t k = 0; k < h.size(); ++k) {
      REQUIRE(h[k] >= r.lo);
      if (k > 0) REQUIRE(h[k] <= h[k - 1]);
    }
  }
}

TEST_CASE("sofic determinization of the even shift") {
  const DeterminizedGraph d = sofic_determinize(even_shift());
  const auto counts = count_words_sofic(d, 10);
  for (std::size_t n = 1; n <= 10; ++n) {
    std::size_t brute = 0;
    for (const auto& w : oracle::all_words(2, n)) brute += oracle::even_shift_word(w) ? 1 : 0;
    CHECK(counts[n - 1] == brute);
  }
  const auto words = enumerate_words_sofic(d, 6);
  for (const auto& w : words) CHECK(oracle::even_shift_word(w));

  const auto [a, b] = golden_root();
  const EntropyResult r = entropy_sofic(even_shift(), 20);
  CHECK(r.status == EntropyStatus::Converged);
  CHECK(r.width() < two_pow(-20));
  CHECK(brackets_log(r, a, b));

  // Right-resolving: no two edges from a state share a label.
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    for (std::size_t j = i + 1; j < d.edges.size(); ++j) {
      CHECK_FALSE((d.edges[i].from == d.edges[j].from && d.edges[i].label == d.edges[j].label));
    }
  }
}

TEST_CASE("sofic examples") {
  const EntropyResult full = entropy_sofic({1, 2, {{0, 0, 0}, {0, 0, 1}}}, 20);
  CHECK(brackets_log(full, 2, 2));
  const EntropyResult rose3 = entropy_sofic({1, 3, {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}}}, 20);
  CHECK(brackets_log(rose3, 3, 3));
  CHECK_THROWS_WITH_AS(entropy_sofic({3, 2, {{0, 1, 0}, {1, 2, 1}}}, 10), doctest::Contains("empty shift"),
                       DynError);
  CHECK_THROWS_AS(entropy_sofic({1, 2, {{0, 0, 2}}}, 10), DynError);
}

TEST_CASE("determinization idempotence") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> vert(0, 3);
  std::uniform_int_distribution<Symbol> label(0, 1);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 25; ++trial) {
    LabeledGraph g{4, 2, {}};
    for (int e = 0; e < 7; ++e) g.edges.push_back({vert(rng), vert(rng), label(rng)});
    EntropyResult once;
    try {
      once = entropy_sofic(g, 16);
    } catch (const DynError&) {
      continue;
    }
    ++checked;
    const LabeledGraph again = sofic_determinize(g).as_labeled_graph();
    const EntropyResult twice = entropy_sofic(again, 16);
    CHECK(once.lo <= twice.hi);
    CHECK(twice.lo <= once.hi);
    // Same language, too.
    CHECK(count_words_sofic(sofic_determinize(g), 8) == count_words_sofic(sofic_determinize(again), 8));
  }
  CHECK(checked >= 10);
}

TEST_CASE("coded_sofic_approximation") {
  const GeneratingSet g{2, {{0}, {0, 1}}, true};
  const LabeledGraph rose = coded_sofic_approximation(g, 2);
  CHECK(rose.vertices == 2);
  CHECK(rose.edges.size() == 3);
  const auto counts = count_words_sofic(sofic_determinize(rose), 8);
  const oracle::SftLanguage golden(2, {{1, 1}});
  for (std::size_t n = 1; n <= 8; ++n) CHECK(counts[n - 1] == golden.words(n).size());

  const EntropyResult single = entropy_sofic(coded_sofic_approximation({2, {{0}}, true}, 1), 20);
  CHECK(single.lo == 0);
  CHECK(single.hi < two_pow(-20));
  const EntropyResult full = entropy_sofic(coded_sofic_approximation({2, {{0}, {1}}, true}, 2), 20);
  CHECK(brackets_log(full, 2, 2));
  CHECK_THROWS_AS(coded_sofic_approximation(g, 3), DynError);
}

TEST_CASE("entropy_coded golden mean") {
  const GeneratingSet g{2, {{0}, {0, 1}}, true};
  const auto fib = LanguageOracle::from_prefix([](int n) { return oracle::fibonacci_counts(n); });
  const CodedEntropyReport rep = entropy_coded(g, fib, 10);
  CHECK(rep.result.status == EntropyStatus::Converged);
  CHECK(rep.result.width() < two_pow(-10));
  const auto [a, b] = golden_root();
  CHECK(brackets_log(rep.result, a, b));
  for (std::size_t i = 1; i < rep.lower_history.size(); ++i) {
    CHECK(rep.lower_history[i] >= rep.lower_history[i - 1]);
  }
  for (std::size_t i = 1; i < rep.upper_bounds.size(); ++i) {
    CHECK(rep.upper_bounds[i] <= rep.upper_bounds[i - 1]);
  }
  for (const auto& lo : rep.lower_history) CHECK(lo <= rep.upper_bounds.back());
}

TEST_CASE("entropy_coded S-gap") {
  // The automaton agrees with the word predicate on short lengths.
  const auto dfa = oracle::sgap_counts(12);
  for (std::size_t n = 1; n <= 12; ++n) {
    std::size_t brute = 0;
    for (const auto& w : oracle::all_words(2, n)) brute += oracle::sgap_word(w) ? 1 : 0;
    REQUIRE(dfa[n - 1] == brute);
  }
  const GeneratingSet g{2, {{1}, {1, 0, 0}}, true};
  const auto lang = LanguageOracle::from_prefix([](int n) { return oracle::sgap_counts(n); });
  const CodedEntropyReport rep = entropy_coded(g, lang, 10);
  CHECK(rep.result.status == EntropyStatus::Converged);
  CHECK(rep.result.width() <= two_pow(-10));
  const auto [a, b] = sgap_root();
  CHECK(brackets_log(rep.result, a, b));
  // Prefix code: sum of x^-|g| equals 1 at the root.
  const double x = a.get_d();
  CHECK(1 / x + 1 / (x * x * x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy_coded zero entropy and budgets") {
  const GeneratingSet g{2, {{0}}, true};
  const auto one = LanguageOracle::from_count([](int) { return mpz_class(1); });
  const CodedEntropyReport rep = entropy_coded(g, one, 12);
  CHECK(rep.result.status == EntropyStatus::Converged);
  CHECK(rep.result.lo == 0);
  CHECK(rep.result.hi < two_pow(-12));

  const GeneratingSet golden{2, {{0}, {0, 1}}, false};
  const auto fib = LanguageOracle::from_prefix([](int n) { return oracle::fibonacci_counts(n); });
  const CodedEntropyReport tight = entropy_coded(golden, fib, 20, {2, 64});
  CHECK(tight.result.status == EntropyStatus::BudgetExhausted);
  const auto [a, b] = golden_root();
  CHECK(brackets_log(tight.result, a, b));

  const auto bad = LanguageOracle::from_prefix([](int n) {
    std::vector<mpz_class> c(static_cast<std::size_t>(n), 5);
    c[0] = 1;
    return c;
  });
  CHECK_THROWS_AS(entropy_coded(golden, bad, 10), DynError);
}

TEST_CASE("coded language of a finite generating set") {
  const auto lang = coded_language({2, {{1}, {1, 0, 0}}, true});
  CHECK(lang.counts_up_to(20) == oracle::sgap_counts(20));
}

TEST_CASE("zero_entropy_semialgorithm") {
  const auto per2 = LanguageOracle::from_count([](int) { return mpz_class(2); });
  const auto out = zero_entropy_semialgorithm(per2, mpq_class(1, 10), 100);
  REQUIRE(std::holds_alternative<ZeroEntropyValue>(out));
  CHECK(std::get<ZeroEntropyValue>(out).n == 7);
  CHECK(std::get<ZeroEntropyValue>(out).value.get_d() == doctest::Approx(std::log(2.0) / 14).epsilon(1e-9));

  const auto full =
      LanguageOracle::from_count([](int n) -> mpz_class { return mpz_class(1) << static_cast<unsigned>(n); });
  const auto none = zero_entropy_semialgorithm(full, mpq_class(1, 10), 100);
  REQUIRE(std::holds_alternative<Inconclusive>(none));
  CHECK(std::get<Inconclusive>(none).best.get_d() == doctest::Approx(std::log(2.0)));

  const auto sturmian = LanguageOracle::from_count([](int n) { return mpz_class(n + 1); });
  const auto linear = zero_entropy_semialgorithm(sturmian, mpq_class(1, 2), 100);
  REQUIRE(std::holds_alternative<ZeroEntropyValue>(linear));
  const int n = std::get<ZeroEntropyValue>(linear).n;
  CHECK(std::log(n + 1.0) / n < 0.5);
  CHECK(std::log(static_cast<double>(n)) / (n - 1) >= 0.5);
  CHECK_THROWS_AS(zero_entropy_semialgorithm(per2, 0, 10), DynError);
}
