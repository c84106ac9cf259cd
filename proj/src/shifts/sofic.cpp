#include "dyncert/shifts/sofic.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "dyncert/core/error.hpp"

namespace dyncert::shifts {

LabeledGraph DeterminizedGraph::as_labeled_graph() const {
  std::vector<std::size_t> index(subsets.size(), essential.size());
  for (std::size_t i = 0; i < essential.size(); ++i) index[essential[i]] = i;
  LabeledGraph g{essential.size(), alphabet, {}};
  for (const auto& e : edges) {
    if (index[e.from] < essential.size() && index[e.to] < essential.size()) {
      g.edges.push_back({index[e.from], index[e.to], e.label});
    }
  }
  return g;
}

DeterminizedGraph sofic_determinize(const LabeledGraph& g) {
  check_alphabet(g);
  const auto keep = essential_vertices(g);
  if (keep.empty()) throw DynError(Errc::EmptyShift, "empty shift space");

  std::vector<bool> alive(g.vertices, false);
  for (auto v : keep) alive[v] = true;
  // succ[v][a]: targets of a-labelled edges from v inside the trimmed graph.
  std::vector<std::vector<std::vector<std::size_t>>> succ(
      g.vertices, std::vector<std::vector<std::size_t>>(g.alphabet));
  for (const auto& e : g.edges) {
    if (alive[e.from] && alive[e.to]) succ[e.from][e.label].push_back(e.to);
  }

  DeterminizedGraph d;
  d.alphabet = g.alphabet;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  d.subsets.push_back(keep);
  seen.emplace(keep, 0);
  for (std::size_t s = 0; s < d.subsets.size(); ++s) {
    for (Symbol a = 0; a < g.alphabet; ++a) {
      std::vector<std::size_t> next;
      for (auto v : d.subsets[s]) next.insert(next.end(), succ[v][a].begin(), succ[v][a].end());
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      auto [it, fresh] = seen.emplace(next, d.subsets.size());
      if (fresh) d.subsets.push_back(std::move(next));
      d.edges.push_back({s, it->second, a});
    }
  }

  NonnegMatrix full(d.subsets.size());
  for (const auto& e : d.edges) ++full(e.from, e.to);
  d.essential = essential_vertices(full);
  if (d.essential.empty()) throw DynError(Errc::EmptyShift, "empty shift space");
  d.adjacency = full.restricted(d.essential);
  return d;
}

EntropyResult entropy_sofic(const LabeledGraph& g, int p) {
  const DeterminizedGraph d = sofic_determinize(g);
  return entropy_from_matrix(d.adjacency, p, g.alphabet);
}

std::vector<mpz_class> count_words_sofic(const DeterminizedGraph& d, int max_n) {
  const std::size_t k = d.subsets.size();
  std::vector<mpz_class> paths(k, mpz_class(0));
  std::vector<mpz_class> next(k);
  paths[d.start] = 1;
  std::vector<mpz_class> out;
  for (int n = 1; n <= max_n; ++n) {
    std::fill(next.begin(), next.end(), mpz_class(0));
    for (const auto& e : d.edges) {
      if (paths[e.from] != 0) next[e.to] += paths[e.from];
    }
    paths.swap(next);
    mpz_class total = 0;
    for (const auto& x : paths) total += x;
    out.push_back(total);
  }
  return out;
}

std::vector<Word> enumerate_words_sofic(const DeterminizedGraph& d, int n) {
  std::vector<std::vector<std::pair<Symbol, std::size_t>>> out_edges(d.subsets.size());
  for (const auto& e : d.edges) out_edges[e.from].emplace_back(e.label, e.to);
  std::vector<Word> words;
  Word w;
  auto walk = [&](auto&& self, std::size_t state) -> void {
    if (w.size() == static_cast<std::size_t>(n)) {
      words.push_back(w);
      return;
    }
    for (const auto& [label, to] : out_edges[state]) {
      w.push_back(label);
      self(self, to);
      w.pop_back();
    }
  };
  walk(walk, d.start);
  std::sort(words.begin(), words.end());
  return words;
}

LanguageOracle LanguageOracle::from_sofic(const LabeledGraph& g) {
  auto d = std::make_shared<const DeterminizedGraph>(sofic_determinize(g));
  return from_prefix([d](int n) { return count_words_sofic(*d, n); })
      .with_words([d](int n) { return enumerate_words_sofic(*d, n); });
}

}  // namespace dyncert::shifts
