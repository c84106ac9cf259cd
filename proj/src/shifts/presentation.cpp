#include "dyncert/shifts/presentation.hpp"

#include <deque>
#include <string>

#include "dyncert/core/error.hpp"

namespace dyncert::shifts {

NonnegMatrix NonnegMatrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  NonnegMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw DynError(Errc::InvalidArgument, "matrix must be square");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool NonnegMatrix::is_zero_one() const {
  for (auto v : entries_) {
    if (v > 1) return false;
  }
  return true;
}

NonnegMatrix NonnegMatrix::restricted(const std::vector<std::size_t>& keep) const {
  NonnegMatrix out(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) out(a, b) = (*this)(keep[a], keep[b]);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> NonnegMatrix::rows() const {
  std::vector<std::vector<std::uint32_t>> out(n_, std::vector<std::uint32_t>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

namespace {

void check_word(const Word& w, std::size_t alphabet) {
  for (auto s : w) {
    if (s >= alphabet) {
      throw DynError(Errc::AlphabetMismatch, "symbol " + std::to_string(s) +
                                                 " outside alphabet of size " +
                                                 std::to_string(alphabet));
    }
  }
}

// Peels vertices with zero in- or out-degree until none remain.
std::vector<std::size_t> peel(std::size_t n, const std::vector<std::vector<std::size_t>>& out_adj,
                              const std::vector<std::vector<std::size_t>>& in_adj) {
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::size_t> outdeg(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    outdeg[v] = out_adj[v].size();
    indeg[v] = in_adj[v].size();
  }
  std::vector<bool> removed(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) {
      removed[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (auto w : out_adj[v]) {
      if (!removed[w] && --indeg[w] == 0) {
        removed[w] = true;
        queue.push_back(w);
      }
    }
    for (auto u : in_adj[v]) {
      if (!removed[u] && --outdeg[u] == 0) {
        removed[u] = true;
        queue.push_back(u);
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < n; ++v) {
    if (!removed[v]) keep.push_back(v);
  }
  return keep;
}

}  // namespace

void check_alphabet(const ForbiddenSetSFT& x) {
  if (x.alphabet == 0) throw DynError(Errc::InvalidArgument, "alphabet must be nonempty");
  for (const auto& w : x.forbidden) check_word(w, x.alphabet);
}

void check_alphabet(const LabeledGraph& g) {
  if (g.alphabet == 0) throw DynError(Errc::InvalidArgument, "alphabet must be nonempty");
  for (const auto& e : g.edges) {
    if (e.from >= g.vertices || e.to >= g.vertices) {
      throw DynError(Errc::InvalidArgument, "edge endpoint outside vertex range");
    }
    if (e.label >= g.alphabet) {
      throw DynError(Errc::AlphabetMismatch, "edge label " + std::to_string(e.label) +
                                                 " outside alphabet");
    }
  }
}

void check_alphabet(const GeneratingSet& g) {
  if (g.alphabet == 0) throw DynError(Errc::InvalidArgument, "alphabet must be nonempty");
  for (const auto& w : g.generators) {
    if (w.empty()) throw DynError(Errc::InvalidArgument, "generators must be nonempty words");
    check_word(w, g.alphabet);
  }
}

std::vector<std::size_t> essential_vertices(const NonnegMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> out_adj(n);
  std::vector<std::vector<std::size_t>> in_adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) {
        out_adj[i].push_back(j);
        in_adj[j].push_back(i);
      }
    }
  }
  return peel(n, out_adj, in_adj);
}

std::vector<std::size_t> essential_vertices(const LabeledGraph& g) {
  std::vector<std::vector<std::size_t>> out_adj(g.vertices);
  std::vector<std::vector<std::size_t>> in_adj(g.vertices);
  for (const auto& e : g.edges) {
    out_adj[e.from].push_back(e.to);
    in_adj[e.to].push_back(e.from);
  }
  return peel(g.vertices, out_adj, in_adj);
}

}  // namespace dyncert::shifts
