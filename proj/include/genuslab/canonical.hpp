#pragma once

// Canonical labelling by exhaustive search over vertex orderings.
//
// Vertices are first split into cells by iterated degree refinement (an
// isomorphism-invariant colouring). The canonical form is the ordering,
// among those listing cells in colour order, whose upper-triangle bit string
// (column order, as in graph6) is lexicographically least. Orderings are
// built one position at a time and a prefix is dropped as soon as its
// columns exceed the best string found so far. Every ordering reaching the
// optimum differs from another by an automorphism, so counting optimal
// leaves yields |Aut(G)|.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "genuslab/graph.hpp"

namespace genuslab {

inline constexpr int kCanonicalCap = 10;

struct CanonicalKey {
  int n = 0;
  std::uint64_t bits = 0;  // pair p stored at bit (pairs-1-p): string order = integer order

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept {
    std::uint64_t x = k.bits * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(k.n);
    x ^= x >> 31;
    return static_cast<std::size_t>(x * 0xBF58476D1CE4E5B9ULL);
  }
};

/// An isomorphism class, held through its canonical representative.
class UnlabelledGraph {
 public:
  UnlabelledGraph() = default;
  UnlabelledGraph(Graph canonical, CanonicalKey key) : rep_(std::move(canonical)), key_(key) {}

  const Graph& graph() const { return rep_; }
  const CanonicalKey& key() const { return key_; }
  int order() const { return rep_.order(); }
  int size() const { return rep_.size(); }

  friend bool operator==(const UnlabelledGraph& a, const UnlabelledGraph& b) { return a.key_ == b.key_; }
  friend auto operator<=>(const UnlabelledGraph& a, const UnlabelledGraph& b) { return a.key_ <=> b.key_; }

 private:
  Graph rep_;
  CanonicalKey key_;
};

struct Canonization {
  Graph canonical;
  CanonicalKey key;
  std::vector<int> position;  // vertex v of the input sits at position[v] in the canonical graph
  std::uint64_t automorphisms = 0;
};

namespace detail {

/// Iterated degree refinement. Returns a colour per vertex; colours are
/// ranks of isomorphism-invariant signatures.
inline std::vector<int> refine_colours(const Graph& g) {
  const int n = g.order();
  std::vector<int> colour(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) colour[v] = g.degree(v);
  int classes = -1;
  while (true) {
    std::vector<std::vector<int>> signature(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& s = signature[v];
      s.push_back(colour[v]);
      std::vector<int> around;
      for (VertexSet rest = g.neighbours(v); rest; rest &= rest - 1) around.push_back(colour[std::countr_zero(rest)]);
      std::sort(around.begin(), around.end());
      s.insert(s.end(), around.begin(), around.end());
    }
    std::map<std::vector<int>, int> rank;
    for (auto& s : signature) rank.emplace(s, 0);
    int r = 0;
    for (auto& [s, id] : rank) id = r++;
    for (int v = 0; v < n; ++v) colour[v] = rank[signature[v]];
    if (r == classes) break;
    classes = r;
  }
  return colour;
}

struct CanonSearch {
  const Graph& g;
  int n;
  std::vector<int> cell_of_position;  // colour required at each position
  std::vector<int> colour;
  std::vector<int> order, best_order;
  std::vector<std::uint32_t> best_cols;
  std::vector<std::uint32_t> cols;
  bool have_best = false;
  std::uint64_t optimal_leaves = 0;

  // Returns true when a new best leaf was found below; the caller's prefix
  // then equals the best prefix, so its remaining siblings must compare.
  bool run(int pos, VertexSet used, bool below) {
    if (pos == n) {
      if (!have_best || below) {
        have_best = true;
        best_cols = cols;
        best_order = order;
        optimal_leaves = 1;
        return true;
      }
      ++optimal_leaves;
      return false;
    }
    bool improved = false;
    for (int v = 0; v < n; ++v) {
      if (used >> v & 1U || colour[v] != cell_of_position[pos]) continue;
      std::uint32_t col = 0;
      VertexSet nb = g.neighbours(v);
      for (int i = 0; i < pos; ++i) col = col << 1 | ((nb >> order[i]) & 1U);
      bool child_below = below || !have_best;
      if (!child_below) {
        if (col > best_cols[pos]) continue;
        child_below = col < best_cols[pos];
      }
      order[pos] = v;
      cols[pos] = col;
      if (run(pos + 1, used | bit(v), child_below)) {
        improved = true;
        below = false;
      }
    }
    return improved;
  }
};

}  // namespace detail

/// Canonical form plus automorphism count; throws beyond `cap` vertices.
inline Canonization canonize(const Graph& g, int cap = kCanonicalCap) {
  const int n = g.order();
  if (n > cap || n > 11) throw Error("canonicalization cap exceeded");
  Canonization out;
  if (n == 0) {
    out.canonical = Graph(0);
    out.key = {0, 0};
    out.automorphisms = 1;
    return out;
  }
  detail::CanonSearch s{g, n, {}, detail::refine_colours(g), {}, {}, {}, {}, false, 0};
  s.cell_of_position = s.colour;
  std::sort(s.cell_of_position.begin(), s.cell_of_position.end());
  s.order.assign(static_cast<std::size_t>(n), 0);
  s.cols.assign(static_cast<std::size_t>(n), 0);
  s.run(0, 0, false);

  out.position.assign(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p) out.position[s.best_order[p]] = p;
  out.canonical = g.permuted(out.position);
  const int pairs = pair_count(n);
  std::uint64_t mask = mask_from_graph(out.canonical);
  std::uint64_t bits = 0;
  for (int p = 0; p < pairs; ++p)
    if (mask >> p & 1U) bits |= std::uint64_t{1} << (pairs - 1 - p);
  out.key = {n, bits};
  out.automorphisms = s.optimal_leaves;
  return out;
}

inline UnlabelledGraph canonical_form(const Graph& g) {
  auto c = canonize(g);
  return {std::move(c.canonical), c.key};
}

inline CanonicalKey canonical_key(const Graph& g) { return canonize(g).key; }

inline std::uint64_t aut_count(const Graph& g) { return canonize(g).automorphisms; }

inline Graph graph_from_key(const CanonicalKey& key) {
  const int pairs = pair_count(key.n);
  std::uint64_t mask = 0;
  for (int p = 0; p < pairs; ++p)
    if (key.bits >> (pairs - 1 - p) & 1U) mask |= std::uint64_t{1} << p;
  return graph_from_mask(key.n, mask);
}

}  // namespace genuslab
