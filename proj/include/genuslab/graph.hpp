#pragma once

// Simple labelled graphs on a small vertex set, stored as adjacency bitmasks.
//
// Vertices are indexed 0..n-1 internally; vertex i is the vertex labelled
// i+1 in the mathematical convention {1..n}. Everything that prints
// vertices (JSON reports, CLI) adds one.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace genuslab {

/// Error raised by every library operation on invalid input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxVertices = 32;

using VertexSet = std::uint32_t;
using Edge = std::pair<int, int>;

inline VertexSet bit(int v) { return VertexSet{1} << v; }
inline int popcount(VertexSet s) { return std::popcount(s); }
inline VertexSet full_set(int n) {
  return n >= 32 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > kMaxVertices) throw Error("vertex count out of range");
  }

  static Graph from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }
  static Graph from_edges(int n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }
  static Graph complete(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.adj_[v] = full_set(n) & ~bit(v);
    return g;
  }
  static Graph cycle(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
  }
  static Graph path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
  }
  /// K_{1,leaves} with the centre at vertex 0.
  static Graph star(int leaves) {
    Graph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
  }
  static Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
      for (int v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
  }

  int order() const { return n_; }
  int size() const {
    int twice = 0;
    for (VertexSet a : adj_) twice += popcount(a);
    return twice / 2;
  }
  bool empty() const { return n_ == 0; }

  bool has_edge(int u, int v) const { return (adj_[check(u)] >> check(v)) & 1U; }
  void add_edge(int u, int v) {
    check(u);
    check(v);
    if (u == v) throw Error("loops are not allowed");
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }
  void remove_edge(int u, int v) {
    adj_[check(u)] &= ~bit(check(v));
    adj_[v] &= ~bit(u);
  }

  VertexSet neighbours(int v) const { return adj_[check(v)]; }
  int degree(int v) const { return popcount(neighbours(v)); }

  /// Edges {u,v} with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u)
      for (VertexSet rest = adj_[u] & ~full_set(u + 1); rest; rest &= rest - 1)
        out.emplace_back(u, std::countr_zero(rest));
    return out;
  }

  /// Subgraph induced on `w`, relabelled order-preservingly onto 0..|w|-1.
  Graph induced(VertexSet w) const {
    if (w & ~full_set(n_)) throw Error("vertex set is not a subset of the graph");
    std::vector<int> index(static_cast<std::size_t>(n_), -1);
    int k = 0;
    for (int v = 0; v < n_; ++v)
      if (w >> v & 1U) index[v] = k++;
    Graph h(k);
    for (int v = 0; v < n_; ++v) {
      if (index[v] < 0) continue;
      for (VertexSet rest = adj_[v] & w; rest; rest &= rest - 1)
        h.adj_[index[v]] |= bit(index[std::countr_zero(rest)]);
    }
    return h;
  }

  Graph without_vertex(int v) const { return induced(full_set(n_) & ~bit(check(v))); }

  /// Contracts the edge {u,v}: v is merged into u and removed; the remaining
  /// vertices keep their relative order.
  Graph contracted(int u, int v) const {
    if (!has_edge(u, v)) throw Error("contraction needs an edge");
    Graph h = *this;
    VertexSet merged = (h.adj_[u] | h.adj_[v]) & ~bit(u) & ~bit(v);
    for (int x = 0; x < n_; ++x) h.adj_[x] &= ~bit(v);
    h.adj_[u] = merged;
    for (VertexSet rest = merged; rest; rest &= rest - 1) h.adj_[std::countr_zero(rest)] |= bit(u);
    return h.without_vertex(v);
  }

  /// Relabels vertex i as perm[i].
  Graph permuted(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != n_) throw Error("permutation size mismatch");
    Graph h(n_);
    for (int v = 0; v < n_; ++v)
      for (VertexSet rest = adj_[v]; rest; rest &= rest - 1)
        h.adj_[perm[v]] |= bit(perm[std::countr_zero(rest)]);
    return h;
  }

  /// Vertices of `other` are appended after this graph's vertices.
  Graph disjoint_union(const Graph& other) const {
    Graph h(n_ + other.n_);
    for (int v = 0; v < n_; ++v) h.adj_[v] = adj_[v];
    for (int v = 0; v < other.n_; ++v) h.adj_[n_ + v] = other.adj_[v] << n_;
    return h;
  }

  Graph complement() const {
    Graph h(n_);
    for (int v = 0; v < n_; ++v) h.adj_[v] = full_set(n_) & ~adj_[v] & ~bit(v);
    return h;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int check(int v) const {
    if (v < 0 || v >= n_) throw Error("vertex index out of range");
    return v;
  }

  int n_ = 0;
  std::vector<VertexSet> adj_;
};

// ---- upper-triangle bit encoding -------------------------------------------
//
// Pair (i,j), i<j, sits at position j(j-1)/2 + i: columns of the upper
// triangle, top to bottom. graph6 and host enumeration share this order.

inline int pair_count(int n) { return n * (n - 1) / 2; }
inline int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }

/// Graph whose pair p is an edge iff bit p of `mask` is set (n <= 11).
inline Graph graph_from_mask(int n, std::uint64_t mask) {
  Graph g(n);
  int p = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++p)
      if (mask >> p & 1U) g.add_edge(i, j);
  return g;
}

inline std::uint64_t mask_from_graph(const Graph& g) {
  if (g.order() > 11) throw Error("edge mask needs at most 11 vertices");
  std::uint64_t mask = 0;
  for (auto [u, v] : g.edges()) mask |= std::uint64_t{1} << pair_index(u, v);
  return mask;
}

// ---- basic structure --------------------------------------------------------

/// Vertex set of the component containing `v`.
inline VertexSet component_of(const Graph& g, int v) {
  VertexSet seen = bit(v), frontier = bit(v);
  while (frontier) {
    VertexSet next = 0;
    for (VertexSet f = frontier; f; f &= f - 1) next |= g.neighbours(std::countr_zero(f));
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

/// Components as bitmasks, ordered by smallest vertex.
inline std::vector<VertexSet> component_masks(const Graph& g) {
  std::vector<VertexSet> out;
  VertexSet left = full_set(g.order());
  while (left) {
    VertexSet c = component_of(g, std::countr_zero(left));
    out.push_back(c);
    left &= ~c;
  }
  return out;
}

inline std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  for (; s; s &= s - 1) out.push_back(std::countr_zero(s));
  return out;
}

/// Partition of the vertex set into connected parts, each sorted, ordered by
/// smallest vertex.
inline std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<std::vector<int>> out;
  for (VertexSet c : component_masks(g)) out.push_back(members(c));
  return out;
}

inline int component_count(const Graph& g) { return static_cast<int>(component_masks(g).size()); }

inline bool is_connected(const Graph& g) { return g.order() <= 1 || component_of(g, 0) == full_set(g.order()); }

inline int leaves(const Graph& g) {
  int count = 0;
  for (int v = 0; v < g.order(); ++v) count += g.degree(v) == 1;
  return count;
}

inline int max_degree(const Graph& g) {
  int best = 0;
  for (int v = 0; v < g.order(); ++v) best = std::max(best, g.degree(v));
  return best;
}

inline Graph induced_subgraph(const Graph& g, std::span<const int> w) {
  VertexSet mask = 0;
  for (int v : w) {
    if (v < 0 || v >= g.order()) throw Error("vertex set is not a subset of the graph");
    mask |= bit(v);
  }
  return g.induced(mask);
}

/// Smallest cycle length, or 0 for a forest.
inline int girth(const Graph& g) {
  int best = 0;
  for (int root = 0; root < g.order(); ++root) {
    std::vector<int> dist(static_cast<std::size_t>(g.order()), -1), parent(dist);
    std::vector<int> queue{root};
    dist[root] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int u = queue[q];
      for (VertexSet rest = g.neighbours(u); rest; rest &= rest - 1) {
        int w = std::countr_zero(rest);
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          int len = dist[u] + dist[w] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

}  // namespace genuslab
