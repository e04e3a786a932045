#pragma once

// Structural statistics: fragment, pendant appearances, minors, blocks.

#include <set>
#include <unordered_set>
#include <vector>

#include "genuslab/canonical.hpp"
#include "genuslab/graph.hpp"

namespace genuslab {

struct FragmentReport {
  std::vector<int> giant;   // largest component; ties go to the lexicographically least vertex list
  UnlabelledGraph fragment; // canonical form of the graph on the remaining vertices
  int frag = 0;
  int kappa = 0;
};

inline VertexSet giant_component(const Graph& g) {
  if (g.order() == 0) throw Error("empty graph has no largest component");
  // Components come ordered by least vertex, and disjoint sorted lists of
  // equal length compare by their first element, so the first maximum wins.
  VertexSet best = 0;
  for (VertexSet c : component_masks(g))
    if (popcount(c) > popcount(best)) best = c;
  return best;
}

/// Order of the fragment without building its canonical form.
inline int frag_order(const Graph& g) {
  if (g.order() == 0) return 0;
  return g.order() - popcount(giant_component(g));
}

inline FragmentReport fragment_report(const Graph& g) {
  VertexSet giant = giant_component(g);
  FragmentReport r;
  r.giant = members(giant);
  Graph rest = g.induced(full_set(g.order()) & ~giant);
  r.frag = rest.order();
  r.kappa = component_count(g);
  r.fragment = canonical_form(rest);
  return r;
}

/// Number of proper vertex sets W with G[W] isomorphic to `h` and exactly
/// one edge between W and the rest.
inline long pendant_appearances(const Graph& g, const Graph& h) {
  if (h.order() == 0 || !is_connected(h)) throw Error("pattern must be connected");
  const int n = g.order(), k = h.order();
  if (k >= n) return 0;
  const CanonicalKey target = canonical_key(h);
  const int target_edges = h.size();
  long count = 0;
  // Walk all k-subsets in colex order (Gosper's hack).
  for (VertexSet w = full_set(k); w < bit(n); ) {
    int inside = 0, leaving = 0;
    for (VertexSet r = w; r; r &= r - 1) {
      VertexSet nb = g.neighbours(std::countr_zero(r));
      inside += popcount(nb & w);
      leaving += popcount(nb & ~w);
    }
    if (leaving == 1 && inside / 2 == target_edges) {
      Graph sub = g.induced(w);
      if (is_connected(sub) && canonical_key(sub) == target) ++count;
    }
    VertexSet low = w & (~w + 1);
    VertexSet ripple = w + low;
    if (ripple == 0) break;
    w = ripple | (((w ^ ripple) >> 2) / low);
  }
  return count;
}

inline long pendant_appearances(const Graph& g, const UnlabelledGraph& h) { return pendant_appearances(g, h.graph()); }

namespace detail {

// Is there an injective map of h's vertices into g preserving h's edges?
inline bool embeds_as_subgraph(const Graph& g, const Graph& h) {
  const int k = h.order();
  if (k > g.order() || h.size() > g.size()) return false;
  std::vector<int> order;
  VertexSet placed = 0;
  // Grow a connectivity-first order starting at a max-degree vertex.
  while (static_cast<int>(order.size()) < k) {
    int pick = -1, best = -1;
    for (int v = 0; v < k; ++v) {
      if (placed >> v & 1U) continue;
      int score = popcount(h.neighbours(v) & placed) * 64 + h.degree(v);
      if (score > best) best = score, pick = v;
    }
    order.push_back(pick);
    placed |= bit(pick);
  }
  std::vector<int> image(static_cast<std::size_t>(k), -1);
  auto place = [&](auto&& self, int idx, VertexSet taken) -> bool {
    if (idx == k) return true;
    const int v = order[idx];
    for (int x = 0; x < g.order(); ++x) {
      if (taken >> x & 1U || g.degree(x) < h.degree(v)) continue;
      bool ok = true;
      for (int j = 0; j < idx && ok; ++j)
        if (h.has_edge(v, order[j]) && !g.has_edge(x, image[order[j]])) ok = false;
      if (!ok) continue;
      image[v] = x;
      if (self(self, idx + 1, taken | bit(x))) return true;
    }
    return false;
  };
  return place(place, 0, 0);
}

inline bool minor_search(const Graph& g, const Graph& h, std::unordered_set<CanonicalKey, CanonicalKeyHash>& failed) {
  if (g.order() < h.order() || g.size() < h.size()) return false;
  if (embeds_as_subgraph(g, h)) return true;
  if (g.order() == h.order()) return false;
  CanonicalKey key = canonical_key(g);
  if (failed.contains(key)) return false;
  for (auto [u, v] : g.edges())
    if (minor_search(g.contracted(u, v), h, failed)) return true;
  failed.insert(key);
  return false;
}

}  // namespace detail

inline constexpr int kMinorCap = 9;

/// True iff h is a minor of g. Every minor is a subgraph of some
/// contraction of g, so the search contracts edges and tests subgraph
/// containment, memoizing failed hosts by canonical form.
inline bool is_minor(const Graph& h, const Graph& g, int cap = kMinorCap) {
  if (g.order() > cap || h.order() > cap) throw Error("minor test cap exceeded");
  if (h.order() > g.order()) return false;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> failed;
  return detail::minor_search(g, h, failed);
}

// ---- blocks -----------------------------------------------------------------

struct Block {
  std::vector<int> vertices;  // sorted
  std::vector<Edge> edges;    // u < v, sorted
  bool is_bridge() const { return edges.size() == 1; }
};

/// 2-connected components and bridges (Hopcroft-Tarjan). Isolated vertices
/// belong to no block. Blocks are sorted by their edge lists.
inline std::vector<Block> block_decomposition(const Graph& g) {
  const int n = g.order();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(disc);
  std::vector<Edge> stack;
  std::vector<Block> blocks;
  int timer = 0;
  auto dfs = [&](auto&& self, int u, int parent) -> void {
    disc[u] = low[u] = timer++;
    for (VertexSet rest = g.neighbours(u); rest; rest &= rest - 1) {
      int w = std::countr_zero(rest);
      if (w == parent) continue;
      if (disc[w] < 0) {
        stack.emplace_back(u, w);
        self(self, w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          Block b;
          std::set<int> vs;
          while (true) {
            Edge e = stack.back();
            stack.pop_back();
            b.edges.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
            vs.insert(e.first);
            vs.insert(e.second);
            if (e == Edge{u, w}) break;
          }
          std::sort(b.edges.begin(), b.edges.end());
          b.vertices.assign(vs.begin(), vs.end());
          blocks.push_back(std::move(b));
        }
      } else if (disc[w] < disc[u]) {
        stack.emplace_back(u, w);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(dfs, v, -1);
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.edges < b.edges; });
  return blocks;
}

/// The block as a standalone graph on its own vertices (relabelled in order).
inline Graph block_graph(const Block& b) {
  Graph h(static_cast<int>(b.vertices.size()));
  auto index = [&](int v) { return static_cast<int>(std::lower_bound(b.vertices.begin(), b.vertices.end(), v) - b.vertices.begin()); };
  for (auto [u, v] : b.edges) h.add_edge(index(u), index(v));
  return h;
}

}  // namespace genuslab
