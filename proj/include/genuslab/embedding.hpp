#pragma once

// Cellular embeddings as signed rotation systems, and face tracing.
//
// A flag is a dart together with a local sense (+1 / -1). Leaving vertex u
// along dart d in sense s, the walk crosses edge e to w, its sense becomes
// s*sign(e), and it continues with the rotation successor (sense +1) or
// predecessor (sense -1) of the reversed dart at w. Every face is traced
// twice, once in each direction; the reverse traversal of flag (d, s) is
// the flag (reverse(d), -s*sign(e)), so each trace also consumes its mirror.

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <vector>

#include "genuslab/graph.hpp"

namespace genuslab {

enum class Orientability { orientable, nonorientable };

inline const char* to_string(Orientability o) { return o == Orientability::orientable ? "orientable" : "nonorientable"; }

struct EmbeddingScheme {
  /// rotation[v] lists the neighbours of v in cyclic order.
  std::vector<std::vector<int>> rotation;
  /// Edges carrying sign -1, as (u, v) with u < v. All other edges are +1.
  std::vector<Edge> negative;

  int sign(int u, int v) const {
    Edge e{std::min(u, v), std::max(u, v)};
    return std::binary_search(negative.begin(), negative.end(), e) ? -1 : 1;
  }
  void normalize() {
    std::sort(negative.begin(), negative.end());
    negative.erase(std::unique(negative.begin(), negative.end()), negative.end());
  }
  friend bool operator==(const EmbeddingScheme&, const EmbeddingScheme&) = default;
};

struct Dart {
  int tail = 0, head = 0;
  friend bool operator==(const Dart&, const Dart&) = default;
};

struct FaceTrace {
  std::vector<std::vector<Dart>> faces;  // an isolated vertex contributes one empty walk
  std::vector<int> face_component;       // index into components(g) for each face
  std::vector<int> face_lengths;
  int f = 0;                             // unmerged count: sum over components
};

namespace detail {

struct DartIndex {
  std::vector<Edge> edges;
  std::map<Edge, int> edge_id;
  // position of neighbour u in rotation[v]
  std::vector<std::vector<int>> slot;

  int dart(int tail, int head) const {
    int e = edge_id.at({std::min(tail, head), std::max(tail, head)});
    return 2 * e + (tail < head ? 0 : 1);
  }
  int tail(int d) const { return d & 1 ? edges[d >> 1].second : edges[d >> 1].first; }
  int head(int d) const { return d & 1 ? edges[d >> 1].first : edges[d >> 1].second; }
};

inline DartIndex index_scheme(const Graph& g, const EmbeddingScheme& s) {
  const int n = g.order();
  if (static_cast<int>(s.rotation.size()) != n) throw Error("malformed scheme: rotation count differs from vertex count");
  DartIndex ix;
  ix.edges = g.edges();
  for (int i = 0; i < static_cast<int>(ix.edges.size()); ++i) ix.edge_id[ix.edges[i]] = i;
  ix.slot.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int v = 0; v < n; ++v) {
    VertexSet seen = 0;
    const auto& rot = s.rotation[v];
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
      int u = rot[i];
      if (u < 0 || u >= n || !g.has_edge(v, u)) throw Error("malformed scheme: dart missing from graph at vertex " + std::to_string(v + 1));
      if (seen >> u & 1U) throw Error("malformed scheme: dart duplicated at vertex " + std::to_string(v + 1));
      seen |= bit(u);
      ix.slot[v][u] = i;
    }
    if (seen != g.neighbours(v)) throw Error("malformed scheme: dart missing at vertex " + std::to_string(v + 1));
  }
  for (auto e : s.negative)
    if (!ix.edge_id.contains({std::min(e.first, e.second), std::max(e.first, e.second)}))
      throw Error("malformed scheme: signature names a non-edge");
  return ix;
}

}  // namespace detail

inline FaceTrace trace_faces(const Graph& g, const EmbeddingScheme& s) {
  auto ix = detail::index_scheme(g, s);
  const int m = static_cast<int>(ix.edges.size());
  std::vector<int> comp_of(static_cast<std::size_t>(g.order()), -1);
  {
    auto comps = component_masks(g);
    for (int c = 0; c < static_cast<int>(comps.size()); ++c)
      for (int v : members(comps[c])) comp_of[v] = c;
  }
  std::vector<int> sign(static_cast<std::size_t>(m), 1);
  for (auto e : s.negative) sign[ix.edge_id.at({std::min(e.first, e.second), std::max(e.first, e.second)})] = -1;

  FaceTrace t;
  std::vector<char> used(static_cast<std::size_t>(4 * m), 0);
  auto flag = [](int d, int sense) { return 2 * d + (sense > 0 ? 0 : 1); };
  for (int start = 0; start < 4 * m; ++start) {
    if (used[start]) continue;
    std::vector<Dart> walk;
    int d = start >> 1, sense = start & 1 ? -1 : 1;
    int f = start;
    do {
      used[f] = 1;
      int e = d >> 1;
      int u = ix.tail(d), w = ix.head(d);
      walk.push_back({u, w});
      sense *= sign[e];
      used[flag(d ^ 1, -sense)] = 1;
      const auto& rot = s.rotation[w];
      const int deg = static_cast<int>(rot.size());
      int at = ix.slot[w][u];
      int next = rot[(at + (sense > 0 ? 1 : deg - 1)) % deg];
      d = ix.dart(w, next);
      f = flag(d, sense);
    } while (f != start);
    t.face_component.push_back(comp_of[walk.front().tail]);
    t.face_lengths.push_back(static_cast<int>(walk.size()));
    t.faces.push_back(std::move(walk));
  }
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0) {
      t.faces.emplace_back();
      t.face_component.push_back(comp_of[v]);
      t.face_lengths.push_back(0);
    }
  t.f = static_cast<int>(t.faces.size());
  return t;
}

/// Orientable iff vertex sign flips can make every edge +1: propagate flips
/// along a spanning forest and test the remaining edges.
inline bool scheme_orientable(const Graph& g, const EmbeddingScheme& s, VertexSet within) {
  std::vector<int> flip(static_cast<std::size_t>(g.order()), 0);
  for (int root : members(within)) {
    if (flip[root]) continue;
    flip[root] = 1;
    std::vector<int> queue{root};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int u = queue[q];
      for (int w : members(g.neighbours(u) & within)) {
        int want = flip[u] * s.sign(u, w);
        if (!flip[w]) {
          flip[w] = want;
          queue.push_back(w);
        } else if (flip[w] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

struct SchemeGenus {
  int euler_genus = 0;
  Orientability orientability = Orientability::orientable;
  int merged_faces = 0;                 // sum_i f_i - (kappa - 1)
  std::vector<int> component_genus;     // h_i per component, components(g) order
  std::vector<int> component_faces;
};

/// Per-component Euler genus from v - e + f = 2 - h, summed; faces merged
/// across components by identifying their outer faces.
inline SchemeGenus euler_genus_of_scheme(const Graph& g, const EmbeddingScheme& s) {
  FaceTrace t = trace_faces(g, s);
  auto comps = component_masks(g);
  SchemeGenus r;
  r.component_faces.assign(comps.size(), 0);
  for (int c : t.face_component) ++r.component_faces[c];
  bool orientable = true;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Graph h = g.induced(comps[c]);
    int v = h.order(), e = h.size(), f = r.component_faces[c];
    int hc = 2 - v + e - f;
    r.component_genus.push_back(hc);
    r.euler_genus += hc;
    orientable = orientable && scheme_orientable(g, s, comps[c]);
  }
  r.orientability = orientable ? Orientability::orientable : Orientability::nonorientable;
  int kappa = static_cast<int>(comps.size());
  r.merged_faces = kappa == 0 ? 0 : t.f - (kappa - 1);
  return r;
}

/// Uniformly random rotation at each vertex; each edge negative with
/// probability `negative_probability`.
template <class Rng>
EmbeddingScheme random_scheme(const Graph& g, Rng& rng, double negative_probability = 0.5) {
  EmbeddingScheme s;
  s.rotation.resize(static_cast<std::size_t>(g.order()));
  for (int v = 0; v < g.order(); ++v) {
    s.rotation[v] = members(g.neighbours(v));
    auto& r = s.rotation[v];
    for (std::size_t i = r.size(); i > 1; --i) std::swap(r[i - 1], r[rng() % i]);
  }
  for (auto e : g.edges())
    if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < negative_probability) s.negative.push_back(e);
  s.normalize();
  return s;
}

}  // namespace genuslab
