#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "genuslab/genus_search.hpp"
#include "genuslab/graph6.hpp"
#include "genuslab/random.hpp"

using namespace genuslab;

namespace {

// Independent face counter for signed rotation systems. A state is a dart
// plus the current local orientation; faces are orbits, each seen twice
// (once per reading direction).
int oracle_faces(const Graph& g, const EmbeddingScheme& s) {
  auto succ = [&](int v, int u, int dir) {
    const auto& r = s.rotation[v];
    int k = static_cast<int>(std::find(r.begin(), r.end(), u) - r.begin());
    int d = static_cast<int>(r.size());
    return r[((k + dir) % d + d) % d];
  };
  std::set<std::tuple<int, int, int>> seen;
  int orbits = 0;
  for (auto [a, b] : g.edges())
    for (auto [u0, v0] : {std::pair{a, b}, std::pair{b, a}})
      for (int o0 : {1, -1}) {
        if (seen.contains({u0, v0, o0})) continue;
        ++orbits;
        int u = u0, v = v0, o = o0;
        while (!seen.contains({u, v, o})) {
          seen.insert({u, v, o});
          o *= s.sign(u, v);
          int w = succ(v, u, o);
          u = v, v = w;
        }
      }
  int isolated = 0;
  for (int v = 0; v < g.order(); ++v) isolated += g.degree(v) == 0;
  return orbits / 2 + isolated;
}

// Orientable iff vertex signs exist making every edge positive.
bool oracle_orientable(const Graph& g, const EmbeddingScheme& s) {
  std::vector<int> side(g.order(), 0);
  for (int r = 0; r < g.order(); ++r) {
    if (side[r]) continue;
    side[r] = 1;
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : members(g.neighbours(v))) {
        int want = side[v] * s.sign(v, w);
        if (!side[w]) side[w] = want, stack.push_back(w);
        else if (side[w] != want) return false;
      }
    }
  }
  return true;
}

int oracle_genus(const Graph& g, const EmbeddingScheme& s) {
  return 2 * component_count(g) - g.order() + g.size() - oracle_faces(g, s);
}

// Minimum Euler genus by listing every scheme. Signatures range over
// non-tree edges only; tree edges stay positive without loss.
struct BruteForce {
  int orientable = 1 << 20, nonorientable = 1 << 20;
};

BruteForce brute_force_genus(const Graph& g) {
  const int n = g.order();
  EmbeddingScheme s;
  s.rotation.resize(n);
  for (int v = 0; v < n; ++v) s.rotation[v] = members(g.neighbours(v));
  // spanning forest
  std::set<Edge> tree;
  std::vector<int> seen(n, 0);
  for (int r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::vector<int> st{r};
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int w : members(g.neighbours(v)))
        if (!seen[w]) seen[w] = 1, tree.insert({std::min(v, w), std::max(v, w)}), st.push_back(w);
    }
  }
  std::vector<Edge> free_edges;
  for (auto e : g.edges())
    if (!tree.contains(e)) free_edges.push_back(e);
  BruteForce out;
  std::function<void(int)> rotations = [&](int v) {
    if (v == n) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << free_edges.size()); ++m) {
        s.negative.clear();
        for (std::size_t i = 0; i < free_edges.size(); ++i)
          if (m >> i & 1) s.negative.push_back(free_edges[i]);
        s.normalize();
        int h = oracle_genus(g, s);
        if (m == 0) out.orientable = std::min(out.orientable, h);
        else out.nonorientable = std::min(out.nonorientable, h);
      }
      return;
    }
    auto& r = s.rotation[v];
    if (r.size() <= 2) return rotations(v + 1);
    // fix the first neighbour, permute the rest
    std::sort(r.begin() + 1, r.end());
    do rotations(v + 1);
    while (std::next_permutation(r.begin() + 1, r.end()));
  };
  rotations(0);
  return out;
}

double scheme_count(const Graph& g) {
  double c = std::pow(2.0, g.size() - g.order() + component_count(g));
  for (int v = 0; v < g.order(); ++v)
    for (int k = 2; k < g.degree(v); ++k) c *= k;
  return c;
}

EmbeddingScheme planar_k4() {
  EmbeddingScheme s;
  s.rotation = {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}};
  return s;
}

}  // namespace

TEST(FaceTrace, Examples) {
  Graph k4 = Graph::complete(4);
  EXPECT_EQ(trace_faces(k4, planar_k4()).f, 4);
  EXPECT_EQ(euler_genus_of_scheme(k4, planar_k4()).euler_genus, 0);

  Graph k2 = Graph::complete(2);
  EmbeddingScheme s2;
  s2.rotation = {{1}, {0}};
  EXPECT_EQ(trace_faces(k2, s2).f, 1);
  EXPECT_EQ(euler_genus_of_scheme(k2, s2).euler_genus, 0);

  Graph c3 = Graph::cycle(3);
  EmbeddingScheme s3;
  s3.rotation = {{1, 2}, {0, 2}, {0, 1}};
  EXPECT_EQ(trace_faces(c3, s3).f, 2);
}

TEST(FaceTrace, DisconnectedMerging) {
  Graph two = Graph::cycle(3).disjoint_union(Graph::cycle(3));
  EmbeddingScheme s;
  s.rotation = {{1, 2}, {0, 2}, {0, 1}, {4, 5}, {3, 5}, {3, 4}};
  SchemeGenus r = euler_genus_of_scheme(two, s);
  EXPECT_EQ(r.euler_genus, 0);
  EXPECT_EQ(r.merged_faces, 3);

  Graph k2k1 = Graph::complete(2).disjoint_union(Graph(1));
  EmbeddingScheme t;
  t.rotation = {{1}, {0}, {}};
  SchemeGenus q = euler_genus_of_scheme(k2k1, t);
  EXPECT_EQ(q.euler_genus, 0);
  EXPECT_EQ(q.merged_faces, 1);
}

TEST(FaceTrace, MalformedSchemes) {
  Graph c3 = Graph::cycle(3);
  EmbeddingScheme missing;
  missing.rotation = {{1}, {0, 2}, {0, 1}};
  EXPECT_THROW(trace_faces(c3, missing), Error);
  EmbeddingScheme duplicated;
  duplicated.rotation = {{1, 1, 2}, {0, 2}, {0, 1}};
  EXPECT_THROW(trace_faces(c3, duplicated), Error);
}

TEST(FaceTrace, RandomSchemesObeyEulerFormula) {
  Rng rng = Seed{2024}.engine();
  for (int t = 0; t < 10000; ++t) {
    int n = 1 + static_cast<int>(uniform_below(rng, 8));
    Graph g = gnp(n, uniform01(rng), rng);
    EmbeddingScheme s = random_scheme(g, rng, uniform01(rng));
    FaceTrace tr = trace_faces(g, s);
    ASSERT_EQ(std::accumulate(tr.face_lengths.begin(), tr.face_lengths.end(), 0), 2 * g.size());
    ASSERT_EQ(tr.f, oracle_faces(g, s));
    SchemeGenus r = euler_genus_of_scheme(g, s);
    ASSERT_EQ(r.euler_genus, oracle_genus(g, s));
    ASSERT_EQ(r.orientability == Orientability::orientable, oracle_orientable(g, s));
    for (std::size_t c = 0; c < r.component_genus.size(); ++c) {
      ASSERT_GE(r.component_genus[c], 0);
      if (r.orientability == Orientability::orientable) {
        ASSERT_EQ(r.component_genus[c] % 2, 0);
      }
    }
  }
}

TEST(RingelYoungs, ClosedForm) {
  EXPECT_EQ(ringel_youngs(5, Orientability::orientable), 2);
  EXPECT_EQ(ringel_youngs(5, Orientability::nonorientable), 1);
  EXPECT_EQ(ringel_youngs(7, Orientability::nonorientable), 3);
  EXPECT_EQ(ringel_youngs(7, Orientability::orientable), 2);
  EXPECT_EQ(ringel_youngs(3, Orientability::orientable), 0);
  EXPECT_EQ(ringel_youngs(8, Orientability::orientable), 4);
  EXPECT_EQ(ringel_youngs(8, Orientability::nonorientable), 4);
  EXPECT_THROW(ringel_youngs(0, Orientability::orientable), Error);
}

TEST(MinEulerGenus, Examples) {
  EXPECT_EQ(min_euler_genus(Graph::complete(4), GenusMode::either).euler_genus, 0);
  EXPECT_EQ(min_euler_genus(Graph::complete(5), GenusMode::orientable).euler_genus, 2);
  EXPECT_EQ(min_euler_genus(Graph::complete(5), GenusMode::nonorientable).euler_genus, 1);
  EXPECT_EQ(min_euler_genus(Graph::complete_bipartite(3, 3), GenusMode::orientable).euler_genus, 2);
  EXPECT_EQ(min_euler_genus(Graph::complete_bipartite(3, 3), GenusMode::nonorientable).euler_genus, 1);
}

TEST(MinEulerGenus, CompleteGraphsMatchClosedForm) {
  for (int n = 3; n <= 6; ++n) {
    EXPECT_EQ(min_euler_genus(Graph::complete(n), GenusMode::orientable).euler_genus, ringel_youngs(n, Orientability::orientable));
    GenusResult ne = min_euler_genus(Graph::complete(n), GenusMode::nonorientable);
    if (n <= 4) {
      EXPECT_TRUE(ne.planar_convention);
      EXPECT_EQ(ne.euler_genus, 0);
    } else {
      EXPECT_EQ(ne.euler_genus, ringel_youngs(n, Orientability::nonorientable));
    }
  }
  EXPECT_EQ(min_euler_genus(Graph::complete(7), GenusMode::orientable).euler_genus, 2);
}

TEST(MinEulerGenus, NonorientableConventionOnPlanarGraphs) {
  GenusResult r = min_euler_genus(Graph::complete(4), GenusMode::nonorientable);
  EXPECT_TRUE(r.planar_convention);
  ASSERT_TRUE(r.geometric_nonorientable.has_value());
  EXPECT_EQ(*r.geometric_nonorientable, 1);
  GenusResult tree = min_euler_genus(Graph::path(4), GenusMode::nonorientable);
  EXPECT_TRUE(tree.planar_convention);
  EXPECT_FALSE(tree.geometric_nonorientable.has_value());
}

TEST(MinEulerGenus, WitnessAttainsValue) {
  Rng rng = Seed{8}.engine();
  for (int t = 0; t < 100; ++t) {
    Graph g = gnp(2 + static_cast<int>(uniform_below(rng, 6)), 0.6, rng);
    for (GenusMode m : {GenusMode::orientable, GenusMode::nonorientable, GenusMode::either}) {
      GenusResult r = min_euler_genus(g, m);
      ASSERT_EQ(oracle_genus(g, r.witness), r.planar_convention ? 0 : r.euler_genus);
      if (m == GenusMode::orientable) {
        ASSERT_TRUE(oracle_orientable(g, r.witness));
      }
      if (m == GenusMode::nonorientable && !r.planar_convention) {
        ASSERT_FALSE(oracle_orientable(g, r.witness));
      }
    }
  }
}

TEST(MinEulerGenus, AgreesWithExhaustiveSchemeListing) {
  Rng rng = Seed{99}.engine();
  int compared = 0;
  while (compared < 150) {
    Graph g = gnp(3 + static_cast<int>(uniform_below(rng, 4)), 0.6, rng);
    if (scheme_count(g) > 3e5) continue;
    BruteForce b = brute_force_genus(g);
    ASSERT_EQ(min_euler_genus(g, GenusMode::orientable).euler_genus, b.orientable) << write_graph6(g);
    GenusResult ne = min_euler_genus(g, GenusMode::nonorientable);
    if (g.size() > g.order() - component_count(g)) {
      int geometric = ne.planar_convention ? *ne.geometric_nonorientable : ne.euler_genus;
      ASSERT_EQ(geometric, b.nonorientable) << write_graph6(g);
    }
    ASSERT_EQ(min_euler_genus(g, GenusMode::either).euler_genus, std::min(b.orientable, b.nonorientable));
    ++compared;
  }
}

TEST(MinEulerGenus, BlockAdditivity) {
  Rng rng = Seed{17}.engine();
  for (int t = 0; t < 200; ++t) {
    Graph g = gnp(1 + static_cast<int>(uniform_below(rng, 7)), 0.5, rng);
    for (GenusMode m : {GenusMode::orientable, GenusMode::either}) {
      int sum = 0;
      for (const Block& b : block_decomposition(g)) sum += min_euler_genus(block_graph(b), m).euler_genus;
      ASSERT_EQ(min_euler_genus(g, m).euler_genus, sum) << write_graph6(g);
    }
  }
}

TEST(MinEulerGenus, MonotoneUnderEdgeAddition) {
  Rng rng = Seed{23}.engine();
  for (int chain = 0; chain < 12; ++chain) {
    int n = 5 + static_cast<int>(uniform_below(rng, 2));
    Graph g(n);
    std::vector<Edge> pairs;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) pairs.push_back({i, j});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    int prev_o = 0, prev_e = 0;
    for (auto [u, v] : pairs) {
      g.add_edge(u, v);
      int o = min_euler_genus(g, GenusMode::orientable).euler_genus;
      int e = min_euler_genus(g, GenusMode::either).euler_genus;
      ASSERT_GE(o, prev_o);
      ASSERT_GE(e, prev_e);
      prev_o = o, prev_e = e;
    }
  }
}

TEST(MinEulerGenus, CapAndBudget) {
  SearchLimits small;
  small.vertex_cap = 5;
  EXPECT_THROW(min_euler_genus(Graph::complete(6), GenusMode::orientable, small), Error);
  SearchLimits tight;
  tight.node_budget = 1;
  GenusResult r = min_euler_genus(Graph::complete(7), GenusMode::orientable, tight);
  EXPECT_LE(r.lower, 2);
  EXPECT_GE(r.upper, 2);
  if (!r.exact()) {
    EXPECT_EQ(r.certificate, Certificate::budget_interval);
  }
}

TEST(RelevantFaces, Examples) {
  RelevantFaceStats k4 = relevant_face_stats(Graph::complete(4), 0, Variant::E);
  EXPECT_EQ(k4.min_faces, 4);
  EXPECT_EQ(k4.max_faces, 4);
  RelevantFaceStats c4 = relevant_face_stats(Graph::cycle(4), 0, Variant::E);
  EXPECT_EQ(c4.min_faces, 2);
  EXPECT_EQ(c4.max_faces, 2);
  EXPECT_EQ(c4.max_face_size, 4);
  // all orientable embeddings of a cycle are planar
  RelevantFaceStats c4o = relevant_face_stats(Graph::cycle(4), 2, Variant::OE);
  EXPECT_EQ(c4o.min_faces, 2);
  EXPECT_EQ(c4o.max_genus, 0);
  EXPECT_THROW(relevant_face_stats(Graph::complete(5), 0, Variant::E), Error);
}

TEST(RelevantFaces, MatchExhaustiveListing) {
  // K4 at budget 2: orientable schemes give 4 faces (planar) or 2 faces (torus)
  RelevantFaceStats s = relevant_face_stats(Graph::complete(4), 2, Variant::OE);
  EXPECT_EQ(s.min_faces, 2);
  EXPECT_EQ(s.max_faces, 4);
  EXPECT_EQ(s.max_genus, 2);
  RelevantFaceStats ne = relevant_face_stats(Graph::complete(4), 1, Variant::NE);
  EXPECT_EQ(ne.min_faces, 3);
  EXPECT_EQ(ne.max_faces, 3);
}
