#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "genuslab/census.hpp"
#include "genuslab/graph6.hpp"
#include "genuslab/random.hpp"
#include "genuslab/structure.hpp"

using namespace genuslab;

namespace {

// Straight transcription of the graph6 layout: one byte 63+n, then the
// upper triangle column by column, six bits per byte, each byte offset by 63.
std::string graph6_oracle(const Graph& g) {
  std::string out(1, static_cast<char>(63 + g.order()));
  std::vector<int> bits;
  for (int j = 1; j < g.order(); ++j)
    for (int i = 0; i < j; ++i) bits.push_back(g.has_edge(i, j));
  while (bits.size() % 6) bits.push_back(0);
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int byte = 0;
    for (int b = 0; b < 6; ++b) byte = 2 * byte + bits[k + b];
    out += static_cast<char>(63 + byte);
  }
  return out;
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Number of unlabelled graphs on n vertices by Burnside over S_n acting on pairs.
std::uint64_t burnside_count(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t total = 0;
  do {
    std::set<std::pair<int, int>> seen;
    int cycles = 0;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        if (seen.contains({i, j})) continue;
        ++cycles;
        int a = i, b = j;
        while (!seen.contains({a, b})) {
          seen.insert({a, b});
          int x = perm[a], y = perm[b];
          a = std::min(x, y), b = std::max(x, y);
        }
      }
    total += std::uint64_t{1} << cycles;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / factorial(n);
}

}  // namespace

TEST(Graph6, KnownStrings) {
  EXPECT_EQ(write_graph6(Graph::complete(3)), "Bw");
  EXPECT_EQ(write_graph6(Graph(1)), "@");
  EXPECT_EQ(parse_graph6("Bw").size(), 3);
  EXPECT_EQ(parse_graph6("@").order(), 1);
  EXPECT_EQ(parse_graph6("@").size(), 0);
  EXPECT_EQ(write_graph6(Graph::complete(5)), "D~{");
}

TEST(Graph6, RoundTripRandom) {
  Rng rng = Seed{7}.engine();
  for (int t = 0; t < 10000; ++t) {
    int n = 1 + static_cast<int>(uniform_below(rng, 9));
    Graph g = gnp(n, uniform01(rng), rng);
    std::string s = write_graph6(g);
    ASSERT_EQ(s, graph6_oracle(g));
    ASSERT_EQ(mask_from_graph(parse_graph6(s)), mask_from_graph(g));
    ASSERT_EQ(parse_graph6(s).order(), n);
  }
}

TEST(Graph6, RoundTripCensus) {
  Census census(1);
  for (int n = 1; n <= 7; ++n)
    for (const auto& key : census.level(n)) {
      Graph g = graph_from_key(key);
      ASSERT_EQ(write_graph6(parse_graph6(write_graph6(g))), write_graph6(g));
    }
}

TEST(Graph6, Errors) {
  EXPECT_THROW(parse_graph6(""), Error);
  EXPECT_THROW(parse_graph6("Bww"), Error);   // too long
  EXPECT_THROW(parse_graph6("C"), Error);     // too short
  EXPECT_THROW(parse_graph6("~"), Error);     // long form n > 62 is not supported
}

TEST(Graph6, ErrorsNameByteOffsets) {
  try {
    parse_graph6("B\x01");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("byte 1"), std::string::npos) << e.what();
  }
}

TEST(GraphBasics, Handshake) {
  Rng rng = Seed{3}.engine();
  for (int t = 0; t < 500; ++t) {
    Graph g = gnp(1 + static_cast<int>(uniform_below(rng, 10)), 0.4, rng);
    int sum = 0;
    for (int v = 0; v < g.order(); ++v) sum += g.degree(v);
    ASSERT_EQ(sum, 2 * g.size());
  }
}

TEST(GraphBasics, NamedGraphs) {
  EXPECT_EQ(Graph::complete(5).size(), 10);
  EXPECT_EQ(Graph::cycle(5).size(), 5);
  EXPECT_EQ(Graph::path(4).size(), 3);
  EXPECT_EQ(Graph::complete_bipartite(3, 3).size(), 9);
  EXPECT_EQ(girth(Graph::complete_bipartite(3, 3)), 4);
  EXPECT_EQ(leaves(Graph::star(3)), 3);
  EXPECT_EQ(max_degree(Graph::star(3)), 3);
  EXPECT_EQ(component_count(Graph(3)), 3);
}

TEST(GraphBasics, MaskEnumerationOrderMatchesGraph6) {
  // pair (i, j), i < j, sits at bit j(j-1)/2 + i, which is graph6 column order
  Graph g = graph_from_mask(4, 1ULL << pair_index(1, 3));
  EXPECT_TRUE(g.has_edge(1, 3));
  EXPECT_EQ(g.size(), 1);
}

TEST(Canonical, InvariantUnderPermutation) {
  Rng rng = Seed{11}.engine();
  for (int t = 0; t < 60; ++t) {
    int n = 1 + static_cast<int>(uniform_below(rng, 7));
    Graph g = gnp(n, 0.5, rng);
    CanonicalKey k = canonical_key(g);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int p = 0; p < 100; ++p) {
      std::shuffle(perm.begin(), perm.end(), rng);
      ASSERT_EQ(canonical_key(g.permuted(perm)), k);
    }
  }
}

TEST(Canonical, DistinguishesNonIsomorphic) {
  EXPECT_NE(canonical_key(Graph::path(4)), canonical_key(Graph::star(3)));
  EXPECT_NE(canonical_key(Graph::cycle(6)), canonical_key(Graph::cycle(3).disjoint_union(Graph::cycle(3))));
}

TEST(Canonical, AutomorphismsTimesCopiesIsFactorial) {
  Rng rng = Seed{5}.engine();
  for (int t = 0; t < 40; ++t) {
    int n = 1 + static_cast<int>(uniform_below(rng, 6));
    Graph g = gnp(n, 0.5, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::uint64_t> copies;
    do copies.insert(mask_from_graph(g.permuted(perm)));
    while (std::next_permutation(perm.begin(), perm.end()));
    ASSERT_EQ(aut_count(g) * copies.size(), factorial(n));
  }
  EXPECT_EQ(aut_count(Graph::complete(5)), 120U);
  EXPECT_EQ(aut_count(Graph::cycle(5)), 10U);
  EXPECT_EQ(aut_count(Graph::complete_bipartite(3, 3)), 72U);
}

TEST(Canonical, KeyRoundTrip) {
  Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}});
  EXPECT_EQ(canonical_key(graph_from_key(canonical_key(g))), canonical_key(g));
}

TEST(Census, MatchesBurnside) {
  Census census(2);
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(census.level(n).size(), burnside_count(n)) << "n=" << n;
}

TEST(Census, OrbitSizesSumToLabelledCount) {
  Census census(1);
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t total = 0;
    for (const auto& key : census.level(n)) total += factorial(n) / aut_count(graph_from_key(key));
    EXPECT_EQ(total, std::uint64_t{1} << pair_count(n)) << "n=" << n;
  }
}

TEST(Structure, Blocks) {
  Graph bowtie = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  EXPECT_EQ(block_decomposition(bowtie).size(), 2U);
  EXPECT_EQ(block_decomposition(Graph::path(5)).size(), 4U);
  Graph k5p = Graph::complete(5).disjoint_union(Graph(1));
  k5p.add_edge(4, 5);
  auto blocks = block_decomposition(k5p);
  ASSERT_EQ(blocks.size(), 2U);
  int bridges = 0, big = 0;
  for (const auto& b : blocks) bridges += b.is_bridge(), big += b.vertices.size() == 5;
  EXPECT_EQ(bridges, 1);
  EXPECT_EQ(big, 1);
}

TEST(Structure, Minors) {
  EXPECT_TRUE(is_minor(Graph::complete(3), Graph::cycle(5)));
  EXPECT_FALSE(is_minor(Graph::complete(4), Graph::cycle(5)));
  EXPECT_TRUE(is_minor(Graph::complete(4), Graph::complete(5)));
  // the octahedron K_{2,2,2} has a K4 minor but no K5 minor
  Graph oct = Graph::complete(6);
  oct.remove_edge(0, 1), oct.remove_edge(2, 3), oct.remove_edge(4, 5);
  EXPECT_TRUE(is_minor(Graph::complete(4), oct));
  EXPECT_FALSE(is_minor(Graph::complete(5), oct));
}

TEST(Structure, GiantTieBreakByVertexOrder) {
  Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
  FragmentReport r = fragment_report(g);
  EXPECT_EQ(r.giant, (std::vector<int>{0, 1}));
  EXPECT_EQ(r.frag, 2);
  EXPECT_EQ(r.kappa, 2);
  EXPECT_EQ(frag_order(Graph(1)), 0);
}

TEST(Structure, PendantAppearances) {
  EXPECT_EQ(pendant_appearances(Graph::star(3), Graph(1)), 3);
  EXPECT_EQ(pendant_appearances(Graph::path(3), Graph(1)), 2);
  // K2 hanging off P4's ends: {0,1} joined by edge 1-2, {2,3} by 1-2
  EXPECT_EQ(pendant_appearances(Graph::path(4), Graph::complete(2)), 2);
  EXPECT_EQ(pendant_appearances(Graph::complete(3), Graph::complete(3)), 0);
}
