#include <cmath>
#include <filesystem>
#include <fstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <gtest/gtest.h>

#include "genuslab/catalog.hpp"
#include "genuslab/lab.hpp"

using namespace genuslab;

namespace {

bool planar_oracle(const Graph& g) {
  boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> b(g.order());
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, b);
  return boost::boyer_myrvold_planarity_test(b);
}

ClassSpec spec(const std::string& text) { return parse_class_spec(text); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("genuslab-test-" + std::to_string(::getpid()) + "-" +
                                                     std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST(GenusFunction, ParseAndEvaluate) {
  EXPECT_EQ(GenusFunction::parse("const:2")(9), 2);
  GenusFunction t = GenusFunction::parse("table:0,0,1,3");
  EXPECT_EQ(t(3), 1);
  EXPECT_THROW(t(5), Error);
  EXPECT_EQ(GenusFunction::parse("pow:1,1.5")(4), 8);
  EXPECT_EQ(GenusFunction::parse("nlogn")(1), 0);
  EXPECT_EQ(GenusFunction::parse("nlogn")(10), 4);
  EXPECT_EQ(GenusFunction::parse("ry")(5), 2);
  EXPECT_EQ(GenusFunction::parse("ry")(7), 3);
  EXPECT_THROW(GenusFunction::parse("const:-1"), Error);
  EXPECT_THROW(GenusFunction::parse("bogus"), Error);
  EXPECT_EQ(GenusFunction::parse("table:1,2").to_string(), "table:1,2");
}

TEST(GenusFunction, MonotoneFlagAndRunningMaximum) {
  GenusFunction g = GenusFunction::parse("table:0,2,1,3");
  EXPECT_FALSE(g.non_decreasing_on(1, 4));
  EXPECT_TRUE(g.non_decreasing_on(3, 4));
  EXPECT_EQ(g.monotonized(4).values(4), (std::vector<int>{0, 2, 2, 3}));
}

TEST(ClassSpecText, ParseAndFingerprint) {
  ClassSpec s = spec("OE/hereditary/unlabelled/const:1");
  EXPECT_EQ(s.variant, Variant::OE);
  EXPECT_EQ(s.closure, Closure::hereditary);
  EXPECT_FALSE(s.labelled);
  EXPECT_EQ(s.describe(), "OE/hereditary/unlabelled/const:1");
  EXPECT_EQ(s.fingerprint(5), spec("OE/hereditary/unlabelled/table:1,1,1,1,1").fingerprint(5));
  EXPECT_NE(s.fingerprint(5), spec("OE/hereditary/labelled/const:1").fingerprint(5));
  EXPECT_THROW(spec("XX"), Error);
  EXPECT_THROW(spec("E/plain/sideways"), Error);
}

TEST(Membership, Examples) {
  GenusOracle o;
  EXPECT_TRUE(o.member(Graph::complete(4), spec("E/plain/labelled/const:0")));
  EXPECT_TRUE(o.member(Graph::complete(5), spec("OE/plain/labelled/const:2")));
  EXPECT_FALSE(o.member(Graph::complete(5), spec("OE/plain/labelled/const:1")));
  EXPECT_TRUE(o.member(Graph::complete(5), spec("OE/hereditary/labelled/table:0,0,0,0,2")));
  EXPECT_TRUE(o.member(Graph::complete(5), spec("NE/plain/labelled/const:1")));
  EXPECT_FALSE(o.member(Graph::complete(5), spec("OE_NE/plain/labelled/const:1")));
  EXPECT_TRUE(o.member(Graph::complete(5), spec("E/plain/labelled/const:1")));
  // NE at budget 0 is the planar class
  EXPECT_TRUE(o.member(Graph::complete(4), spec("NE/plain/labelled/const:0")));
}

TEST(Membership, HereditaryNeedsEverySubset) {
  GenusOracle o;
  // K6 has Euler genus 2 orientably; its K5 subsets need budget 2 at order 5
  ClassSpec loose = spec("OE/hereditary/labelled/table:0,0,0,0,2,2");
  ClassSpec tight = spec("OE/hereditary/labelled/table:0,0,0,0,0,2");
  EXPECT_TRUE(o.member(Graph::complete(6), loose));
  EXPECT_FALSE(o.member(Graph::complete(6), tight));
  EXPECT_TRUE(o.member(Graph::complete(6), spec("OE/plain/labelled/table:0,0,0,0,0,2")));
}

TEST(Membership, MinorClosure) {
  GenusOracle o;
  // K5 with one edge subdivided: every 5-vertex induced subgraph is planar,
  // but contracting the subdivision gives K5 back
  Graph g = Graph::complete(5).disjoint_union(Graph(1));
  g.remove_edge(0, 1);
  g.add_edge(0, 5), g.add_edge(1, 5);
  ClassSpec budget = spec("E/plain/labelled/table:0,0,0,0,0,1");
  budget.closure = Closure::hereditary;
  EXPECT_TRUE(o.member(g, budget));
  budget.closure = Closure::minor;
  EXPECT_FALSE(o.member(g, budget));
  // proper minors of K_{3,3} are planar
  EXPECT_TRUE(o.member(Graph::complete_bipartite(3, 3), spec("E/minor/labelled/table:0,0,0,0,0,1")));
  EXPECT_FALSE(o.member(Graph::complete_bipartite(3, 3), spec("E/minor/labelled/const:0")));
}

TEST(Counts, Examples) {
  Catalog cat;
  EXPECT_EQ(cat.count(3, ClassSpec::planar()).count, 8U);
  ClassCount c4 = cat.count(4, ClassSpec::planar());
  EXPECT_EQ(c4.count, 64U);
  EXPECT_EQ(c4.connected, 38U);
  EXPECT_EQ(cat.count(5, ClassSpec::planar()).count, 1023U);
  EXPECT_EQ(cat.count(5, spec("OE/plain/labelled/const:2")).count, 1024U);
  EXPECT_EQ(cat.count(1, ClassSpec::planar()).count, 1U);
}

TEST(Counts, ConnectedFourVertexGraphsByBruteForce) {
  std::uint64_t connected = 0;
  for (std::uint64_t m = 0; m < 64; ++m) connected += is_connected(graph_from_mask(4, m));
  EXPECT_EQ(connected, 38U);
}

TEST(Counts, PlanarSixAgainstIndependentPlanarityTest) {
  std::uint64_t expected = 0;
  for (std::uint64_t m = 0; m < (1U << 15); ++m) expected += planar_oracle(graph_from_mask(6, m));
  CatalogOptions opts;
  opts.threads = 2;
  Catalog cat(opts);
  ClassCount c = cat.count(6, ClassSpec::planar());
  EXPECT_EQ(c.count, expected);
  EXPECT_EQ(c.count, 32071U);
  std::uint64_t hist = 0;
  for (auto x : c.histogram) hist += x;
  EXPECT_EQ(hist, c.count);
}

TEST(Counts, UnlabelledMatchesCensus) {
  Catalog cat;
  ClassSpec all = spec("E/plain/unlabelled/ry");
  const std::vector<std::uint64_t> graphs = {1, 2, 4, 11, 34, 156, 1044};
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(cat.count(n, all).count, graphs[n - 1]) << n;
  EXPECT_EQ(cat.count(5, spec("E/plain/unlabelled/const:0")).count, 33U);
  EXPECT_EQ(cat.count(4, spec("E/plain/unlabelled/const:0")).connected, 6U);
}

TEST(Counts, CapsEnforced) {
  Catalog cat;
  EXPECT_THROW(cat.count(kLabelledCap + 1, ClassSpec::planar()), Error);
  EXPECT_THROW(cat.count(kUnlabelledCap + 1, spec("E/plain/unlabelled/const:0")), Error);
}

TEST(Counts, EnumerationOrderIsDeterministic) {
  CatalogOptions one, four;
  four.threads = 4;
  Catalog a(one), b(four);
  std::vector<std::string> xs, ys;
  a.for_each_member(5, ClassSpec::planar(), [&](const Graph& g) { xs.push_back(write_graph6(g)); });
  b.for_each_member(5, ClassSpec::planar(), [&](const Graph& g) { ys.push_back(write_graph6(g)); });
  EXPECT_EQ(xs, ys);
  EXPECT_EQ(xs.size(), 1023U);
}

TEST(GrowthRatios, Examples) {
  Catalog cat;
  EXPECT_EQ(*cat.fsgr(2, ClassSpec::planar()).value, Rational(1));
  EXPECT_EQ(*cat.fsgr(5, ClassSpec::planar()).value, Rational(1023, 320));
  GrowthRatios g = cat.growth_ratios(4, ClassSpec::planar());
  ASSERT_FALSE(g.vertex_step.empty());
  EXPECT_EQ(g.vertex_step[0].h, 0);
  EXPECT_EQ(*g.vertex_step[0].ratio.value, Rational(1023, 64));
  EXPECT_TRUE(g.g_non_decreasing);
}

TEST(GrowthRatios, ZeroDenominatorReported) {
  Ratio r = Catalog::ratio(3, 0);
  EXPECT_FALSE(r.value.has_value());
  EXPECT_FALSE(r.note.empty());
}

TEST(RadiusProxy, Examples) {
  Catalog cat;
  auto a = cat.radius_proxy(ClassSpec::planar(), 1, 5);
  ASSERT_EQ(a.size(), 5U);
  EXPECT_DOUBLE_EQ(a[0], 1.0);
  EXPECT_DOUBLE_EQ(a[1], 1.0);
  EXPECT_NEAR(a[2], std::cbrt(8.0 / 6.0), 1e-12);
  EXPECT_NEAR(a[4], std::pow(1023.0 / 120.0, 0.2), 1e-12);
  auto all = cat.radius_proxy(spec("E/plain/labelled/ry"), 3, 7);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GT(all[i], all[i - 1]);
}

TEST(DiskCacheTest, SecondRunReadsCache) {
  TempDir dir;
  CatalogOptions opts;
  opts.cache_dir = dir.path;
  {
    Catalog cat(opts);
    EXPECT_EQ(cat.count(6, ClassSpec::planar()).source, CountSource::enumerated);
  }
  Catalog again(opts);
  ClassCount c = again.count(6, ClassSpec::planar());
  EXPECT_EQ(c.source, CountSource::cached);
  EXPECT_EQ(c.count, 32071U);
}

TEST(DiskCacheTest, TamperedEntryIsRecomputed) {
  TempDir dir;
  CatalogOptions opts;
  opts.cache_dir = dir.path;
  ClassCount first;
  {
    Catalog cat(opts);
    first = cat.count(5, ClassSpec::planar());
  }
  std::filesystem::path file;
  for (const auto& e : std::filesystem::directory_iterator(dir.path)) file = e.path();
  std::string text;
  {
    std::ifstream in(file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto pos = text.find("1023");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 4, "1022");
  {
    std::ofstream out(file);
    out << text;
  }
  Catalog cat(opts);
  testing::internal::CaptureStderr();
  ClassCount again = cat.count(5, ClassSpec::planar());
  std::string warning = testing::internal::GetCapturedStderr();
  EXPECT_EQ(again.source, CountSource::enumerated);
  EXPECT_EQ(again.count, first.count);
  EXPECT_EQ(again.histogram, first.histogram);
  EXPECT_NE(warning.find("warning"), std::string::npos);
  Catalog third(opts);
  EXPECT_EQ(third.count(5, ClassSpec::planar()).source, CountSource::cached);
}

TEST(DiskCacheTest, InvalidateRemovesOnlyItsKey) {
  TempDir dir;
  CatalogOptions opts;
  opts.cache_dir = dir.path;
  Catalog cat(opts);
  cat.count(4, ClassSpec::planar());
  cat.count(5, ClassSpec::planar());
  EXPECT_TRUE(cat.invalidate(4, ClassSpec::planar()));
  EXPECT_FALSE(cat.invalidate(4, ClassSpec::planar()));
  Catalog fresh(opts);
  EXPECT_EQ(fresh.count(4, ClassSpec::planar()).source, CountSource::enumerated);
  EXPECT_EQ(fresh.count(5, ClassSpec::planar()).source, CountSource::cached);
}

TEST(DiskCacheTest, UnwritableRootIsReported) {
  DiskCache cache("/proc/genuslab-cannot-write-here");
  try {
    cache.write("x", nlohmann::json{{"a", 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/proc/genuslab-cannot-write-here"), std::string::npos) << e.what();
  }
}
