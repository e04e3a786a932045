#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with a private cache directory; stderr is discarded.
CliRun run(const std::string& args, const std::string& env = "") {
  static const std::string cache =
      (std::filesystem::temp_directory_path() / ("genuslab-cli-" + std::to_string(::getpid()))).string();
  std::string cmd = "GENUSLAB_CACHE=" + cache + " " + env + " " + GENUSLAB_BIN + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, GenusOfTriangle) {
  CliRun r = run("genus --graph6 Bw --mode orientable");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["euler_genus"]["value"], 0);
  EXPECT_EQ(j["euler_genus"]["tag"], "exact");
  EXPECT_EQ(j["schema"], 1);
}

TEST(Cli, BudgetExhaustionHasItsOwnExitCode) {
  CliRun r = run("genus --graph6 'F~~~w' --mode nonorientable --budget 1");
  EXPECT_EQ(r.code, 3);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["euler_genus"]["tag"], "bound");
  EXPECT_LE(j["euler_genus"]["lower"].get<int>(), 3);
  EXPECT_GE(j["euler_genus"]["upper"].get<int>(), 3);
}

TEST(Cli, CountPlanarFive) {
  CliRun r = run("--no-cache count --n 5 --variant E --closure plain --g const:0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["count"]["value"], 1023);
}

TEST(Cli, SecondCountIsCachedAndInvalidateRecomputes) {
  run("count --n 6 --invalidate");
  CliRun first = run("count --n 6");
  CliRun second = run("count --n 6");
  EXPECT_EQ(nlohmann::json::parse(second.out)["source"], "cached");
  EXPECT_EQ(nlohmann::json::parse(second.out)["count"], nlohmann::json::parse(first.out)["count"]);
  EXPECT_EQ(nlohmann::json::parse(run("count --n 6 --invalidate").out)["source"], "enumerated");
}

TEST(Cli, SampleStreamsHeaderThenGraph6) {
  CliRun a = run("sample --n 4 --count 5 --seed 3");
  CliRun b = run("--threads 4 sample --n 4 --count 5 --seed 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(nlohmann::json::parse(header)["seed"], 3);
  int graphs = 0;
  for (std::string l; std::getline(lines, l);) {
    ++graphs;
    EXPECT_EQ(l.size(), 2U);
  }
  EXPECT_EQ(graphs, 5);
}

TEST(Cli, BoltzmannPoissonIsReproducible) {
  CliRun a = run("bp --count 20 --seed 8");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, run("bp --count 20 --seed 8").out);
  EXPECT_NE(a.out, run("bp --count 20 --seed 9").out);
}

TEST(Cli, EnumerateStreamsMembers) {
  CliRun r = run("enumerate --n 3");
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 8);
}

TEST(Cli, MemberAndFaces) {
  EXPECT_EQ(nlohmann::json::parse(run("member --graph6 'D~{' --variant OE --g const:1").out)["member"], false);
  EXPECT_EQ(nlohmann::json::parse(run("member --graph6 'D~{' --variant OE --g const:2").out)["member"], true);
  auto f = nlohmann::json::parse(run("faces --graph6 'C~' --g 0").out);
  EXPECT_EQ(f["min_faces"]["value"], 4);
}

TEST(Cli, ExperimentPlans) {
  auto dir = std::filesystem::temp_directory_path();
  auto empty = dir / ("genuslab-empty-plan-" + std::to_string(::getpid()) + ".json");
  std::ofstream(empty) << "";
  CliRun r = run("experiment " + empty.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["results"].empty());
  auto bad = dir / ("genuslab-bad-plan-" + std::to_string(::getpid()) + ".json");
  std::ofstream(bad) << R"([{"experiment":"count","n_range":[1,2],"typo":true}])";
  EXPECT_EQ(run("experiment " + bad.string()).code, 2);
  std::filesystem::remove(empty);
  std::filesystem::remove(bad);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("genus --graph6 Bw --frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("genus --graph6 '!!'").code, 2);
  EXPECT_EQ(run("count --n 5", "GENUSLAB_THREADS=zero").code, 2);
}

TEST(Cli, VerifyDominanceSuite) {
  CliRun r = run("verify --suite dominance");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(run("verify --suite no-such-suite").code, 2);
}

TEST(Cli, Census) {
  CliRun r = run("census --n 4");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string last;
  for (std::string l; std::getline(lines, l);) last = l;
  auto j = nlohmann::json::parse(last);
  EXPECT_EQ(j["unlabelled"]["value"], 11);
  EXPECT_EQ(j["connected"]["value"], 6);
}
