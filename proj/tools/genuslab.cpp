// genuslab command-line front end.
//
// Exit codes: 0 success, 1 a verify suite failed, 2 usage or runtime error,
// 3 a genus search ran out of budget (the answer is unknown, not false).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "genuslab/experiment.hpp"
#include "genuslab/verify.hpp"

namespace gl = genuslab;
using nlohmann::json;

namespace {

constexpr int kExitVerify = 1, kExitError = 2, kExitBudget = 3;
constexpr std::uint64_t kDefaultNodeBudget = 20000000;

struct Common {
  int threads = 0;
  bool no_cache = false;
};

struct ClassArgs {
  std::string variant = "E", closure = "plain", g = "const:0";
  bool unlabelled = false, monotonize = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "OE, NE, E or OE_NE")->capture_default_str();
    cmd->add_option("--closure", closure, "plain, hereditary or minor")->capture_default_str();
    cmd->add_option("--g", g, "genus function: const:c, table:..., pow:a,b, nlogn, ry")->capture_default_str();
    cmd->add_flag("--unlabelled", unlabelled, "count isomorphism classes");
    cmd->add_flag("--monotonize", monotonize, "replace g by its running maximum");
  }
  gl::ClassSpec spec(int n_max) const {
    gl::ClassSpec s;
    s.variant = gl::parse_variant(variant);
    s.closure = gl::parse_closure(closure);
    s.labelled = !unlabelled;
    s.g = gl::GenusFunction::parse(g);
    if (monotonize) s.g = s.g.monotonized(std::max(n_max, 1));
    return s;
  }
};

int thread_count(const Common& c) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("GENUSLAB_THREADS"); env && *env) {
    try {
      int t = std::stoi(env);
      if (t > 0) return t;
    } catch (...) {
    }
    throw gl::Error(std::string("GENUSLAB_THREADS must be a positive integer, got '") + env + "'");
  }
  return gl::default_threads();
}

gl::CatalogOptions catalog_options(const Common& c, std::uint64_t node_budget = 0) {
  gl::CatalogOptions o;
  o.threads = thread_count(c);
  o.limits.threads = o.threads;
  o.limits.node_budget = node_budget;
  if (!c.no_cache) o.cache_dir = gl::DiskCache::default_root();
  return o;
}

gl::GenusMode parse_mode(const std::string& m) {
  if (m == "orientable") return gl::GenusMode::orientable;
  if (m == "nonorientable") return gl::GenusMode::nonorientable;
  if (m == "either") return gl::GenusMode::either;
  throw gl::Error("unknown mode '" + m + "' (expected orientable, nonorientable or either)");
}

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw gl::Error("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genuslab: graphs on surfaces, exact counts and random-graph experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "worker threads (default GENUSLAB_THREADS or hardware)");
  app.add_flag("--no-cache", common.no_cache, "bypass the on-disk cache");

  std::string graph6, mode = "either";
  std::uint64_t budget = 0;
  bool long_run = false;
  auto* genus = app.add_subcommand("genus", "minimum Euler genus of a graph");
  genus->add_option("--graph6", graph6, "graph in graph6")->required();
  genus->add_option("--mode", mode, "orientable, nonorientable or either")->capture_default_str();
  genus->add_option("--budget", budget, "search nodes per top-level branch (0: unlimited)");
  genus->add_flag("--long", long_run, "lift the default node budget");

  int face_genus = 0;
  std::string face_variant = "E";
  auto* faces = app.add_subcommand("faces", "face statistics over relevant embeddings");
  faces->add_option("--graph6", graph6, "graph in graph6")->required();
  faces->add_option("--g", face_genus, "Euler genus budget")->capture_default_str();
  faces->add_option("--variant", face_variant, "OE, NE or E")->capture_default_str();

  ClassArgs cls;
  auto* member = app.add_subcommand("member", "class membership of a graph");
  member->add_option("--graph6", graph6, "graph in graph6")->required();
  cls.add(member);

  int n = 0;
  auto* enumerate = app.add_subcommand("enumerate", "stream the members on n vertices as graph6");
  enumerate->add_option("--n", n, "order")->required();
  cls.add(enumerate);

  bool invalidate = false;
  auto* count = app.add_subcommand("count", "exact member count on n vertices");
  count->add_option("--n", n, "order")->required();
  count->add_flag("--invalidate", invalidate, "drop the cached count first");
  cls.add(count);

  std::uint64_t seed = 1, draws = 1;
  std::string sampling = "enumeration";
  auto* sample = app.add_subcommand("sample", "uniform random members as graph6");
  sample->add_option("--n", n, "order")->required();
  sample->add_option("--count", draws, "number of draws")->capture_default_str();
  sample->add_option("--seed", seed, "seed")->capture_default_str();
  sample->add_option("--sampling", sampling, "enumeration or rejection")->capture_default_str();
  cls.add(sample);

  double rho = gl::kPlanarRho;
  int cap = 7;
  auto* bp = app.add_subcommand("bp", "Boltzmann Poisson random planar graphs as graph6");
  bp->add_option("--count", draws, "number of draws")->capture_default_str();
  bp->add_option("--seed", seed, "seed")->capture_default_str();
  bp->add_option("--rho", rho, "Boltzmann parameter")->capture_default_str();
  bp->add_option("--cap", cap, "largest component order")->capture_default_str();

  std::string plan_path;
  auto* experiment = app.add_subcommand("experiment", "run a JSON plan file");
  experiment->add_option("plan", plan_path, "plan file, or - for stdin")->required();

  std::string suite = "all";
  std::uint64_t verify_seed = gl::VerifyOptions{}.seed;
  auto* verify = app.add_subcommand("verify", "run the acceptance suites");
  verify->add_option("--suite", suite, "suite name, or all")->capture_default_str();
  verify->add_option("--seed", verify_seed, "seed")->capture_default_str();
  verify->add_option("--budget", budget, "K7 nonorientable node budget per branch (with --long)");
  verify->add_flag("--long", long_run, "include the K7 nonorientable search");

  auto* census = app.add_subcommand("census", "unlabelled genus census up to n vertices");
  census->add_option("--n", n, "largest order")->required()->check(CLI::Range(1, gl::kGenusCap));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*genus) {
      gl::Graph g = gl::parse_graph6(graph6);
      gl::SearchLimits lim;
      lim.threads = thread_count(common);
      lim.node_budget = budget ? budget : (long_run ? 0 : kDefaultNodeBudget);
      gl::GenusResult r = gl::min_euler_genus(g, parse_mode(mode), lim);
      std::cout << gl::genus_json(g, parse_mode(mode), r).dump() << "\n";
      return r.exact() ? 0 : kExitBudget;
    }
    if (*faces) {
      gl::Graph g = gl::parse_graph6(graph6);
      gl::RelevantFaceStats s = gl::relevant_face_stats(g, face_genus, gl::parse_variant(face_variant));
      json j{{"schema", 1},
             {"graph6", gl::write_graph6(g)},
             {"variant", face_variant},
             {"budget", face_genus},
             {"min_faces", gl::exact(static_cast<std::int64_t>(s.min_faces))},
             {"max_faces", gl::exact(static_cast<std::int64_t>(s.max_faces))},
             {"max_face_size", gl::exact(static_cast<std::int64_t>(s.max_face_size))},
             {"min_genus", gl::exact(static_cast<std::int64_t>(s.min_genus))},
             {"max_genus", gl::exact(static_cast<std::int64_t>(s.max_genus))}};
      std::cout << j.dump() << "\n";
      return 0;
    }
    if (*member) {
      gl::Graph g = gl::parse_graph6(graph6);
      gl::ClassSpec spec = cls.spec(g.order());
      gl::Catalog cat(catalog_options(common, budget));
      bool in = cat.member(g, spec);
      std::cout << json{{"schema", 1}, {"graph6", gl::write_graph6(g)}, {"spec", gl::spec_json(spec, g.order())}, {"member", in}}.dump()
                << "\n";
      return 0;
    }
    if (*enumerate) {
      gl::ClassSpec spec = cls.spec(n);
      gl::Catalog cat(catalog_options(common));
      cat.for_each_member(n, spec, [](const gl::Graph& g) { std::cout << gl::write_graph6(g) << "\n"; });
      return 0;
    }
    if (*count) {
      gl::ClassSpec spec = cls.spec(n);
      gl::Catalog cat(catalog_options(common));
      if (invalidate) cat.invalidate(n, spec);
      std::cout << json(gl::count_json(cat.count(n, spec), spec)).dump() << "\n";
      return 0;
    }
    if (*sample) {
      gl::ClassSpec spec = cls.spec(n);
      gl::Catalog cat(catalog_options(common));
      gl::SamplingMode m = sampling == "enumeration" ? gl::SamplingMode::enumeration
                           : sampling == "rejection" ? gl::SamplingMode::rejection
                                                     : throw gl::Error("unknown sampling mode '" + sampling + "'");
      gl::ClassSampler sampler(cat, n, spec, m);
      gl::Rng rng = gl::Seed{seed}.engine();
      std::vector<std::string> lines;
      for (std::uint64_t i = 0; i < draws; ++i) lines.push_back(gl::write_graph6(sampler.draw(rng)));
      json header{{"schema", 1}, {"kind", "uniform"}, {"n", n}, {"spec", gl::spec_json(spec, n)},
                  {"sampling", sampling}, {"seed", seed}, {"count", draws}};
      if (m == gl::SamplingMode::rejection) header["acceptance_rate"] = {{"tag", "estimate"}, {"value", sampler.acceptance_rate()}};
      std::cout << header.dump() << "\n";
      for (const auto& l : lines) std::cout << l << "\n";
      return 0;
    }
    if (*bp) {
      gl::Catalog cat(catalog_options(common));
      gl::BPModel model = gl::BPModel::build(cat, rho, cap);
      gl::Rng rng = gl::Seed{seed}.engine();
      json header{{"schema", 1},
                  {"kind", "boltzmann_poisson"},
                  {"rho", rho},
                  {"cap", cap},
                  {"components", model.table().size()},
                  {"lambda_trunc", gl::exact_real(model.lambda_trunc())},
                  {"p_empty", gl::exact_real(std::exp(-model.lambda_trunc()))},
                  {"tail_mass", {{"tag", "bound"}, {"estimate", static_cast<double>(model.tail_estimate())}}},
                  {"seed", seed},
                  {"count", draws}};
      std::cout << header.dump() << "\n";
      for (std::uint64_t i = 0; i < draws; ++i) std::cout << gl::write_graph6(model.sample(rng)) << "\n";
      return 0;
    }
    if (*experiment) {
      std::string text = read_input(plan_path);
      json plan = text.find_first_not_of(" \t\r\n") == std::string::npos ? json(nullptr) : json::parse(text);
      gl::Catalog cat(catalog_options(common));
      std::cout << gl::run_plan(plan, cat).dump(2) << "\n";
      return 0;
    }
    if (*verify) {
      gl::VerifyOptions o;
      o.threads = thread_count(common);
      o.seed = verify_seed;
      o.long_run = long_run;
      if (budget) o.k7_node_budget = budget;
      std::vector<std::string> names;
      if (suite == "all") {
        for (const auto& s : gl::suites()) names.push_back(s.name);
      } else {
        names.push_back(suite);
      }
      bool ok = true;
      for (const auto& name : names) {
        gl::SuiteResult r = gl::run_suite(name, o);
        std::cout << r.text() << std::flush;
        ok = ok && r.passed;
      }
      return ok ? 0 : kExitVerify;
    }
    if (*census) {
      gl::Catalog cat(catalog_options(common));
      for (int k = 1; k <= n; ++k) {
        const auto& level = cat.census().level(k);
        std::map<int, std::uint64_t> oe, ne, e;
        std::uint64_t connected = 0;
        for (const auto& key : level) {
          gl::Graph g = gl::graph_from_key(key);
          gl::GenusProfile p = cat.oracle().profile(g);
          ++oe[p.cost(gl::Variant::OE)];
          ++ne[p.cost(gl::Variant::NE)];
          ++e[p.cost(gl::Variant::E)];
          connected += gl::is_connected(g);
        }
        auto hist = [](const std::map<int, std::uint64_t>& m) {
          json j = json::object();
          for (auto [h, c] : m) j[std::to_string(h)] = c;
          return j;
        };
        std::cout << json{{"schema", 1},
                          {"n", k},
                          {"unlabelled", gl::exact(static_cast<std::int64_t>(level.size()))},
                          {"connected", gl::exact(static_cast<std::int64_t>(connected))},
                          {"by_euler_genus", {{"OE", hist(oe)}, {"NE", hist(ne)}, {"E", hist(e)}}}}
                         .dump()
                  << "\n";
      }
      return 0;
    }
  } catch (const gl::BudgetExhausted& e) {
    std::cerr << "genuslab: search budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const json::exception& e) {
    std::cerr << "genuslab: bad JSON: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "genuslab: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
