#pragma once

// Verification suites. Each suite rebuilds its own catalog, so a run
// depends only on its options; the lines it emits are the primary output
// compared by the determinism suite.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "genuslab/lab.hpp"

namespace genuslab {

struct VerifyOptions {
  int threads = 1;
  std::uint64_t seed = 20240601;
  bool long_run = false;                      // enables the K7 nonorientable search
  std::uint64_t k7_node_budget = 200000000;   // per top-level branch
  std::optional<std::filesystem::path> cache_dir;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;

  std::string text() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
  }
};

namespace detail {

class Checker {
 public:
  explicit Checker(SuiteResult& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    r_.lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    r_.passed = r_.passed && ok;
  }
  void note(const std::string& what) { r_.lines.push_back("info  " + what); }

 private:
  SuiteResult& r_;
};

inline std::string fixed(long double x, int digits = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << static_cast<double>(x);
  return os.str();
}

/// Planarity by Boyer-Myrvold, independent of the genus search.
inline bool boyer_myrvold_planar(const Graph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(static_cast<std::size_t>(g.order()));
  for (auto [u, v] : g.edges()) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

inline Catalog fresh_catalog(const VerifyOptions& o, SearchLimits lim = {}) {
  lim.threads = 1;
  CatalogOptions co;
  co.limits = lim;
  co.threads = o.threads;
  co.cache_dir = o.cache_dir;
  return Catalog(co);
}

inline std::vector<std::pair<std::string, ClassSpec>> plain_specs(std::initializer_list<Variant> variants, std::initializer_list<const char*> gs) {
  std::vector<std::pair<std::string, ClassSpec>> out;
  for (Variant v : variants)
    for (const char* g : gs) {
      ClassSpec s = ClassSpec::plain(v, GenusFunction::parse(g));
      out.emplace_back(s.describe(), s);
    }
  return out;
}

// ---- suites -------------------------------------------------------------------

inline void suite_ringel_youngs(Checker& c, const VerifyOptions& o) {
  SearchLimits lim;
  lim.threads = o.threads;
  for (int n = 3; n <= 6; ++n)
    for (auto [mode, orient] : {std::pair{GenusMode::orientable, Orientability::orientable},
                                std::pair{GenusMode::nonorientable, Orientability::nonorientable}}) {
      GenusResult r = min_euler_genus(Graph::complete(n), mode, lim);
      int want = ringel_youngs(n, orient);
      c.check(r.exact() && r.euler_genus == want, "K" + std::to_string(n) + " " + to_string(mode) + ": " + std::to_string(r.euler_genus) +
                                                      " (closed form " + std::to_string(want) + ", " + to_string(r.certificate) + ")");
    }
  GenusResult k7 = min_euler_genus(Graph::complete(7), GenusMode::orientable, lim);
  c.check(k7.exact() && k7.euler_genus == 2 && k7.certificate == Certificate::euler_bound,
          "K7 orientable: " + std::to_string(k7.euler_genus) + " (" + to_string(k7.certificate) + ")");
  if (!o.long_run) {
    c.note("K7 nonorientable: skipped (needs --long)");
    return;
  }
  lim.node_budget = o.k7_node_budget;
  lim.vertex_cap = 7;
  GenusResult r = min_euler_genus(Graph::complete(7), GenusMode::nonorientable, lim);
  const std::string shown = r.exact() ? std::to_string(r.euler_genus) : "[" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "]";
  c.check(r.exact() ? r.euler_genus == 3 : (r.lower <= 3 && 3 <= r.upper),
          "K7 nonorientable: " + shown + " (" + to_string(r.certificate) + ", node budget " + std::to_string(o.k7_node_budget) + " per branch)");
}

inline void suite_euler(Checker& c, const VerifyOptions& o) {
  const int trials = 10000;
  std::vector<char> ok(trials, 1);
  std::vector<std::string> why(trials);
  Seed root{o.seed};
  parallel_for(trials, o.threads, [&](std::size_t i) {
    Rng rng = root.split(i).engine();
    int n = 1 + static_cast<int>(uniform_below(rng, 8));
    Graph g = gnp(n, uniform01(rng), rng);
    EmbeddingScheme s = random_scheme(g, rng, uniform01(rng));
    FaceTrace t = trace_faces(g, s);
    SchemeGenus sg = euler_genus_of_scheme(g, s);
    auto comps = component_masks(g);
    std::vector<int> length(comps.size(), 0);
    std::map<Edge, int> sides;
    for (std::size_t f = 0; f < t.faces.size(); ++f) {
      length[t.face_component[f]] += t.face_lengths[f];
      for (auto d : t.faces[f]) ++sides[{std::min(d.tail, d.head), std::max(d.tail, d.head)}];
    }
    for (auto e : g.edges())
      if (sides[e] != 2) ok[i] = 0, why[i] = "edge side count";
    int merged = 0;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      Graph h = g.induced(comps[k]);
      if (length[k] != 2 * h.size()) ok[i] = 0, why[i] = "face lengths";
      int hk = sg.component_genus[k];
      // Eq. (1) per component, with the genus read off the traced faces.
      if (h.order() - h.size() + sg.component_faces[k] != 2 - hk || hk < 0 || hk > h.size() - h.order() + 1)
        ok[i] = 0, why[i] = "Euler formula per component";
      if (scheme_orientable(g, s, comps[k]) && hk % 2) ok[i] = 0, why[i] = "odd orientable genus";
      merged += sg.component_faces[k];
    }
    const int kappa = static_cast<int>(comps.size());
    if (kappa > 0) {
      merged -= kappa - 1;
      if (merged != sg.merged_faces || g.order() - g.size() + merged - kappa != 1 - sg.euler_genus) ok[i] = 0, why[i] = "Euler formula with components";
    }
  });
  int failures = 0;
  std::string first;
  for (int i = 0; i < trials; ++i)
    if (!ok[i]) {
      if (!failures) first = " (first: trial " + std::to_string(i) + ", " + why[i] + ")";
      ++failures;
    }
  c.check(failures == 0, std::to_string(trials) + " random graph/scheme pairs, n <= 8: " + std::to_string(failures) + " violations" + first);
}

inline void suite_planar_census(Checker& c, const VerifyOptions& o) {
  Catalog cat = fresh_catalog(o);
  const std::uint64_t locked[] = {0, 1, 2, 8, 64, 1023, 32071};
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t engine = cat.count(n, ClassSpec::planar()).count;
    const std::uint64_t total = std::uint64_t{1} << pair_count(n);
    std::vector<char> planar(total);
    parallel_for(total, o.threads, [&](std::size_t m) { planar[m] = boyer_myrvold_planar(graph_from_mask(n, m)); });
    std::uint64_t oracle = 0;
    for (char p : planar) oracle += p;
    c.check(engine == oracle && engine == locked[n],
            "n=" + std::to_string(n) + ": genus engine " + std::to_string(engine) + ", planarity oracle " + std::to_string(oracle));
  }
}

inline void suite_dominance(Checker& c, const VerifyOptions& o) {
  Catalog cat = fresh_catalog(o);
  Lab lab(cat);
  for (auto& [name, spec] : plain_specs({Variant::E, Variant::OE, Variant::NE}, {"const:0", "const:1", "const:2", "ry"}))
    for (int n = 3; n <= 5; ++n) {
      DominanceReport d = lab.edge_dominance(n, spec);
      std::string detail = d.dominates ? "holds" : "violated at e=" + std::to_string(*d.first_violation);
      c.check(d.dominates, "e(R_" + std::to_string(n) + ") vs Bin(" + std::to_string(3 * n - 6) + ",1/2), " + name + ": " + detail);
    }
}

inline void suite_downsets(Checker& c, const VerifyOptions&) {
  const std::size_t expected[] = {1, 2, 5, 19, 167};
  for (int k = 0; k <= 4; ++k) {
    auto families = all_down_sets(k);
    int violations = 0;
    for (const auto& f : families) violations += !downward_closed_dominance(f).dominates;
    c.check(violations == 0 && families.size() == expected[k], "ground set of size " + std::to_string(k) + ": " + std::to_string(families.size()) +
                                                                   " non-empty down-sets, " + std::to_string(violations) + " violations");
  }
  bool rejected = false;
  try {
    downward_closed_dominance({});
  } catch (const Error&) {
    rejected = true;
  }
  c.check(rejected, "empty family rejected");
  DominanceReport small = downward_closed_dominance({0b00, 0b01, 0b10});
  c.check(small.dominates && small.cdf_a[0] == Rational(1, 3), "family {{},{1},{2}}: P(|R| >= 1) = 2/3 against Bin(1,1/2)");
}

inline std::vector<std::pair<std::string, ClassSpec>> bridge_specs() {
  auto specs = plain_specs({Variant::E, Variant::OE, Variant::NE, Variant::OE_NE}, {"const:0", "const:1", "ry"});
  for (const char* g : {"const:0", "table:0,0,0,0,0,2"}) {
    ClassSpec h{Variant::OE, Closure::hereditary, true, GenusFunction::parse(g)};
    specs.emplace_back(h.describe(), h);
  }
  ClassSpec m{Variant::E, Closure::minor, true, GenusFunction::parse("table:0,0,0,0,0,1")};
  specs.emplace_back(m.describe(), m);
  return specs;
}

inline void suite_lemma32(Checker& c, const VerifyOptions& o) {
  Catalog cat = fresh_catalog(o);
  Lab lab(cat);
  for (auto& [name, spec] : bridge_specs())
    for (int n = 1; n <= 6; ++n) {
      Lemma32Report r = lab.lemma32(n, spec);
      if (!r.bridge_addable) {
        c.note(name + " n=" + std::to_string(n) + ": not bridge-addable, skipped");
        continue;
      }
      c.check(r.all_ok(), name + " n=" + std::to_string(n) + ": P(connected) = " + to_string(r.p_connected) + ", E[kappa] = " +
                              to_string(r.mean_kappa) + ", E[frag] = " + to_string(r.mean_frag) +
                              (r.kappa.dominated ? ", kappa <=s 1+Po(1)" : ", kappa dominance violated"));
    }
}

inline void suite_fsgr(Checker& c, const VerifyOptions& o) {
  Catalog cat = fresh_catalog(o);
  Lab lab(cat);
  for (auto& [name, spec] : plain_specs({Variant::E, Variant::OE}, {"const:0", "const:1", "ry", "pow:1,1"}))
    for (int n = 2; n <= 6; ++n) {
      FsgrSandwich s = lab.fsgr_sandwich(n, spec);
      if (!s.g_step_non_decreasing) {
        c.note(name + " n=" + std::to_string(n) + ": g(n) < g(n-1), skipped");
        continue;
      }
      c.check(s.upper_holds && s.lower_holds && s.identity_holds && s.fsgr1_holds,
              name + " n=" + std::to_string(n) + ": fsgr = " + to_string(*s.fsgr.value) + ", P(frag=1) = " + to_string(s.p_frag1) +
                  " in [" + fixed(s.lower) + ", " + to_string(s.upper) + "], fsgr >= " + to_string(s.fsgr1_bound));
    }
  FsgrSandwich p5 = lab.fsgr_sandwich(5, ClassSpec::planar());
  c.check(p5.p_frag1 == Rational(190, 1023) && p5.upper == Rational(320, 1023), "planar n=5: P(frag=1) = " + to_string(p5.p_frag1) + ", upper " + to_string(p5.upper));
}

inline void suite_bp(Checker& c, const VerifyOptions& o) {
  Catalog cat = fresh_catalog(o);
  long double previous = 0;
  bool monotone = true;
  for (int cap = 1; cap <= 7; ++cap) {
    long double l = BPModel::build(cat, kPlanarRho, cap).lambda_trunc();
    monotone = monotone && l >= previous;
    previous = l;
  }
  c.check(monotone, "lambda_trunc non-decreasing in cap 1..7");
  BPModel m = BPModel::build(cat, kPlanarRho, 7);
  c.note("table of " + std::to_string(m.table().size()) + " connected planar graphs, lambda_trunc = " + fixed(m.lambda_trunc(), 9) +
         ", tail estimate " + fixed(m.tail_estimate(), 12));
  const std::uint64_t draws = 200000;
  std::vector<std::vector<std::uint32_t>> counts(draws);
  Seed root{o.seed};
  parallel_for(draws, o.threads, [&](std::size_t i) {
    Rng rng = root.split(i).engine();
    counts[i] = m.draw_counts(rng);
  });
  std::uint64_t empty = 0;
  for (const auto& v : counts) empty += std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
  const double p_empty = static_cast<double>(empty) / draws;
  c.check(std::abs(p_empty - 0.963) <= 0.005, "P(R = empty) over " + std::to_string(draws) + " draws: " + fixed(p_empty) + " (target 0.963)");
  for (std::size_t h = 0; h < m.table().size(); ++h) {
    const long double mu = m.table()[h].mu;
    if (mu <= 1e-4L) continue;
    std::vector<std::uint64_t> observed;
    for (const auto& v : counts) {
      if (observed.size() <= v[h]) observed.resize(v[h] + 1, 0);
      ++observed[v[h]];
    }
    // Bins k = 0, 1, ... with the upper tail pooled once expectations drop below 5.
    PoissonTable law = poisson_pmf(mu);
    std::vector<long double> expected;
    std::vector<std::uint64_t> seen;
    long double rest = 1;
    std::uint64_t seen_rest = draws;
    for (std::size_t k = 0; k < law.pmf.size(); ++k) {
      long double e = law.pmf[k] * draws;
      if (e < 5 || (rest - law.pmf[k]) * draws < 5) break;
      expected.push_back(e);
      seen.push_back(k < observed.size() ? observed[k] : 0);
      rest -= law.pmf[k];
      seen_rest -= seen.back();
    }
    expected.push_back(rest * draws);
    seen.push_back(seen_rest);
    long double stat = 0;
    for (std::size_t k = 0; k < expected.size(); ++k) stat += (seen[k] - expected[k]) * (seen[k] - expected[k]) / expected[k];
    const double df = static_cast<double>(expected.size() - 1);
    const double critical = boost::math::quantile(boost::math::chi_squared(df), 0.99);
    c.check(stat <= critical, "components " + write_graph6(m.table()[h].h.graph()) + " (mu = " + fixed(mu, 9) + "): chi-square " +
                                  fixed(stat, 3) + " on " + std::to_string(static_cast<int>(df)) + " df, critical " + fixed(critical, 3));
  }
}

inline void suite_bounds(Checker& c, const VerifyOptions& o) {
  Catalog cat = fresh_catalog(o);
  std::uint64_t graphs = 0, embeddings_checked = 0, violations = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (!violations++) first = what;
  };
  for (int n = 1; n <= 6; ++n)
    for (const auto& key : cat.census().level(n)) {
      Graph g = graph_from_key(key);
      ++graphs;
      const int v = g.order(), e = g.size();
      GenusProfile p = cat.oracle().profile(g);
      for (Variant var : {Variant::OE, Variant::NE, Variant::E}) {
        // Extremes over every relevant embedding within each budget: the
        // face count falls as the genus rises, so the least and greatest
        // genus carry the tightest cases of each inequality.
        for (int budget = p.cost(var); budget <= 2; ++budget) {
          RelevantFaceStats s = relevant_face_stats(g, budget, var, {.vertex_cap = 7, .threads = 1});
          ++embeddings_checked;
          const std::string tag = write_graph6(g) + " " + to_string(var) + " budget " + std::to_string(budget);
          if (e >= 2) {
            if (e > 3 * (v + s.min_genus - 2)) fail(tag + ": e <= 3(v+h-2)");
            if (s.max_faces > 2 * (v + s.min_genus - 2)) fail(tag + ": f <= 2(v+h-2)");
          }
          if (e < s.max_genus) fail(tag + ": e >= h");
        }
      }
    }
  c.check(violations == 0, "Eqs. e <= 3(v+h-2), f <= 2(v+h-2) (e >= 2) and e >= h over " + std::to_string(graphs) +
                               " graphs, n <= 6, " + std::to_string(embeddings_checked) + " relevant-embedding families: " +
                               std::to_string(violations) + " violations" + (violations ? " (first: " + first + ")" : ""));
  std::uint64_t member_checks = 0, member_violations = 0;
  for (auto& [name, spec] : plain_specs({Variant::E, Variant::OE, Variant::NE}, {"const:0", "const:1", "const:2"}))
    for (int n = 1; n <= 6; ++n)
      cat.for_each_member(n, spec, [&](const Graph& g) {
        ++member_checks;
        const int h = cat.oracle().profile(g).cost(spec.variant);
        const int v = g.order(), e = g.size();
        if ((e >= 2 && e > 3 * (v + h - 2)) || e < h) ++member_violations;
      });
  c.check(member_violations == 0, "least relevant genus of every member, E/OE/NE with g = 0, 1, 2, n <= 6: " + std::to_string(member_checks) +
                                      " members, " + std::to_string(member_violations) + " violations");
}

inline void suite_unlabelled(Checker& c, const VerifyOptions& o) {
  Census census(o.threads);
  const std::uint64_t u[] = {0, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668};
  const std::uint64_t conn[] = {0, 1, 1, 2, 6, 21, 112, 853, 11117, 261080};
  for (int n = 2; n <= 9; ++n) {
    DisconnectRatio r = unlabelled_disconnect_ratio(census, n, o.threads);
    bool ok = r.unlabelled == u[n] && r.connected == conn[n] && (n != 4 || r.ratio == Rational(10, 11));
    c.check(ok, "n=" + std::to_string(n) + ": u = " + std::to_string(r.unlabelled) + ", connected " + std::to_string(r.connected) +
                    ", ratio " + to_string(r.ratio) + " = " + fixed(to_real(r.ratio)));
  }
}

inline void suite_closure(Checker& c, const VerifyOptions& o) {
  Catalog cat = fresh_catalog(o);
  Lab lab(cat);
  auto spec_of = [](Variant v, Closure cl, const char* g) { return ClassSpec{v, cl, true, GenusFunction::parse(g)}; };
  for (Variant v : {Variant::E, Variant::OE, Variant::NE, Variant::OE_NE})
    for (const char* g : {"const:0", "const:1", "const:2", "table:0,0,0,0,0,2", "table:0,0,0,0,2,2"}) {
      ClassSpec plain = spec_of(v, Closure::plain, g), hered = spec_of(v, Closure::hereditary, g), minor = spec_of(v, Closure::minor, g);
      for (int n = 1; n <= 6; ++n) {
        std::uint64_t counts[4] = {0, 0, 0, 0};
        bool chain = true;
        const std::uint64_t total = std::uint64_t{1} << pair_count(n);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
          Graph h = graph_from_mask(n, mask);
          bool in[4] = {cat.member(h, ClassSpec::planar()), cat.member(h, minor), cat.member(h, hered), cat.member(h, plain)};
          for (int k = 0; k < 4; ++k) counts[k] += in[k];
          for (int k = 0; k < 3; ++k) chain = chain && (!in[k] || in[k + 1]);
        }
        if (n == 6 || !chain)
          c.check(chain, plain.describe() + " n=" + std::to_string(n) + ": planar " + std::to_string(counts[0]) + " <= minor " +
                             std::to_string(counts[1]) + " <= hereditary " + std::to_string(counts[2]) + " <= plain " + std::to_string(counts[3]));
      }
    }
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t p = cat.count(n, ClassSpec::planar()).count;
    std::uint64_t h = cat.count(n, spec_of(Variant::E, Closure::hereditary, "const:0")).count;
    std::uint64_t m = cat.count(n, spec_of(Variant::E, Closure::minor, "const:0")).count;
    c.check(p == h && h == m, "n=" + std::to_string(n) + ": Minor(P) = Hered(P) = P = " + std::to_string(p));
  }
  // Adding an edge at a leaf keeps a graph hereditary once g grows by 2 per vertex.
  for (Variant v : {Variant::E, Variant::OE, Variant::NE, Variant::OE_NE})
    for (const char* g : {"table:0,0,0,0,2,4,6", "pow:2,1"}) {
      ClassSpec hered = spec_of(v, Closure::hereditary, g);
      std::uint64_t tried = 0, broken = 0;
      for (int n = 2; n <= 6; ++n)
        cat.for_each_member(n, hered, [&](const Graph& G) {
          for (int leaf = 0; leaf < n; ++leaf) {
            if (G.degree(leaf) != 1) continue;
            for (int w = 0; w < n; ++w) {
              if (w == leaf || G.has_edge(leaf, w)) continue;
              Graph H = G;
              H.add_edge(leaf, w);
              ++tried;
              broken += !cat.member(H, hered);
            }
          }
        });
      c.check(broken == 0, hered.describe() + ": leaf-edge additions n <= 6: " + std::to_string(tried) + " tried, " + std::to_string(broken) + " left the class");
    }
  for (auto& [name, spec] : bridge_specs())
    for (int n = 2; n <= 6; ++n)
      if (n == 6) c.check(lab.bridge_addable(n, spec), name + ": bridge-addable at n <= 6");
      else if (!lab.bridge_addable(n, spec)) c.check(false, name + ": not bridge-addable at n=" + std::to_string(n));
}

}  // namespace detail

struct SuiteInfo {
  std::string name;
  std::function<void(detail::Checker&, const VerifyOptions&)> run;
};

inline const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> all = {
      {"ringel-youngs", detail::suite_ringel_youngs}, {"euler", detail::suite_euler},       {"planar-census", detail::suite_planar_census},
      {"dominance", detail::suite_dominance},         {"downsets", detail::suite_downsets}, {"lemma32", detail::suite_lemma32},
      {"fsgr", detail::suite_fsgr},                   {"bp", detail::suite_bp},             {"bounds", detail::suite_bounds},
      {"unlabelled", detail::suite_unlabelled},       {"closure", detail::suite_closure},
  };
  return all;
}

inline SuiteResult run_determinism(const VerifyOptions& o);

inline SuiteResult run_suite(std::string_view name, const VerifyOptions& o) {
  for (const auto& s : suites())
    if (s.name == name) {
      SuiteResult r;
      r.name = s.name;
      detail::Checker c(r);
      try {
        s.run(c, o);
      } catch (const std::exception& e) {
        c.check(false, std::string("suite aborted: ") + e.what());
      }
      return r;
    }
  if (name == "determinism") return run_determinism(o);
  throw Error("unknown suite '" + std::string(name) + "'");
}

/// Runs every other suite twice at 1 and at 4 threads and compares outputs.
inline SuiteResult run_determinism(const VerifyOptions& o) {
  SuiteResult r;
  r.name = "determinism";
  detail::Checker c(r);
  for (const auto& s : suites()) {
    std::vector<std::string> outputs;
    for (int threads : {1, 1, 4, 4}) {
      VerifyOptions v = o;
      v.threads = threads;
      outputs.push_back(run_suite(s.name, v).text());
    }
    bool same = std::all_of(outputs.begin(), outputs.end(), [&](const std::string& t) { return t == outputs.front(); });
    c.check(same, s.name + ": identical output over 2 runs each at 1 and 4 threads");
  }
  return r;
}

}  // namespace genuslab
