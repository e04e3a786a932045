#pragma once

// Exact and Monte-Carlo statistics over the classes: event probabilities,
// moments, stochastic dominance, the fsgr sandwich, pendant densities and
// the unlabelled disconnection ratio.

#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "genuslab/catalog.hpp"
#include "genuslab/graph6.hpp"
#include "genuslab/samplers.hpp"
#include "genuslab/structure.hpp"

namespace genuslab {

/// "E/plain/labelled/const:0"; trailing parts may be omitted and default
/// to plain, labelled and const:0.
inline ClassSpec parse_class_spec(std::string_view text) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, '/')) parts.push_back(item);
  if (parts.empty() || parts.size() > 4) throw Error("class spec must look like VARIANT/CLOSURE/labelled|unlabelled/GENUS, got '" + std::string(text) + "'");
  ClassSpec s;
  s.variant = parse_variant(parts[0]);
  if (parts.size() > 1) s.closure = parse_closure(parts[1]);
  if (parts.size() > 2) {
    if (parts[2] == "labelled") s.labelled = true;
    else if (parts[2] == "unlabelled") s.labelled = false;
    else throw Error("class spec labelling must be labelled or unlabelled, got '" + parts[2] + "'");
  }
  if (parts.size() > 3) s.g = GenusFunction::parse(parts[3]);
  return s;
}

// ---- events -----------------------------------------------------------------

struct EventQuery {
  enum class Kind { connected, frag_eq, fragment_planar, leaves_ge, leaves_eq, edges_ge, maxdeg_ge, has_component, pend_ge, in_subclass };
  Kind kind = Kind::connected;
  int t = 0;
  std::optional<UnlabelledGraph> pattern;
  std::optional<ClassSpec> subclass;
  std::string text;

  /// connected | frag_eq:k | fragment_planar | leaves_ge:t | leaves_eq:t |
  /// edges_ge:m | maxdeg_ge:d | has_component:G6 | pend_ge:G6:t | in_subclass:SPEC
  static EventQuery parse(std::string_view s) {
    EventQuery q;
    q.text = std::string(s);
    auto colon = s.find(':');
    std::string_view head = s.substr(0, colon), arg = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
    auto number = [&](std::string_view a) {
      try {
        std::size_t used = 0;
        int v = std::stoi(std::string(a), &used);
        if (used != a.size() || v < 0) throw Error("");
        return v;
      } catch (...) {
        throw Error("event '" + std::string(s) + "': expected a natural number, got '" + std::string(a) + "'");
      }
    };
    auto pattern = [&](std::string_view g6) {
      Graph h = parse_graph6(g6);
      if (h.order() == 0 || !is_connected(h)) throw Error("pattern must be connected");
      return canonical_form(h);
    };
    if (head == "connected" && arg.empty()) q.kind = Kind::connected;
    else if (head == "fragment_planar" && arg.empty()) q.kind = Kind::fragment_planar;
    else if (head == "frag_eq") q.kind = Kind::frag_eq, q.t = number(arg);
    else if (head == "leaves_ge") q.kind = Kind::leaves_ge, q.t = number(arg);
    else if (head == "leaves_eq") q.kind = Kind::leaves_eq, q.t = number(arg);
    else if (head == "edges_ge") q.kind = Kind::edges_ge, q.t = number(arg);
    else if (head == "maxdeg_ge") q.kind = Kind::maxdeg_ge, q.t = number(arg);
    else if (head == "has_component") q.kind = Kind::has_component, q.pattern = pattern(arg);
    else if (head == "pend_ge") {
      auto c = arg.find(':');
      if (c == std::string_view::npos) throw Error("event '" + std::string(s) + "': expected pend_ge:GRAPH6:t");
      q.kind = Kind::pend_ge;
      q.pattern = pattern(arg.substr(0, c));
      q.t = number(arg.substr(c + 1));
    } else if (head == "in_subclass") q.kind = Kind::in_subclass, q.subclass = parse_class_spec(arg);
    else throw Error("unknown event '" + std::string(s) + "'");
    return q;
  }

  bool holds(const Graph& g, GenusOracle& oracle) const {
    switch (kind) {
      case Kind::connected: return is_connected(g);
      case Kind::frag_eq: return frag_order(g) == t;
      case Kind::fragment_planar: {
        if (g.order() == 0) return true;
        Graph rest = g.induced(full_set(g.order()) & ~giant_component(g));
        return oracle.profile(rest).planar();
      }
      case Kind::leaves_ge: return leaves(g) >= t;
      case Kind::leaves_eq: return leaves(g) == t;
      case Kind::edges_ge: return g.size() >= t;
      case Kind::maxdeg_ge: return max_degree(g) >= t;
      case Kind::has_component:
        for (VertexSet c : component_masks(g))
          if (popcount(c) == pattern->order() && canonical_key(g.induced(c)) == pattern->key()) return true;
        return false;
      case Kind::pend_ge: return pendant_appearances(g, *pattern) >= t;
      case Kind::in_subclass: return oracle.member(g, *subclass);
    }
    return false;
  }
};

// ---- intervals ------------------------------------------------------------

struct Interval {
  double lo = 0, hi = 0;
};

/// 95% Wilson score interval for k successes in n trials.
inline Interval wilson(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054) {
  if (n == 0) return {0, 1};
  const double nn = static_cast<double>(n), p = static_cast<double>(k) / nn, z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct Estimate {
  double value = 0;
  Interval ci;
  std::uint64_t hits = 0, reps = 0;
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::enumeration;
};

// ---- the lab ------------------------------------------------------------------

enum class Statistic { edges, leaves, kappa, frag, maxdeg };

inline Statistic parse_statistic(std::string_view s) {
  if (s == "edges") return Statistic::edges;
  if (s == "leaves") return Statistic::leaves;
  if (s == "kappa") return Statistic::kappa;
  if (s == "frag") return Statistic::frag;
  if (s == "maxdeg") return Statistic::maxdeg;
  throw Error("unknown statistic '" + std::string(s) + "' (expected edges, leaves, kappa, frag or maxdeg)");
}

inline const char* to_string(Statistic s) {
  switch (s) {
    case Statistic::edges: return "edges";
    case Statistic::leaves: return "leaves";
    case Statistic::kappa: return "kappa";
    case Statistic::frag: return "frag";
    default: return "maxdeg";
  }
}

inline int statistic_value(const Graph& g, Statistic s) {
  switch (s) {
    case Statistic::edges: return g.size();
    case Statistic::leaves: return leaves(g);
    case Statistic::kappa: return component_count(g);
    case Statistic::frag: return frag_order(g);
    default: return max_degree(g);
  }
}

/// A is stochastically at least B iff cdf_a(t) <= cdf_b(t) for every t.
struct DominanceReport {
  std::vector<Rational> cdf_a, cdf_b;
  bool dominates = true;
  std::optional<int> first_violation;
};

inline std::vector<Rational> cdf_of(const std::vector<Rational>& pmf) {
  std::vector<Rational> out;
  Rational run = 0;
  for (const auto& p : pmf) out.push_back(run += p);
  return out;
}

inline DominanceReport compare_cdfs(std::vector<Rational> a, std::vector<Rational> b) {
  const std::size_t len = std::max(a.size(), b.size());
  a.resize(len, a.empty() ? Rational(1) : a.back());
  b.resize(len, b.empty() ? Rational(1) : b.back());
  DominanceReport r{a, b, true, std::nullopt};
  for (std::size_t t = 0; t < len; ++t)
    if (a[t] > b[t]) {
      r.dominates = false;
      r.first_violation = static_cast<int>(t);
      break;
    }
  return r;
}

/// Kappa against 1 + Po(1): kappa is stochastically at most 1 + Po(1) iff
/// its CDF lies on or above that of 1 + Po(1) at every point of its support.
struct PoissonDominance {
  std::vector<long double> cdf_kappa, cdf_shifted_poisson;
  bool dominated = true;
  std::optional<int> first_violation;
};

struct FsgrSandwich {
  Ratio fsgr;
  Rational p_frag1;
  Rational upper;        // 1 / fsgr
  long double lower = 0; // (1/e) / fsgr
  bool upper_holds = false, lower_holds = false;
  bool identity_holds = false;    // P(frag=1) = n |Conn(A_{n-1}^{g(n)})| / |A_n^g|
  Rational fsgr1_bound;           // 1 + (2/n) E[e(S_{n-1})]
  bool fsgr1_holds = false;
  bool g_step_non_decreasing = false;  // g(n) >= g(n-1)
};

struct PendantDensity {
  Rational mean_density;  // E[pend(R_n, H)] / n
  long double alpha = 0;  // v(H) rho^v(H) / aut(H)
};

struct Lemma32Report {
  bool bridge_addable = false;
  Rational p_connected, mean_kappa, mean_frag;
  bool p_connected_ok = false, mean_kappa_ok = false, mean_frag_ok = false;
  PoissonDominance kappa;
  bool all_ok() const { return p_connected_ok && mean_kappa_ok && mean_frag_ok && kappa.dominated; }
};

inline long double alpha_h(const UnlabelledGraph& h, long double rho) {
  return h.order() * std::pow(rho, h.order()) / static_cast<long double>(aut_count(h.graph()));
}

class Lab {
 public:
  explicit Lab(Catalog& catalog) : cat_(catalog) {}
  Catalog& catalog() { return cat_; }

  /// Exact law of a statistic over the members on n vertices.
  std::vector<Rational> law(int n, const ClassSpec& spec, Statistic s) {
    std::vector<std::int64_t> tally;
    std::int64_t total = 0;
    cat_.for_each_member(n, spec, [&](const Graph& g) {
      std::size_t v = static_cast<std::size_t>(statistic_value(g, s));
      if (tally.size() <= v) tally.resize(v + 1, 0);
      ++tally[v];
      ++total;
    });
    if (total == 0) throw Error("empty class at n=" + std::to_string(n));
    std::vector<Rational> out;
    for (auto c : tally) out.emplace_back(c, total);
    return out;
  }

  Rational probability(int n, const ClassSpec& spec, const EventQuery& q) {
    std::int64_t hits = 0, total = 0;
    cat_.for_each_member(n, spec, [&](const Graph& g) {
      ++total;
      hits += q.holds(g, cat_.oracle());
    });
    if (total == 0) throw Error("empty class at n=" + std::to_string(n));
    return {hits, total};
  }

  /// Monte-Carlo estimate; replicate i draws with seed.split(i), so the
  /// result does not depend on the thread count.
  Estimate estimate(int n, const ClassSpec& spec, const EventQuery& q, std::uint64_t reps, Seed seed,
                    SamplingMode mode = SamplingMode::enumeration) {
    ClassSampler sampler(cat_, n, spec, mode);
    std::vector<char> hit(reps, 0);
    std::mutex draw_mu;
    parallel_for(reps, cat_.threads(), [&](std::size_t i) {
      Rng rng = seed.split(i).engine();
      Graph g = mode == SamplingMode::enumeration ? sampler.draw(rng) : [&] {
        std::lock_guard lock(draw_mu);
        return sampler.draw(rng);
      }();
      hit[i] = q.holds(g, cat_.oracle());
    });
    Estimate e;
    e.reps = reps;
    e.seed = seed.value;
    e.mode = mode;
    for (char h : hit) e.hits += h;
    e.value = reps ? static_cast<double>(e.hits) / static_cast<double>(reps) : 0.0;
    e.ci = wilson(e.hits, reps);
    return e;
  }

  Rational mean(int n, const ClassSpec& spec, Statistic s) {
    Rational m = 0;
    auto pmf = law(n, spec, s);
    for (std::size_t v = 0; v < pmf.size(); ++v) m += pmf[v] * Rational(static_cast<std::int64_t>(v));
    return m;
  }

  /// E[X_(t)] with x_(t) = x (x-1) ... (x-t+1).
  Rational factorial_moment(int n, const ClassSpec& spec, Statistic s, int t) {
    Rational m = 0;
    auto pmf = law(n, spec, s);
    for (std::size_t v = 0; v < pmf.size(); ++v) {
      std::int64_t f = 1;
      for (int i = 0; i < t; ++i) f *= static_cast<std::int64_t>(v) - i;
      m += pmf[v] * Rational(f);
    }
    return m;
  }

  /// e(R_n) against Bin(3n-6, 1/2) for plain E, OE or NE classes.
  DominanceReport edge_dominance(int n, const ClassSpec& spec) {
    if (spec.closure != Closure::plain) throw Error("edge dominance needs a plain closure");
    if (spec.variant == Variant::OE_NE) throw Error("edge dominance is stated for the E, OE and NE variants");
    if (n < 2) throw Error("edge dominance needs n >= 2");
    return compare_cdfs(cdf_of(law(n, spec, Statistic::edges)), cdf_of(binomial_pmf(3 * n - 6, Rational(1, 2))));
  }

  FsgrSandwich fsgr_sandwich(int n, const ClassSpec& spec) {
    if (n < 2) throw Error("fsgr sandwich needs n >= 2");
    if (spec.closure != Closure::plain) throw Error("fsgr sandwich needs a plain closure");
    FsgrSandwich r;
    ClassCount top = cat_.count(n, spec);
    ClassCount below = cat_.count(n - 1, Catalog::with_constant(spec, spec.g(n)));
    r.fsgr = cat_.fsgr(n, spec);
    if (!r.fsgr.value || top.count == 0) throw Error("fsgr undefined: empty class");
    r.p_frag1 = probability(n, spec, EventQuery::parse("frag_eq:1"));
    r.upper = 1 / *r.fsgr.value;
    r.lower = 1 / (std::numbers::e_v<long double> * to_real(*r.fsgr.value));
    r.upper_holds = r.p_frag1 <= r.upper;
    r.lower_holds = to_real(r.p_frag1) >= r.lower;
    // At n = 2 the two isolated vertices tie for the giant, so the identity
    // would count the edgeless graph twice; it applies from n = 3 on.
    r.identity_holds = n < 3 || r.p_frag1 == Rational(static_cast<std::int64_t>(n) * static_cast<std::int64_t>(below.connected),
                                             static_cast<std::int64_t>(top.count));
    Rational mean_edges = 0;
    std::int64_t edge_sum = 0;
    for (std::size_t e = 0; e < below.histogram.size(); ++e) edge_sum += static_cast<std::int64_t>(e * below.histogram[e]);
    if (below.count) mean_edges = Rational(edge_sum, static_cast<std::int64_t>(below.count));
    r.fsgr1_bound = 1 + Rational(2, n) * mean_edges;
    r.fsgr1_holds = *r.fsgr.value >= r.fsgr1_bound;
    r.g_step_non_decreasing = spec.g(n) >= spec.g(n - 1);
    return r;
  }

  PendantDensity pendant_density(int n, const ClassSpec& spec, const Graph& h, long double rho) {
    if (h.order() == 0 || !is_connected(h)) throw Error("pattern must be connected");
    std::int64_t total = 0, sum = 0;
    cat_.for_each_member(n, spec, [&](const Graph& g) {
      ++total;
      sum += pendant_appearances(g, h);
    });
    if (total == 0) throw Error("empty class at n=" + std::to_string(n));
    return {Rational(sum, total * n), alpha_h(canonical_form(h), rho)};
  }

  /// Exhaustive: every member plus an edge joining two of its components
  /// is again a member.
  bool bridge_addable(int n, const ClassSpec& spec) {
    bool ok = true;
    cat_.for_each_member(n, spec, [&](const Graph& g) {
      if (!ok) return;
      auto comps = component_masks(g);
      for (std::size_t a = 0; a < comps.size() && ok; ++a)
        for (std::size_t b = a + 1; b < comps.size() && ok; ++b)
          for (int u : members(comps[a]))
            for (int w : members(comps[b])) {
              Graph h = g;
              h.add_edge(u, w);
              if (!cat_.member(h, spec)) {
                ok = false;
                return;
              }
            }
    });
    return ok;
  }

  Lemma32Report lemma32(int n, const ClassSpec& spec) {
    Lemma32Report r;
    r.bridge_addable = bridge_addable(n, spec);
    r.p_connected = probability(n, spec, EventQuery::parse("connected"));
    r.mean_kappa = mean(n, spec, Statistic::kappa);
    r.mean_frag = mean(n, spec, Statistic::frag);
    r.p_connected_ok = to_real(r.p_connected) >= 1 / std::numbers::e_v<long double>;
    r.mean_kappa_ok = r.mean_kappa < 2;
    r.mean_frag_ok = r.mean_frag < 2;
    r.kappa = kappa_vs_poisson(law(n, spec, Statistic::kappa));
    return r;
  }

  static PoissonDominance kappa_vs_poisson(const std::vector<Rational>& kappa_pmf) {
    PoissonDominance d;
    auto cdf = cdf_of(kappa_pmf);
    // P(1 + Po(1) <= t) = sum_{k <= t-1} e^{-1} / k!, an exact partial sum.
    long double term = std::exp(-1.0L), run = 0;
    for (std::size_t t = 0; t < cdf.size(); ++t) {
      if (t >= 1) {
        run += term;
        term /= static_cast<long double>(t);
      }
      d.cdf_kappa.push_back(to_real(cdf[t]));
      d.cdf_shifted_poisson.push_back(run);
      if (d.dominated && d.cdf_kappa.back() < run) {
        d.dominated = false;
        d.first_violation = static_cast<int>(t);
      }
    }
    return d;
  }

 private:
  Catalog& cat_;
};

// ---- set systems ----------------------------------------------------------

/// Families of subsets of {0..k-1}, each subset a bit mask.
using Family = std::vector<std::uint32_t>;

inline bool downward_closed(const Family& f) {
  std::vector<std::uint32_t> sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end());
  for (auto s : sorted)
    for (std::uint32_t r = s; r; r &= r - 1)
      if (!std::binary_search(sorted.begin(), sorted.end(), s & ~(r & (~r + 1)))) return false;
  return true;
}

/// Law of |R| for R uniform on a non-empty down-set, against Bin(r, 1/2)
/// where r is the least size of a maximal member.
inline DominanceReport downward_closed_dominance(const Family& family) {
  if (family.empty()) throw Error("family is empty");
  Family f(family.begin(), family.end());
  std::sort(f.begin(), f.end());
  if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw Error("family lists a set twice");
  if (!downward_closed(f)) throw Error("family is not closed downwards");
  int r = std::numeric_limits<int>::max();
  for (auto s : f) {
    bool maximal = true;
    for (auto t : f)
      if (t != s && (t & s) == s) maximal = false;
    if (maximal) r = std::min(r, std::popcount(s));
  }
  std::vector<std::int64_t> tally;
  for (auto s : f) {
    std::size_t k = static_cast<std::size_t>(std::popcount(s));
    if (tally.size() <= k) tally.resize(k + 1, 0);
    ++tally[k];
  }
  std::vector<Rational> pmf;
  for (auto c : tally) pmf.emplace_back(c, static_cast<std::int64_t>(f.size()));
  return compare_cdfs(cdf_of(pmf), cdf_of(binomial_pmf(r, Rational(1, 2))));
}

/// Every non-empty down-set of the subsets of a k-element ground set,
/// generated from antichains of the subset lattice.
inline std::vector<Family> all_down_sets(int k) {
  if (k < 0 || k > 4) throw Error("down-set enumeration supports ground sets of size 0..4");
  const std::uint32_t subsets = 1U << k;
  std::vector<Family> out;
  // A down-set is determined by its indicator over the 2^k subsets; walk
  // indicators and keep the closed ones (2^16 candidates at k = 4).
  for (std::uint64_t ind = 1; ind < (std::uint64_t{1} << subsets); ++ind) {
    Family f;
    for (std::uint32_t s = 0; s < subsets; ++s)
      if (ind >> s & 1U) f.push_back(s);
    if (downward_closed(f)) out.push_back(std::move(f));
  }
  return out;
}

// ---- unlabelled ---------------------------------------------------------------

struct DisconnectRatio {
  int n = 0;
  std::uint64_t unlabelled = 0, connected = 0;
  Rational p_disconnected;
  Rational target;  // n 2^{-n+1}
  Rational ratio;
};

inline DisconnectRatio unlabelled_disconnect_ratio(Census& census, int n, int threads = 1) {
  if (n < 1) throw Error("unlabelled ratio needs n >= 1");
  if (n > kCensusCap) throw Error("census cap exceeded");
  const auto& level = census.level(n);
  std::vector<char> conn(level.size());
  parallel_for(level.size(), threads, [&](std::size_t i) { conn[i] = is_connected(graph_from_key(level[i])); });
  DisconnectRatio r;
  r.n = n;
  r.unlabelled = level.size();
  for (char c : conn) r.connected += c;
  const auto u = static_cast<std::int64_t>(r.unlabelled), c = static_cast<std::int64_t>(r.connected);
  r.p_disconnected = Rational(u - c, u);
  r.target = Rational(n, std::int64_t{1} << (n - 1));
  r.ratio = r.p_disconnected / r.target;
  return r;
}

}  // namespace genuslab
