#pragma once

// Exact minimum Euler genus by branch and bound over signed rotation systems.
//
// The search builds faces one at a time. Starting from the lowest unused
// flag it walks the face, and whenever the walk needs a rotation link that
// is not fixed yet it branches over every admissible choice (links at a
// vertex must close into a single cycle only once all its darts are
// linked). In nonorientable mode an edge's sign is branched on the first
// time the walk crosses it; spanning-tree edges stay +1, which quotients out
// vertex flips. A face of a simple graph with minimum degree 2 is at least
// as long as the girth, so with R unwalked dart sides at most R / girth more
// faces can close: the bound that prunes every branch unable to reach the
// target face count.
//
// Genus is additive over blocks, so the engine works per block and
// assembles block witnesses by concatenating rotations at cut vertices.

#include <array>
#include <atomic>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>

#include "genuslab/canonical.hpp"
#include "genuslab/embedding.hpp"
#include "genuslab/parallel.hpp"
#include "genuslab/structure.hpp"

namespace genuslab {

enum class GenusMode { orientable, nonorientable, either };
enum class Variant { OE, NE, E, OE_NE };

inline const char* to_string(GenusMode m) {
  switch (m) {
    case GenusMode::orientable: return "orientable";
    case GenusMode::nonorientable: return "nonorientable";
    default: return "either";
  }
}
inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::OE: return "OE";
    case Variant::NE: return "NE";
    case Variant::E: return "E";
    default: return "OE_NE";
  }
}

inline constexpr int kGenusCap = 8;
inline constexpr int kMaxSearchEdges = 48;

struct SearchLimits {
  int vertex_cap = kGenusCap;
  std::uint64_t node_budget = 0;  // per top-level branch of each target search; 0 means unlimited
  int threads = 1;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// Euler genus of K_n in the given orientability (Ringel-Youngs).
inline int ringel_youngs(int n, Orientability mode) {
  if (n < 1) throw Error("ringel_youngs needs n >= 1");
  if (n <= 4) return 0;
  const int t = (n - 3) * (n - 4);
  if (mode == Orientability::orientable) return 2 * ((t + 11) / 12);
  return n == 7 ? 3 : (t + 5) / 6;
}

/// Largest cost any n-vertex graph can have in the variant: K_n's.
inline int variant_ceiling(int n, Variant v) {
  if (n <= 4) return 0;
  const int o = ringel_youngs(n, Orientability::orientable), u = ringel_youngs(n, Orientability::nonorientable);
  switch (v) {
    case Variant::OE: return o;
    case Variant::NE: return u;
    case Variant::E: return std::min(o, u);
    default: return std::max(o, u);
  }
}

enum class Certificate { euler_bound, exhausted_search, budget_interval, planar_convention };

inline const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::euler_bound: return "euler_bound";
    case Certificate::exhausted_search: return "exhausted_search";
    case Certificate::budget_interval: return "budget_interval";
    default: return "planar_convention";
  }
}

struct GenusResult {
  int euler_genus = 0;  // equals upper; a certified point value when lower == upper
  int lower = 0;
  int upper = 0;
  Orientability orientability = Orientability::orientable;
  EmbeddingScheme witness;  // attains `upper`
  Certificate certificate = Certificate::euler_bound;
  /// Nonorientable mode on a planar graph reports 0 by the class convention
  /// NE^0 = planar graphs; the witness is then planar and this holds the
  /// least nonorientable Euler genus (1), or nothing for forests.
  bool planar_convention = false;
  std::optional<int> geometric_nonorientable;
  std::uint64_t nodes = 0;

  bool exact() const { return lower == upper; }
};

namespace detail {

struct SearchGraph {
  int k = 0, m = 0, gmin = 1;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> vdarts;  // darts leaving each vertex
  std::vector<int> deg;
  std::vector<char> tree;
  std::vector<int> global;  // local vertex -> caller's vertex id

  int tail(int d) const { return d & 1 ? edges[d >> 1].second : edges[d >> 1].first; }
  int head(int d) const { return d & 1 ? edges[d >> 1].first : edges[d >> 1].second; }
};

inline SearchGraph make_search_graph(const Graph& h, std::vector<int> global) {
  SearchGraph s;
  s.k = h.order();
  s.edges = h.edges();
  s.m = static_cast<int>(s.edges.size());
  if (s.m > kMaxSearchEdges) throw Error("genus cap exceeded: too many edges in a block");
  s.vdarts.assign(static_cast<std::size_t>(s.k), {});
  for (int e = 0; e < s.m; ++e) {
    s.vdarts[s.edges[e].first].push_back(2 * e);
    s.vdarts[s.edges[e].second].push_back(2 * e + 1);
  }
  s.deg.resize(static_cast<std::size_t>(s.k));
  int min_deg = std::numeric_limits<int>::max();
  for (int v = 0; v < s.k; ++v) {
    s.deg[v] = h.degree(v);
    min_deg = std::min(min_deg, s.deg[v]);
  }
  s.gmin = min_deg >= 2 ? std::max(girth(h), 1) : 1;
  s.tree.assign(static_cast<std::size_t>(s.m), 0);
  std::vector<char> seen(static_cast<std::size_t>(s.k), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int d : s.vdarts[queue[q]]) {
      int w = s.head(d);
      if (!seen[w]) {
        seen[w] = 1;
        s.tree[d >> 1] = 1;
        queue.push_back(w);
      }
    }
  s.global = std::move(global);
  return s;
}

struct SearchState {
  std::array<std::int8_t, 2 * kMaxSearchEdges> succ;
  std::array<std::int8_t, 2 * kMaxSearchEdges> pred;
  std::array<std::int8_t, kMaxSearchEdges> sign;
  std::array<std::uint64_t, 4 * kMaxSearchEdges / 64> used{};
  std::int16_t faces = 0, steps = 0, face_len = 0, start = -1, cur = -1, max_len = 0;
  std::int16_t negatives = 0, undecided = 0;
};

class FaceSearch {
 public:
  using Visitor = std::function<bool(const SearchState&)>;  // true stops the search

  FaceSearch(const SearchGraph& g, bool nonorientable, int min_faces, std::uint64_t budget)
      : g_(g), nonorientable_(nonorientable), min_faces_(min_faces), budget_(budget) {}

  std::optional<SearchState> initial() const {
    SearchState s;
    s.succ.fill(-1);
    s.pred.fill(-1);
    s.sign.fill(1);
    if (nonorientable_) {
      for (int e = 0; e < g_.m; ++e)
        if (!g_.tree[e]) {
          s.sign[e] = 0;
          ++s.undecided;
        }
      if (s.undecided == 0) return std::nullopt;
    }
    return s;
  }

  /// Explores below `s`; returns true if the visitor stopped the search or
  /// the budget ran out (see aborted()).
  bool run(const SearchState& s, const Visitor& visit) {
    visit_ = &visit;
    return explore(s, 0);
  }

  /// States reached after `depth` branching decisions. Leaves met on the way
  /// go to the visitor.
  std::vector<SearchState> frontier(const SearchState& s, int depth, const Visitor& visit) {
    collect_depth_ = depth;
    visit_ = &visit;
    collected_.clear();
    explore(s, 0);
    collect_depth_ = -1;
    return std::move(collected_);
  }

  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  static int flag(int dart, int sense) { return 2 * dart + (sense > 0 ? 0 : 1); }
  static bool is_used(const SearchState& s, int f) { return s.used[f >> 6] >> (f & 63) & 1U; }
  static void set_used(SearchState& s, int f) { s.used[f >> 6] |= std::uint64_t{1} << (f & 63); }

  int lowest_unused(const SearchState& s) const {
    for (int f = 0; f < 4 * g_.m; ++f)
      if (!is_used(s, f)) return f;
    return -1;
  }

  // Adding the link y -> x at vertex w: x heads a chain, y tails one. If they
  // are the same chain the link closes the cycle, allowed only when it then
  // holds every dart at w.
  bool link_ok(const SearchState& s, int y, int x, int w) const {
    int t = x, len = 1;
    while (s.succ[t] >= 0) {
      t = s.succ[t];
      ++len;
    }
    return t != y || len == g_.deg[w];
  }

  bool bound_ok(const SearchState& s) const {
    const int remaining = 2 * g_.m - s.steps;
    int upper;
    if (s.cur < 0) {
      upper = s.faces + remaining / g_.gmin;
    } else {
      const int need = std::max(1, g_.gmin - s.face_len);
      if (remaining < need) return false;
      upper = s.faces + 1 + (remaining - need) / g_.gmin;
    }
    return upper >= min_faces_;
  }

  bool arrive(SearchState& s, int x, int sense) const {
    const int nf = flag(x, sense);
    if (nf == s.start) {
      ++s.faces;
      s.max_len = std::max(s.max_len, s.face_len);
      s.cur = -1;
    } else {
      if (is_used(s, nf)) return false;
      set_used(s, nf);
      s.cur = static_cast<std::int16_t>(nf);
    }
    return bound_ok(s);
  }

  bool branch(SearchState& c, int depth) {
    if (depth == collect_depth_) {
      collected_.push_back(c);
      return false;
    }
    return explore(c, depth + 1);
  }

  bool explore(SearchState s, int depth) {
    while (true) {
      ++nodes_;
      if (budget_ && nodes_ > budget_) {
        aborted_ = true;
        return true;
      }
      if (s.cur < 0) {
        if (s.steps == 2 * g_.m) return (*visit_)(s);
        const int f0 = lowest_unused(s);
        set_used(s, f0);
        s.start = s.cur = static_cast<std::int16_t>(f0);
        s.face_len = 0;
      }
      const int d = s.cur >> 1, e = d >> 1;
      if (s.sign[e] == 0) {
        for (int sg : {1, -1}) {
          SearchState c = s;
          c.sign[e] = static_cast<std::int8_t>(sg);
          --c.undecided;
          if (sg < 0) ++c.negatives;
          if (c.undecided == 0 && c.negatives == 0) continue;
          if (branch(c, depth)) return true;
        }
        return false;
      }
      const int sense = (s.cur & 1) ? -1 : 1;
      const int s2 = sense * s.sign[e];
      const int a = d ^ 1;
      const int mirror = flag(a, -s2);
      if (is_used(s, mirror)) return false;
      set_used(s, mirror);
      ++s.steps;
      ++s.face_len;
      const int x = s2 > 0 ? s.succ[a] : s.pred[a];
      if (x >= 0) {
        if (!arrive(s, x, s2)) return false;
        continue;
      }
      const int w = g_.tail(a);
      for (int cand : g_.vdarts[w]) {
        if (s2 > 0) {
          if (s.pred[cand] >= 0 || !link_ok(s, a, cand, w)) continue;
        } else {
          if (s.succ[cand] >= 0 || !link_ok(s, cand, a, w)) continue;
        }
        SearchState c = s;
        if (s2 > 0) {
          c.succ[a] = static_cast<std::int8_t>(cand);
          c.pred[cand] = static_cast<std::int8_t>(a);
        } else {
          c.succ[cand] = static_cast<std::int8_t>(a);
          c.pred[a] = static_cast<std::int8_t>(cand);
        }
        if (!arrive(c, cand, s2)) continue;
        if (branch(c, depth)) return true;
      }
      return false;
    }
  }

  const SearchGraph& g_;
  bool nonorientable_;
  int min_faces_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  int collect_depth_ = -1;
  std::vector<SearchState> collected_;
  const Visitor* visit_ = nullptr;
};

inline EmbeddingScheme scheme_from_state(const SearchGraph& g, const SearchState& s, int global_order) {
  EmbeddingScheme out;
  out.rotation.resize(static_cast<std::size_t>(global_order));
  for (int v = 0; v < g.k; ++v) {
    if (g.vdarts[v].empty()) continue;
    const int first = g.vdarts[v].front();
    int d = first;
    auto& rot = out.rotation[g.global[v]];
    do {
      rot.push_back(g.global[g.head(d)]);
      d = s.succ[d];
    } while (d != first && d >= 0);
  }
  for (int e = 0; e < g.m; ++e)
    if (s.sign[e] < 0) {
      int u = g.global[g.edges[e].first], v = g.global[g.edges[e].second];
      out.negative.emplace_back(std::min(u, v), std::max(u, v));
    }
  out.normalize();
  return out;
}

inline constexpr int kFrontierDepth = 3;

enum class Decision { found, refuted, unknown };

struct DecideOutcome {
  Decision status = Decision::refuted;
  SearchState witness;
  std::uint64_t nodes = 0;
};

/// Is there a scheme of the given orientability with at least `target`
/// faces? The tree is split at a fixed depth; the lowest-index branch with a
/// solution supplies the witness, so the answer does not depend on threads.
inline DecideOutcome decide_faces(const SearchGraph& g, bool nonorientable, int target, const SearchLimits& lim) {
  DecideOutcome out;
  FaceSearch root(g, nonorientable, target, 0);
  auto init = root.initial();
  if (!init) return out;
  std::optional<SearchState> early;
  FaceSearch::Visitor grab = [&](const SearchState& s) {
    if (!early) early = s;
    return true;
  };
  auto items = root.frontier(*init, kFrontierDepth, grab);
  out.nodes = root.nodes();
  if (early) {
    out.status = Decision::found;
    out.witness = *early;
    return out;
  }
  std::vector<Decision> status(items.size(), Decision::refuted);
  std::vector<SearchState> found(items.size());
  std::vector<std::uint64_t> nodes(items.size(), 0);
  std::atomic<std::size_t> cutoff{items.size()};
  parallel_for(items.size(), lim.threads, [&](std::size_t i) {
    if (i > cutoff.load()) return;
    FaceSearch sub(g, nonorientable, target, lim.node_budget);
    FaceSearch::Visitor stop = [&](const SearchState& s) {
      found[i] = s;
      return true;
    };
    bool stopped = sub.run(items[i], stop);
    nodes[i] = sub.nodes();
    if (sub.aborted()) {
      status[i] = Decision::unknown;
    } else if (stopped) {
      status[i] = Decision::found;
      std::size_t cur = cutoff.load();
      while (i < cur && !cutoff.compare_exchange_weak(cur, i)) {
      }
    }
  });
  const std::size_t win = cutoff.load();
  bool unknown = false;
  for (std::size_t i = 0; i < items.size() && i <= win; ++i) {
    if (i < win) unknown = unknown || status[i] == Decision::unknown;
  }
  // Node totals only over branches every schedule visits.
  for (std::size_t i = 0; i < items.size() && i <= win; ++i) out.nodes += nodes[i];
  if (win < items.size()) {
    out.status = Decision::found;
    out.witness = found[win];
  } else {
    out.status = unknown ? Decision::unknown : Decision::refuted;
  }
  return out;
}

/// Every leaf with at least `min_faces` faces, as (faces, longest face).
inline std::set<std::pair<int, int>> exhaust_faces(const SearchGraph& g, bool nonorientable, int min_faces,
                                                   const SearchLimits& lim, std::uint64_t& leaves) {
  std::set<std::pair<int, int>> out;
  FaceSearch root(g, nonorientable, min_faces, 0);
  auto init = root.initial();
  if (!init) return out;
  std::uint64_t early_leaves = 0;
  FaceSearch::Visitor collect = [&](const SearchState& s) {
    out.emplace(s.faces, s.max_len);
    ++early_leaves;
    return false;
  };
  auto items = root.frontier(*init, kFrontierDepth, collect);
  std::vector<std::set<std::pair<int, int>>> part(items.size());
  std::vector<std::uint64_t> counts(items.size(), 0);
  std::vector<char> aborted(items.size(), 0);
  parallel_for(items.size(), lim.threads, [&](std::size_t i) {
    FaceSearch sub(g, nonorientable, min_faces, lim.node_budget);
    FaceSearch::Visitor v = [&](const SearchState& s) {
      part[i].emplace(s.faces, s.max_len);
      ++counts[i];
      return false;
    };
    sub.run(items[i], v);
    aborted[i] = sub.aborted();
  });
  leaves += early_leaves;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (aborted[i]) throw BudgetExhausted("search budget exhausted during exhaustive embedding scan");
    out.insert(part[i].begin(), part[i].end());
    leaves += counts[i];
  }
  return out;
}

}  // namespace detail

/// Minimum Euler genus of one orientability for a 2-connected block or a
/// bridge, as a certified interval with a witness attaining the upper end.
struct GenusBound {
  bool exists = true;  // false: no embedding of this orientability (a bridge has no nonorientable one)
  int lower = 0, upper = 0;
  bool by_euler = false;  // upper equals the Euler-formula lower bound
  EmbeddingScheme witness;
};

struct BlockProfile {
  GenusBound orientable, nonorientable;
  std::uint64_t nodes = 0;
};

namespace detail {

inline GenusBound search_block(const SearchGraph& sg, bool nonorientable, const SearchLimits& lim, std::uint64_t& nodes) {
  GenusBound b;
  const int v = sg.k, e = sg.m;
  const int cycle_rank = e - v + 1;
  int euler_lb = std::max(0, 2 - v + e - (2 * e) / sg.gmin);
  int h = euler_lb;
  if (nonorientable) {
    if (cycle_rank < 1) {
      b.exists = false;
      return b;
    }
    h = std::max(h, 1);
  } else if (h % 2) {
    ++h;
  }
  const int first = h;
  int first_unknown = -1;
  for (; h <= cycle_rank; h += nonorientable ? 1 : 2) {
    auto out = decide_faces(sg, nonorientable, 2 - v + e - h, lim);
    nodes += out.nodes;
    if (out.status == Decision::found) {
      b.upper = h;
      b.lower = first_unknown >= 0 ? first_unknown : h;
      b.by_euler = h == first && first_unknown < 0;
      b.witness = scheme_from_state(sg, out.witness, static_cast<int>(sg.global.size()));
      return b;
    }
    if (out.status == Decision::unknown && first_unknown < 0) first_unknown = h;
  }
  // Nothing decided: any scheme still bounds the genus from above.
  Graph local(v);
  for (auto [a, c] : sg.edges) local.add_edge(a, c);
  EmbeddingScheme plain;
  plain.rotation.resize(static_cast<std::size_t>(v));
  for (int x = 0; x < v; ++x)
    for (int d : sg.vdarts[x]) plain.rotation[x].push_back(sg.head(d));
  if (nonorientable)
    for (int i = 0; i < e; ++i)
      if (!sg.tree[i]) {
        plain.negative.push_back(sg.edges[i]);
        break;
      }
  b.upper = euler_genus_of_scheme(local, plain).euler_genus;
  b.lower = first;
  b.witness.rotation.resize(sg.global.size());
  for (int x = 0; x < v; ++x)
    for (int w : plain.rotation[x]) b.witness.rotation[sg.global[x]].push_back(sg.global[w]);
  for (auto [a, c] : plain.negative)
    b.witness.negative.emplace_back(std::min(sg.global[a], sg.global[c]), std::max(sg.global[a], sg.global[c]));
  b.witness.normalize();
  return b;
}

inline BlockProfile profile_block(const Graph& block, const SearchLimits& lim) {
  BlockProfile p;
  const int k = block.order();
  std::vector<int> ident(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) ident[i] = i;
  if (block.size() == 1) {
    auto [u, w] = block.edges().front();
    p.orientable.witness.rotation.assign(static_cast<std::size_t>(k), {});
    p.orientable.witness.rotation[u] = {w};
    p.orientable.witness.rotation[w] = {u};
    p.orientable.by_euler = true;
    p.nonorientable.exists = false;
    return p;
  }
  auto sg = make_search_graph(block, ident);
  p.orientable = search_block(sg, false, lim, p.nodes);
  p.nonorientable = search_block(sg, true, lim, p.nodes);
  return p;
}

inline EmbeddingScheme relabel(const EmbeddingScheme& s, std::span<const int> to, int order) {
  EmbeddingScheme out;
  out.rotation.resize(static_cast<std::size_t>(order));
  for (std::size_t v = 0; v < s.rotation.size(); ++v)
    for (int u : s.rotation[v]) out.rotation[to[v]].push_back(to[u]);
  for (auto [a, b] : s.negative) out.negative.emplace_back(std::min(to[a], to[b]), std::max(to[a], to[b]));
  out.normalize();
  return out;
}

}  // namespace detail

/// Thread-safe memo of exact block profiles keyed by canonical form; the
/// witnesses are stored in canonical labelling.
class GenusCache {
 public:
  std::optional<BlockProfile> find(const CanonicalKey& k) const {
    std::lock_guard lock(mu_);
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void store(const CanonicalKey& k, const BlockProfile& p) {
    std::lock_guard lock(mu_);
    map_.emplace(k, p);
  }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

 private:
  mutable std::mutex mu_;
  std::unordered_map<CanonicalKey, BlockProfile, CanonicalKeyHash> map_;
};

/// Profiles of every block of g, witnesses in g's vertex ids.
inline std::vector<BlockProfile> block_profiles(const Graph& g, const SearchLimits& lim, GenusCache* cache = nullptr) {
  if (g.order() > lim.vertex_cap) throw Error("genus cap exceeded");
  std::vector<BlockProfile> out;
  for (const Block& b : block_decomposition(g)) {
    Graph bg = block_graph(b);
    Canonization can = canonize(bg, 11);
    BlockProfile p;
    std::optional<BlockProfile> hit = cache ? cache->find(can.key) : std::nullopt;
    if (hit) {
      p = *hit;
      p.nodes = 0;
    } else {
      p = detail::profile_block(can.canonical, lim);
      bool exact = p.orientable.lower == p.orientable.upper &&
                   (!p.nonorientable.exists || p.nonorientable.lower == p.nonorientable.upper);
      if (cache && exact) cache->store(can.key, p);
    }
    // canonical vertex position[v] corresponds to block vertex v
    std::vector<int> to(b.vertices.size());
    for (std::size_t v = 0; v < b.vertices.size(); ++v) to[can.position[v]] = b.vertices[v];
    p.orientable.witness = detail::relabel(p.orientable.witness, to, g.order());
    if (p.nonorientable.exists) p.nonorientable.witness = detail::relabel(p.nonorientable.witness, to, g.order());
    out.push_back(std::move(p));
  }
  return out;
}

namespace detail {

inline EmbeddingScheme assemble(const Graph& g, const std::vector<const EmbeddingScheme*>& parts) {
  EmbeddingScheme s;
  s.rotation.resize(static_cast<std::size_t>(g.order()));
  for (const auto* p : parts) {
    for (int v = 0; v < g.order(); ++v) s.rotation[v].insert(s.rotation[v].end(), p->rotation[v].begin(), p->rotation[v].end());
    s.negative.insert(s.negative.end(), p->negative.begin(), p->negative.end());
  }
  s.normalize();
  return s;
}

// Per block: the better of the two orientabilities (orientable on ties).
inline const GenusBound& either_choice(const BlockProfile& p) {
  if (!p.nonorientable.exists || p.orientable.upper <= p.nonorientable.upper) return p.orientable;
  return p.nonorientable;
}
inline int either_lower(const BlockProfile& p) {
  return p.nonorientable.exists ? std::min(p.orientable.lower, p.nonorientable.lower) : p.orientable.lower;
}

}  // namespace detail

/// Combines block profiles into the whole-graph result for `mode`.
inline GenusResult combine_blocks(const Graph& g, const std::vector<BlockProfile>& blocks, GenusMode mode) {
  GenusResult r;
  std::vector<const EmbeddingScheme*> parts;
  bool all_euler = true;
  for (const auto& p : blocks) r.nodes += p.nodes;
  bool planar = true;
  for (const auto& p : blocks) planar = planar && p.orientable.upper == 0;

  if (mode == GenusMode::orientable || (mode == GenusMode::nonorientable && planar)) {
    for (const auto& p : blocks) {
      r.lower += p.orientable.lower;
      r.upper += p.orientable.upper;
      all_euler = all_euler && p.orientable.by_euler;
      parts.push_back(&p.orientable.witness);
    }
    if (mode == GenusMode::nonorientable) {
      r.planar_convention = true;
      bool has_cycle = std::any_of(blocks.begin(), blocks.end(), [](const BlockProfile& p) { return p.nonorientable.exists; });
      if (has_cycle) r.geometric_nonorientable = 1;
    }
  } else if (mode == GenusMode::either) {
    for (const auto& p : blocks) {
      const GenusBound& c = detail::either_choice(p);
      r.lower += detail::either_lower(p);
      r.upper += c.upper;
      all_euler = all_euler && c.by_euler;
      parts.push_back(&c.witness);
    }
  } else {
    // At least one block nonorientable; the rest take their better choice.
    int best = -1, best_upper = 0;
    int best_lower = std::numeric_limits<int>::max();
    int sum_upper = 0, sum_lower = 0;
    for (const auto& p : blocks) {
      sum_upper += detail::either_choice(p).upper;
      sum_lower += detail::either_lower(p);
    }
    for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
      const auto& p = blocks[i];
      if (!p.nonorientable.exists) continue;
      int up = sum_upper - detail::either_choice(p).upper + p.nonorientable.upper;
      int lo = sum_lower - detail::either_lower(p) + p.nonorientable.lower;
      if (best < 0 || up < best_upper) best = i, best_upper = up;
      best_lower = std::min(best_lower, lo);
    }
    if (best < 0) throw Error("graph has no nonorientable embedding");
    r.lower = best_lower;
    r.upper = best_upper;
    for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
      const GenusBound& c = i == best ? blocks[i].nonorientable : detail::either_choice(blocks[i]);
      all_euler = all_euler && c.by_euler;
      parts.push_back(&c.witness);
    }
  }
  r.euler_genus = r.upper;
  r.witness = detail::assemble(g, parts);
  if (r.witness.rotation.empty()) r.witness.rotation.resize(static_cast<std::size_t>(g.order()));
  if (r.planar_convention) {
    r.certificate = Certificate::planar_convention;
  } else if (r.lower < r.upper) {
    r.certificate = Certificate::budget_interval;
  } else {
    r.certificate = all_euler ? Certificate::euler_bound : Certificate::exhausted_search;
  }
  auto traced = euler_genus_of_scheme(g, r.witness);
  if (traced.euler_genus != r.upper)
    throw std::logic_error("assembled witness traces to Euler genus " + std::to_string(traced.euler_genus) + ", expected " +
                           std::to_string(r.upper));
  r.orientability = traced.orientability;
  return r;
}

inline GenusResult min_euler_genus(const Graph& g, GenusMode mode, const SearchLimits& lim = {}, GenusCache* cache = nullptr) {
  return combine_blocks(g, block_profiles(g, lim, cache), mode);
}

// ---- relevant embeddings -------------------------------------------------

struct RelevantFaceStats {
  int min_faces = 0, max_faces = 0;
  int max_face_size = 0;  // longest facial walk of any component, walks not merged
  int min_genus = 0, max_genus = 0;
  std::uint64_t schemes = 0;  // relevant component schemes visited
};

/// Extremes over relevant embeddings: Euler genus at most `budget`, of the
/// orientability the variant asks for. For NE a planar graph with no
/// nonorientable embedding in budget falls back to its planar embeddings.
inline RelevantFaceStats relevant_face_stats(const Graph& g, int budget, Variant variant, SearchLimits lim = {.vertex_cap = 7}) {
  if (variant == Variant::OE_NE) throw Error("relevant embeddings are defined for OE, NE and E");
  if (g.order() > lim.vertex_cap) throw Error("genus cap exceeded");
  if (g.order() == 0) throw Error("not embeddable within budget");
  struct Option {
    int h;
    bool nonorientable;
    int max_len;
    auto operator<=>(const Option&) const = default;
  };
  RelevantFaceStats stats;
  std::set<Option> combined{{0, false, 0}};
  int base_faces = 0;
  auto comps = component_masks(g);
  for (VertexSet c : comps) {
    Graph h = g.induced(c);
    const int v = h.order(), e = h.size();
    base_faces += 2 - v + e;
    std::set<Option> mine;
    if (e == 0) {
      mine.insert({0, false, 0});
    } else {
      std::vector<int> global = members(c);
      auto sg = detail::make_search_graph(h, global);
      const int min_faces = std::max(1, 2 - v + e - budget);
      for (bool non : {false, true}) {
        if (non && variant == Variant::OE) continue;
        for (auto [f, len] : detail::exhaust_faces(sg, non, min_faces, lim, stats.schemes)) mine.insert({2 - v + e - f, non, len});
      }
    }
    std::set<Option> next;
    for (const auto& a : combined)
      for (const auto& b : mine)
        if (a.h + b.h <= budget) next.insert({a.h + b.h, a.nonorientable || b.nonorientable, std::max(a.max_len, b.max_len)});
    combined = std::move(next);
  }
  base_faces -= static_cast<int>(comps.size()) - 1;
  auto relevant = [&](const Option& o) {
    switch (variant) {
      case Variant::OE: return !o.nonorientable;
      case Variant::NE: return o.nonorientable;
      default: return true;
    }
  };
  bool any = std::any_of(combined.begin(), combined.end(), relevant);
  bool planar_fallback = false;
  if (!any && variant == Variant::NE) {
    planar_fallback = std::any_of(combined.begin(), combined.end(), [](const Option& o) { return o.h == 0; });
  }
  if (!any && !planar_fallback) throw Error("not embeddable within budget");
  bool first = true;
  for (const auto& o : combined) {
    bool keep = any ? relevant(o) : (o.h == 0 && !o.nonorientable);
    if (!keep) continue;
    if (first) {
      stats.min_genus = stats.max_genus = o.h;
      first = false;
    }
    stats.min_genus = std::min(stats.min_genus, o.h);
    stats.max_genus = std::max(stats.max_genus, o.h);
    stats.max_face_size = std::max(stats.max_face_size, o.max_len);
  }
  stats.min_faces = base_faces - stats.max_genus;
  stats.max_faces = base_faces - stats.min_genus;
  return stats;
}

}  // namespace genuslab
