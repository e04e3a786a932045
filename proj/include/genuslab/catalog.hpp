#pragma once

// Class membership, exact enumeration and counting for embeddable classes
// and their hereditary and minor-closed parts.

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "genuslab/cache.hpp"
#include "genuslab/census.hpp"
#include "genuslab/class_spec.hpp"
#include "genuslab/genus_search.hpp"
#include "genuslab/rational.hpp"

namespace genuslab {

inline constexpr int kLabelledCap = 7;
inline constexpr int kUnlabelledCap = 8;

/// Least Euler genus of a graph in each orientability.
struct GenusProfile {
  int oe = 0;
  std::optional<int> ne;  // geometric value; none for forests

  bool planar() const { return oe == 0; }
  /// Nonorientable cost under the convention that planar graphs cost 0.
  int ne_cost() const { return planar() ? 0 : *ne; }
  int cost(Variant v) const {
    switch (v) {
      case Variant::OE: return oe;
      case Variant::NE: return ne_cost();
      case Variant::E: return std::min(oe, ne_cost());
      default: return std::max(oe, ne_cost());
    }
  }
};

inline GenusProfile profile_from_blocks(const std::vector<BlockProfile>& blocks) {
  GenusProfile p;
  int either = 0;
  for (const auto& b : blocks) {
    if (b.orientable.lower != b.orientable.upper || (b.nonorientable.exists && b.nonorientable.lower != b.nonorientable.upper))
      throw BudgetExhausted("genus of a block is only known within an interval");
    p.oe += b.orientable.upper;
    either += detail::either_choice(b).upper;
  }
  for (const auto& b : blocks) {
    if (!b.nonorientable.exists) continue;
    int total = either - detail::either_choice(b).upper + b.nonorientable.upper;
    if (!p.ne || total < *p.ne) p.ne = total;
  }
  return p;
}

/// Thread-safe genus and membership oracle. Profiles are memoized by
/// canonical form, closure verdicts by (class, canonical form).
class GenusOracle {
 public:
  explicit GenusOracle(SearchLimits lim = {}) : lim_(lim) {}

  const SearchLimits& limits() const { return lim_; }
  GenusCache& block_cache() { return blocks_; }

  GenusProfile profile(const Graph& g) {
    if (g.order() > lim_.vertex_cap) throw Error("genus cap exceeded");
    if (g.size() <= 8) return planar_profile(g);
    CanonicalKey key = canonical_key(g);
    {
      std::lock_guard lock(mu_);
      if (auto it = profiles_.find(key); it != profiles_.end()) return it->second;
    }
    GenusProfile p = profile_from_blocks(block_profiles(g, lim_, &blocks_));
    std::lock_guard lock(mu_);
    profiles_.emplace(key, p);
    return p;
  }

  /// Plain membership: the variant's cost of g is at most `budget`.
  bool fits(const Graph& g, Variant v, int budget) {
    const int n = g.order();
    if (n <= 4 || g.size() <= 8 || budget >= variant_ceiling(n, v)) return true;
    if (budget == 0 && g.size() > 3 * n - 6) return false;
    return profile(g).cost(v) <= budget;
  }

  bool member(const Graph& g, const ClassSpec& spec) {
    if (g.order() == 0) return true;
    switch (spec.closure) {
      case Closure::plain: return fits(g, spec.variant, spec.g(g.order()));
      case Closure::hereditary: return closed_member(g, spec, false);
      default: return closed_member(g, spec, true);
    }
  }

 private:
  static GenusProfile planar_profile(const Graph& g) {
    GenusProfile p;
    if (g.size() >= g.order() - component_count(g) + 1) p.ne = 1;
    return p;
  }

  // Hereditary: G fits and every G - v is hereditary. Minor: G fits and
  // every single deletion or contraction is in the minor-closed part.
  // Planar graphs end the recursion since all their minors are planar.
  bool closed_member(const Graph& g, const ClassSpec& spec, bool minor) {
    const int n = g.order();
    if (n == 0) return true;
    if (!fits(g, spec.variant, spec.g(n))) return false;
    if (n <= 4 || g.size() <= 8 || profile(g).planar()) return true;
    const std::string memo_key = spec.closure_key();
    CanonicalKey key = canonical_key(g);
    {
      std::lock_guard lock(mu_);
      auto& memo = verdicts_[memo_key];
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) ok = closed_member(g.without_vertex(v), spec, minor);
    if (minor)
      for (auto [u, w] : g.edges()) {
        if (!ok) break;
        Graph d = g;
        d.remove_edge(u, w);
        ok = closed_member(d, spec, true) && closed_member(g.contracted(u, w), spec, true);
      }
    std::lock_guard lock(mu_);
    verdicts_[memo_key].emplace(key, ok);
    return ok;
  }

  SearchLimits lim_;
  GenusCache blocks_;
  std::mutex mu_;
  std::unordered_map<CanonicalKey, GenusProfile, CanonicalKeyHash> profiles_;
  std::map<std::string, std::unordered_map<CanonicalKey, bool, CanonicalKeyHash>> verdicts_;
};

enum class CountSource { enumerated, cached };

inline const char* to_string(CountSource s) { return s == CountSource::enumerated ? "enumerated" : "cached"; }

struct ClassCount {
  int n = 0;
  std::uint64_t count = 0;
  std::uint64_t connected = 0;
  std::vector<std::uint64_t> histogram;            // members by edge count
  std::vector<std::uint64_t> connected_histogram;  // connected members by edge count
  CountSource source = CountSource::enumerated;
  std::string fingerprint;
};

inline nlohmann::json to_json(const ClassCount& c) {
  return {{"n", c.n},
          {"count", c.count},
          {"connected", c.connected},
          {"histogram", c.histogram},
          {"connected_histogram", c.connected_histogram},
          {"fingerprint", c.fingerprint}};
}

inline ClassCount count_from_json(const nlohmann::json& j) {
  ClassCount c;
  c.n = j.at("n").get<int>();
  c.count = j.at("count").get<std::uint64_t>();
  c.connected = j.at("connected").get<std::uint64_t>();
  c.histogram = j.at("histogram").get<std::vector<std::uint64_t>>();
  c.connected_histogram = j.at("connected_histogram").get<std::vector<std::uint64_t>>();
  c.fingerprint = j.at("fingerprint").get<std::string>();
  std::uint64_t total = 0, conn = 0;
  for (auto x : c.histogram) total += x;
  for (auto x : c.connected_histogram) conn += x;
  if (total != c.count || conn != c.connected) throw Error("cached count disagrees with its histogram");
  return c;
}

struct CatalogOptions {
  SearchLimits limits{};
  int threads = 1;
  std::optional<std::filesystem::path> cache_dir;  // none: in-memory only
};

/// Ratio with an explicit zero-denominator marker.
struct Ratio {
  std::optional<Rational> value;
  std::string note;  // set when value is absent
};

struct GrowthRatios {
  int n = 0;
  struct GenusStep {
    int h = 0;
    Ratio ratio;          // |A_n^{h+2}| / |A_n^h|
    double threshold = 0; // n^2 / (7(n+h))
    bool meets = false;
  };
  struct VertexStep {
    int h = 0;
    Ratio ratio;          // |A_{n+1}^h| / |A_n^h|
    bool meets = false;   // ratio >= 2n
  };
  std::vector<GenusStep> genus_step;
  std::vector<VertexStep> vertex_step;
  Ratio fsgr;
  bool g_non_decreasing = false;
};

class Catalog {
 public:
  explicit Catalog(CatalogOptions opts = {})
      : opts_(opts), oracle_(opts.limits), census_(opts.threads) {
    if (opts.cache_dir) disk_.emplace(*opts.cache_dir);
  }

  GenusOracle& oracle() { return oracle_; }
  Census& census() { return census_; }
  int threads() const { return opts_.threads; }
  const std::optional<DiskCache>& disk() const { return disk_; }

  bool member(const Graph& g, const ClassSpec& spec) { return oracle_.member(g, spec); }

  /// Calls fn(graph) for every member on n vertices, in a fixed order:
  /// labelled hosts by pair mask, unlabelled classes by canonical key.
  void for_each_member(int n, const ClassSpec& spec, const std::function<void(const Graph&)>& fn) {
    if (n < 0) throw Error("n must be non-negative");
    if (spec.labelled) {
      if (n > kLabelledCap) throw Error("labelled enumeration cap exceeded (n <= " + std::to_string(kLabelledCap) + ")");
      const std::uint64_t total = std::uint64_t{1} << pair_count(n);
      const std::uint64_t chunk = 1 << 14, grain = 256;
      std::vector<char> in(chunk);
      for (std::uint64_t base = 0; base < total; base += chunk) {
        const std::uint64_t len = std::min(chunk, total - base);
        parallel_for((len + grain - 1) / grain, opts_.threads, [&](std::size_t part) {
          for (std::uint64_t i = part * grain; i < std::min(len, (part + 1) * grain); ++i)
            in[i] = oracle_.member(graph_from_mask(n, base + i), spec);
        });
        for (std::uint64_t i = 0; i < len; ++i)
          if (in[i]) fn(graph_from_mask(n, base + i));
      }
      return;
    }
    if (n > kUnlabelledCap) throw Error("unlabelled enumeration cap exceeded (n <= " + std::to_string(kUnlabelledCap) + ")");
    const auto& level = census_.level(n);
    std::vector<char> in(level.size());
    parallel_for(level.size(), opts_.threads, [&](std::size_t i) { in[i] = oracle_.member(graph_from_key(level[i]), spec); });
    for (std::size_t i = 0; i < level.size(); ++i)
      if (in[i]) fn(graph_from_key(level[i]));
  }

  std::vector<Graph> members(int n, const ClassSpec& spec) {
    std::vector<Graph> out;
    for_each_member(n, spec, [&](const Graph& g) { out.push_back(g); });
    return out;
  }

  static std::string count_key(int n, const ClassSpec& spec) { return "count-" + spec.fingerprint(std::max(n, 1)) + "-n" + std::to_string(n); }

  ClassCount count(int n, const ClassSpec& spec) {
    const std::string key = count_key(n, spec);
    {
      std::lock_guard lock(mu_);
      if (auto it = counts_.find(key); it != counts_.end()) return it->second;
    }
    ClassCount c;
    bool loaded = false;
    if (disk_) {
      if (auto payload = disk_->read(key)) {
        try {
          c = count_from_json(*payload);
          c.source = CountSource::cached;
          loaded = c.n == n;
        } catch (const std::exception& e) {
          std::cerr << "warning: cache entry " << disk_->path_for(key).string() << " is malformed (" << e.what() << "); recomputing\n";
        }
      }
    }
    if (!loaded) {
      c = ClassCount{};
      c.n = n;
      c.fingerprint = spec.fingerprint(std::max(n, 1));
      c.histogram.assign(static_cast<std::size_t>(pair_count(n) + 1), 0);
      c.connected_histogram = c.histogram;
      for_each_member(n, spec, [&](const Graph& g) {
        ++c.count;
        ++c.histogram[g.size()];
        if (is_connected(g)) {
          ++c.connected;
          ++c.connected_histogram[g.size()];
        }
      });
      if (disk_) disk_->write(key, to_json(c));
    }
    std::lock_guard lock(mu_);
    counts_.emplace(key, c);
    return c;
  }

  /// Drops the count for (n, spec) from memory and disk; true if a disk entry existed.
  bool invalidate(int n, const ClassSpec& spec) {
    const std::string key = count_key(n, spec);
    {
      std::lock_guard lock(mu_);
      counts_.erase(key);
    }
    return disk_ && disk_->invalidate(key);
  }

  /// |A_n^g| / (n |A_{n-1}^{g(n)}|).
  Ratio fsgr(int n, const ClassSpec& spec) {
    if (n < 2) throw Error("fsgr needs n >= 2");
    ClassSpec below = spec;
    below.g = GenusFunction::constant(spec.g(n));
    return ratio(count(n, spec).count, static_cast<std::uint64_t>(n) * count(n - 1, below).count);
  }

  GrowthRatios growth_ratios(int n, const ClassSpec& spec) {
    GrowthRatios r;
    r.n = n;
    r.g_non_decreasing = spec.g.non_decreasing_on(1, n);
    const int top = std::min(spec.g(n), variant_ceiling(n, spec.variant));
    for (int h = 0; h <= top; ++h) {
      GrowthRatios::GenusStep s;
      s.h = h;
      s.ratio = ratio(count(n, with_constant(spec, h + 2)).count, count(n, with_constant(spec, h)).count);
      s.threshold = static_cast<double>(n) * n / (7.0 * (n + h));
      s.meets = s.ratio.value && to_real(*s.ratio.value) >= s.threshold;
      r.genus_step.push_back(s);
    }
    const int cap = spec.labelled ? kLabelledCap : kUnlabelledCap;
    if (n + 1 <= cap)
      for (int h = 0; h <= top; ++h) {
        GrowthRatios::VertexStep s;
        s.h = h;
        s.ratio = ratio(count(n + 1, with_constant(spec, h)).count, count(n, with_constant(spec, h)).count);
        s.meets = s.ratio.value && *s.ratio.value >= Rational(2 * n);
        r.vertex_step.push_back(s);
      }
    if (n >= 2) r.fsgr = fsgr(n, spec);
    return r;
  }

  /// a_n = (|A_n| / n!)^{1/n} for labelled counts.
  std::vector<double> radius_proxy(const ClassSpec& spec, int lo, int hi) {
    std::vector<double> out;
    for (int n = std::max(lo, 1); n <= hi; ++n) {
      long double fact = 1;
      for (int i = 2; i <= n; ++i) fact *= i;
      out.push_back(static_cast<double>(std::pow(static_cast<long double>(count(n, spec).count) / fact, 1.0L / n)));
    }
    return out;
  }

  static ClassSpec with_constant(const ClassSpec& spec, int h) {
    ClassSpec s = spec;
    s.g = GenusFunction::constant(h);
    return s;
  }

  static Ratio ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return {std::nullopt, "empty class in denominator"};
    return {Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)), {}};
  }

 private:
  CatalogOptions opts_;
  GenusOracle oracle_;
  Census census_;
  std::optional<DiskCache> disk_;
  std::mutex mu_;
  std::map<std::string, ClassCount> counts_;
};

}  // namespace genuslab
