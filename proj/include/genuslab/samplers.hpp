#pragma once

// Uniform sampling from enumerable classes and the truncated Boltzmann
// Poisson random planar graph.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "genuslab/catalog.hpp"
#include "genuslab/random.hpp"

namespace genuslab {

enum class SamplingMode { enumeration, rejection };

inline const char* to_string(SamplingMode m) { return m == SamplingMode::enumeration ? "enumeration" : "rejection"; }

/// Draws uniformly from the members of a class on n vertices. Enumeration
/// mode indexes into the member list; rejection mode draws G(n, 1/2) hosts
/// and keeps members, which is only offered for plain closures.
class ClassSampler {
 public:
  ClassSampler(Catalog& catalog, int n, ClassSpec spec, SamplingMode mode = SamplingMode::enumeration,
               std::uint64_t retry_budget = 100000)
      : catalog_(catalog), n_(n), spec_(std::move(spec)), mode_(mode), retry_budget_(retry_budget) {
    if (mode_ == SamplingMode::enumeration) {
      members_ = catalog_.members(n_, spec_);
      if (members_.empty()) throw Error("empty class: nothing to sample at n=" + std::to_string(n_));
    } else {
      if (spec_.closure != Closure::plain) throw Error("rejection sampling needs a plain closure");
      if (!spec_.labelled) throw Error("rejection sampling draws labelled hosts");
    }
  }

  int order() const { return n_; }
  const std::vector<Graph>& members() const { return members_; }

  Graph draw(Rng& rng) {
    if (mode_ == SamplingMode::enumeration) return members_[uniform_below(rng, members_.size())];
    for (std::uint64_t tries = 1; tries <= retry_budget_; ++tries) {
      Graph g = gnp(n_, 0.5, rng);
      ++hosts_;
      if (catalog_.member(g, spec_)) {
        ++accepted_;
        return g;
      }
    }
    throw Error("rejection sampling exceeded its retry budget; observed acceptance rate " + std::to_string(acceptance_rate()));
  }

  double acceptance_rate() const { return hosts_ ? static_cast<double>(accepted_) / static_cast<double>(hosts_) : 0.0; }

 private:
  Catalog& catalog_;
  int n_;
  ClassSpec spec_;
  SamplingMode mode_;
  std::uint64_t retry_budget_;
  std::vector<Graph> members_;
  std::uint64_t hosts_ = 0, accepted_ = 0;
};

inline constexpr double kPlanarRho = 0.0367284;

struct BPEntry {
  UnlabelledGraph h;
  std::uint64_t aut = 1;
  long double mu = 0;  // rho^v / aut
};

/// Boltzmann Poisson random planar graph restricted to components of at
/// most `cap` vertices.
class BPModel {
 public:
  static BPModel build(Catalog& catalog, double rho = kPlanarRho, int cap = 7) {
    if (cap < 1) throw Error("BP cap must be at least 1");
    if (cap > kGenusCap) throw Error("BP cap exceeded (cap <= " + std::to_string(kGenusCap) + ")");
    if (!(rho > 0)) throw Error("BP rho must be positive");
    BPModel m;
    m.rho_ = rho;
    m.cap_ = cap;
    m.level_mass_.assign(static_cast<std::size_t>(cap + 1), 0);
    for (int n = 1; n <= cap; ++n) {
      for (const auto& key : catalog.census().level(n)) {
        Graph g = graph_from_key(key);
        if (!is_connected(g) || !catalog.oracle().profile(g).planar()) continue;
        BPEntry e;
        e.h = canonical_form(g);
        e.aut = aut_count(g);
        e.mu = std::pow(static_cast<long double>(rho), n) / static_cast<long double>(e.aut);
        m.level_mass_[n] += e.mu;
        m.lambda_ += e.mu;
        m.table_.push_back(std::move(e));
      }
    }
    long double run = 0;
    for (const auto& e : m.table_) m.cumulative_.push_back(run += e.mu);
    return m;
  }

  double rho() const { return rho_; }
  int cap() const { return cap_; }
  const std::vector<BPEntry>& table() const { return table_; }
  long double lambda_trunc() const { return lambda_; }
  /// Total weight of components on exactly n vertices.
  long double level_mass(int n) const { return level_mass_.at(n); }

  /// Geometric estimate of the weight beyond the cap: the last level's mass
  /// continued with the ratio of the last two levels.
  long double tail_estimate() const {
    if (cap_ < 2 || level_mass_[cap_ - 1] == 0) return 0;
    long double q = level_mass_[cap_] / level_mass_[cap_ - 1];
    if (q >= 1) return std::numeric_limits<long double>::infinity();
    return level_mass_[cap_] * q / (1 - q);
  }

  /// Copies of each table entry: independent Po(mu(H)). Drawn as a
  /// Po(lambda_trunc) total with each copy's type chosen in proportion to
  /// mu, which has the same joint law.
  std::vector<std::uint32_t> draw_counts(Rng& rng) const {
    std::vector<std::uint32_t> counts(table_.size(), 0);
    std::uint64_t total = poisson(rng, static_cast<double>(lambda_));
    for (std::uint64_t i = 0; i < total; ++i) {
      long double u = static_cast<long double>(uniform01(rng)) * lambda_;
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), table_.size() - 1);
      ++counts[idx];
    }
    return counts;
  }

  /// The disjoint union described by `counts`: components in table order,
  /// each in its canonical labelling. Isomorphic draws give equal graphs.
  Graph realize(const std::vector<std::uint32_t>& counts) const {
    Graph g(0);
    for (std::size_t i = 0; i < counts.size(); ++i)
      for (std::uint32_t c = 0; c < counts[i]; ++c) {
        if (g.order() + table_[i].h.order() > kMaxVertices) throw Error("BP sample exceeds the vertex limit");
        g = g.disjoint_union(table_[i].h.graph());
      }
    return g;
  }

  Graph sample(Rng& rng) const { return realize(draw_counts(rng)); }

 private:
  double rho_ = kPlanarRho;
  int cap_ = 7;
  std::vector<BPEntry> table_;
  std::vector<long double> cumulative_;
  std::vector<long double> level_mass_;
  long double lambda_ = 0;
};

}  // namespace genuslab
