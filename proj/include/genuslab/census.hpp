#pragma once

// Unlabelled graph census by vertex extension: every graph on n vertices
// arises from one on n-1 vertices by adding a vertex joined to some subset,
// so canonical forms of all extensions, deduplicated, list each
// isomorphism class exactly once.

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

#include "genuslab/canonical.hpp"
#include "genuslab/parallel.hpp"

namespace genuslab {

inline constexpr int kCensusCap = 9;

inline std::vector<CanonicalKey> extend_census(const std::vector<CanonicalKey>& level, int threads) {
  std::vector<std::vector<CanonicalKey>> parts(level.size());
  parallel_for(level.size(), threads, [&](std::size_t i) {
    Graph g = graph_from_key(level[i]);
    const int n = g.order();
    Graph base(n + 1);
    for (auto [u, v] : g.edges()) base.add_edge(u, v);
    auto& out = parts[i];
    for (VertexSet s = 0; s < bit(n); ++s) {
      Graph h = base;
      for (VertexSet r = s; r; r &= r - 1) h.add_edge(n, std::countr_zero(r));
      out.push_back(canonical_key(h));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  });
  std::vector<CanonicalKey> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

/// All unlabelled graphs on 0..n_max vertices, canonical keys sorted per order.
class Census {
 public:
  explicit Census(int threads = 1) : threads_(threads) { levels_.push_back({CanonicalKey{0, 0}}); }

  const std::vector<CanonicalKey>& level(int n) {
    if (n < 0 || n > kCensusCap) throw Error("census cap exceeded");
    std::lock_guard lock(mu_);
    while (static_cast<int>(levels_.size()) <= n) levels_.push_back(extend_census(levels_.back(), threads_));
    return levels_[n];
  }

 private:
  int threads_;
  std::mutex mu_;
  std::vector<std::vector<CanonicalKey>> levels_;
};

}  // namespace genuslab
