#pragma once

// Seeds, the generator, and the discrete laws used by the samplers and
// statistical checks. Distributions are written out here rather than taken
// from <random> so that draws are identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "genuslab/graph.hpp"
#include "genuslab/rational.hpp"

namespace genuslab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Seed {
  std::uint64_t value = 0;

  /// Child seed for replicate or stream `index`; children of distinct
  /// indices are independent of each other and of the parent's own stream.
  Seed split(std::uint64_t index) const { return {splitmix64(splitmix64(value) ^ splitmix64(~index))}; }
  std::mt19937_64 engine() const { return std::mt19937_64(splitmix64(value)); }
};

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound), bound >= 1, by rejection of the biased tail.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw Error("uniform_below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Poisson by inversion, walking the pmf with p(k+1) = p(k) * mean / (k+1).
inline std::uint64_t poisson(Rng& rng, double mean) {
  if (!(mean >= 0) || !std::isfinite(mean)) throw Error("poisson mean must be finite and non-negative");
  if (mean == 0) return 0;
  if (mean > 600) throw Error("poisson mean too large for inversion");
  double u = uniform01(rng);
  double p = std::exp(-mean), cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    double next = cdf + p;
    if (next == cdf) break;  // u lies in the numerically unreachable tail
    cdf = next;
  }
  return k;
}

inline std::uint64_t binomial(Rng& rng, std::uint64_t k, double p) {
  if (!(p >= 0 && p <= 1)) throw Error("binomial p must lie in [0, 1]");
  std::uint64_t x = 0;
  for (std::uint64_t i = 0; i < k; ++i) x += bernoulli(rng, p);
  return x;
}

/// Exact pmf of Bin(k, p) for rational p.
inline std::vector<Rational> binomial_pmf(int k, Rational p) {
  if (k < 0 || p < 0 || p > 1) throw Error("invalid binomial parameters");
  if (k > 40) throw Error("binomial pmf support too large for exact rationals");
  std::vector<Rational> out;
  Rational q = 1 - p;
  std::int64_t choose = 1;
  for (int i = 0; i <= k; ++i) {
    Rational term(choose);
    for (int a = 0; a < i; ++a) term *= p;
    for (int b = 0; b < k - i; ++b) term *= q;
    out.push_back(term);
    choose = choose * (k - i) / (i + 1);
  }
  return out;
}

/// Po(mean) pmf truncated where the remaining tail mass drops below `tail`;
/// the mass beyond the table is returned in tail_mass.
struct PoissonTable {
  std::vector<long double> pmf;
  long double tail_mass = 0;
};

inline PoissonTable poisson_pmf(long double mean, long double tail = 1e-12L) {
  if (!(mean >= 0)) throw Error("poisson mean must be non-negative");
  PoissonTable t;
  long double p = std::exp(-mean), cdf = 0;
  for (int k = 0;; ++k) {
    t.pmf.push_back(p);
    cdf += p;
    if (1 - cdf < tail && static_cast<long double>(k) >= mean) break;
    p *= mean / (k + 1);
  }
  t.tail_mass = std::max<long double>(0, 1 - cdf);
  return t;
}

inline Graph gnp(int n, double p, Rng& rng) {
  if (!(p >= 0 && p <= 1)) throw Error("gnp p must lie in [0, 1]");
  Graph g(n);
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u)
      if (bernoulli(rng, p)) g.add_edge(u, v);
  return g;
}

}  // namespace genuslab
