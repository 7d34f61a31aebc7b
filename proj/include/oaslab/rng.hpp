#pragma once

#include <cstdint>
#include <random>

#include "oaslab/types.hpp"

namespace oaslab {

using Rng = std::mt19937_64;

// splitmix64 finalizer; good avalanche, cheap enough to use as a keyed mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-based child-seed derivation: the stream for (group, item) is a pure
// function of the master seed, so any trial can be reconstructed in isolation
// and results never depend on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t group,
                                    std::uint64_t item) {
  return mix64(mix64(master ^ mix64(group + 1)) ^ (item + 1));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// n i.i.d. N(0, stddev^2) draws. stddev == 0 yields exact zeros while
// consuming the same engine outputs as any other stddev.
inline Vec normal_vec(Rng& rng, Index n, double stddev = 1.0) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = stddev * dist(rng);
  return v;
}

inline Mat normal_mat(Rng& rng, Index rows, Index cols, double stddev = 1.0) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = stddev * dist(rng);
  return m;
}

}  // namespace oaslab
