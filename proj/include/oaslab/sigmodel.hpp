#pragma once

#include <cmath>
#include <stdexcept>

#include "oaslab/rng.hpp"
#include "oaslab/types.hpp"

namespace oaslab {

// Noise variance of a measurement integrated for t seconds: sigma0_sq / t.
inline double noise_variance(double t, double sigma0_sq) {
  if (!(t > 0.0))
    throw std::invalid_argument("noise_variance: sensing duration must be positive");
  return sigma0_sq / t;
}

// Block sparse source model: B blocks of length L, each block independently
// all-zero with probability 1-xi or drawn from N(0, I_L) with probability xi.
// Sensing runs for T seconds split into M equal subframes.
struct ModelParams {
  int B = 0;
  int L = 0;
  int M = 1;
  double xi = 0.0;
  double sigma0_sq = 0.0;
  double T = 0.0;

  ModelParams(int blocks, int block_len, double sparsity, double unit_noise_var,
              double total_time, int subframes)
      : B(blocks), L(block_len), M(subframes), xi(sparsity),
        sigma0_sq(unit_noise_var), T(total_time) {
    if (B < 1) throw std::invalid_argument("ModelParams: B must be >= 1");
    if (L < 1) throw std::invalid_argument("ModelParams: L must be >= 1");
    if (M < 1) throw std::invalid_argument("ModelParams: M must be >= 1");
    if (!(xi > 0.0 && xi < 1.0))
      throw std::invalid_argument("ModelParams: xi must lie in (0, 1)");
    if (!(sigma0_sq > 0.0))
      throw std::invalid_argument("ModelParams: sigma0_sq must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("ModelParams: T must be positive");
  }

  int N() const { return B * L; }

  // Per-subframe measurement noise variance, M * sigma^2(T).
  double subframe_noise_var() const { return noise_variance(T / M, sigma0_sq); }
};

struct BlockSparseSignal {
  Vec values;        // length N = B*L
  BoolArray active;  // length B; inactive blocks are exactly zero
};

inline BlockSparseSignal sample_block_sparse(const ModelParams& p, Rng& rng) {
  BlockSparseSignal sig;
  sig.values = Vec::Zero(p.N());
  sig.active = BoolArray::Constant(p.B, false);
  for (int b = 0; b < p.B; ++b) {
    if (uniform01(rng) < p.xi) {
      sig.active[b] = true;
      sig.values.segment(static_cast<Index>(b) * p.L, p.L) = normal_vec(rng, p.L);
    }
  }
  return sig;
}

// Normalized squared error ||xhat - x||^2 / N.
template <class DX, class DY>
typename DX::Scalar mse(const Eigen::MatrixBase<DX>& x,
                        const Eigen::MatrixBase<DY>& xhat) {
  if (x.size() != xhat.size())
    throw std::invalid_argument("mse: vectors must have equal length");
  return (xhat.derived() - x.derived()).squaredNorm() /
         static_cast<typename DX::Scalar>(x.size());
}

inline double to_db(double mean_mse) {
  if (!(mean_mse > 0.0))
    throw std::invalid_argument("to_db: value must be positive");
  return 10.0 * std::log10(mean_mse);
}

}  // namespace oaslab
