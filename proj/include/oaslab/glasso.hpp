#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oaslab/rng.hpp"
#include "oaslab/sigmodel.hpp"
#include "oaslab/types.hpp"

namespace oaslab {

struct GlassoOptions {
  int max_iter = 5000;
  double tol = 1e-8;  // relative objective decrease
  std::vector<double> lambda_grid;  // built from a pilot trial when empty
  int lambda_grid_points = 25;
  double certificate_tol = 1e-6;  // KKT residual target relative to 1+||A^T y||
  int power_iterations = 150;
};

// Proximal operator of tau * ||.||_2 on one block:
// max(0, 1 - tau/||u||) * u, zero whenever ||u|| <= tau.
template <class D, class Scalar = typename D::Scalar>
VecX<Scalar> block_soft_threshold(const Eigen::MatrixBase<D>& u, Scalar tau) {
  if (tau < Scalar(0))
    throw std::invalid_argument("block_soft_threshold: tau must be >= 0");
  const Scalar n = u.norm();
  if (n <= tau) return VecX<Scalar>::Zero(u.size());
  return (Scalar(1) - tau / n) * u.derived();
}

template <class D>
typename D::Scalar group_norm(const Eigen::MatrixBase<D>& v, int L) {
  if (v.size() % L != 0)
    throw std::invalid_argument("group_norm: length must be a multiple of L");
  typename D::Scalar total = 0;
  for (Index b = 0; b < v.size() / L; ++b)
    total += v.derived().segment(b * L, L).norm();
  return total;
}

// ||y - A v||^2 + lambda * sum_b ||v_b||, no 1/2 factor.
inline double objective(const Mat& A, const Vec& y, const Vec& v, double lambda,
                        int L) {
  if (A.rows() != y.size() || A.cols() != v.size())
    throw std::invalid_argument("objective: dimension mismatch");
  if (lambda < 0.0)
    throw std::invalid_argument("objective: lambda must be >= 0");
  return (y - A * v).squaredNorm() + lambda * group_norm(v, L);
}

// Upper estimate of lambda_max(A^T A): Rayleigh-quotient power iteration from
// a fixed-seed generic start, inflated by 1.01. The gradient of ||y - Av||^2
// then has Lipschitz constant 2x this value.
inline double spectral_bound(const Mat& A, int iterations = 150) {
  if (A.size() == 0 || !(A.squaredNorm() > 0.0))
    throw std::invalid_argument("spectral_bound: matrix must be nonzero");
  iterations = std::max(iterations, 100);
  Rng rng = make_rng(0x5bec7fa1u);
  Vec v = normal_vec(rng, A.cols()).normalized();
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vec t = A.transpose() * (A * v);
    est = v.dot(t);
    const double n = t.norm();
    if (!(n > 0.0)) break;  // start vector fell in the null space
    v = t / n;
  }
  return 1.01 * est;
}

// Max block KKT residual of the group objective at v, normalized by
// lambda_scale = 1 + ||A^T y||. Active blocks must satisfy
// 2 A_b^T (A v - y) + lambda v_b/||v_b|| = 0; inactive ones ||2 A_b^T (A v - y)|| <= lambda.
inline double kkt_residual(const Mat& A, const Vec& y, const Vec& v,
                           double lambda, int L) {
  const Vec g = 2.0 * (A.transpose() * (A * v - y));
  const double scale = 1.0 + (A.transpose() * y).norm();
  double worst = 0.0;
  for (Index b = 0; b < v.size() / L; ++b) {
    const auto vb = v.segment(b * L, L);
    const auto gb = g.segment(b * L, L);
    const double nb = vb.norm();
    const double r = nb > 0.0 ? (gb + lambda / nb * vb).norm()
                              : std::max(0.0, gb.norm() - lambda);
    worst = std::max(worst, r);
  }
  return worst / scale;
}

// Monotone accelerated proximal gradient (MFISTA) on
//   f(v) = ||y - A v||^2 + lambda sum_b ||v_b||,
// step 1/(2*spectral_bound), restart-free monotone variant: the accepted
// iterate is the better of the prox candidate and the previous point, so the
// objective never increases. Returns once the KKT residual reaches
// certificate_tol (checked when progress stalls and periodically), or at
// max_iter.
Vec fista_solve(const Mat& A, const Vec& y, double lambda, int L,
                const GlassoOptions& opts = {}, double spec_bound = -1.0,
                const Vec* warm_start = nullptr);

// Single-frame recovery scenario for the non-adaptive baseline: the sensors
// spend the whole budget T on one measurement round, so the noise variance is
// sigma0_sq / T, and A is i.i.d. N(0, 1/K).
struct TuneScenario {
  ModelParams model;
  int K;
};

struct TuneResult {
  double lambda_star = 0.0;
  double mse_at_star = 0.0;
  std::vector<double> grid;
  Vec grid_mse;       // trial-mean MSE per grid point
  Vec per_trial_mse;  // per-trial MSE at lambda_star
};

// 25 log-spaced points spanning [1e-3, 1e1] * median_b(2 ||A_b^T y||) of a
// pilot trial; brackets the all-zero threshold and the near-unregularized end.
std::vector<double> make_lambda_grid(const TuneScenario& sc, std::uint64_t seed,
                                     int points = 25);

// Averages mse(x, fista_solve(...)) over `trials` for each grid lambda and
// returns the grid minimizer. Each trial draws a fresh signal, matrix and
// noise; the same trial data is reused across all lambda values.
TuneResult tune_lambda(const TuneScenario& sc, int trials,
                       const GlassoOptions& opts, std::uint64_t seed,
                       int workers = 1);

}  // namespace oaslab
