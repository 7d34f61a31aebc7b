#include "oaslab/glasso.hpp"

#include <algorithm>
#include <cmath>

#include "oaslab/parallel.hpp"
#include "oaslab/sensing.hpp"

namespace oaslab {

namespace {

double penalized_objective(const Vec& residual, const Vec& v, double lambda, int L) {
  return residual.squaredNorm() + lambda * group_norm(v, L);
}

// KKT residual with A^T y scale precomputed; gradient g = 2 A^T (A v - y).
double kkt_residual_scaled(const Mat& A, const Vec& y, const Vec& v,
                           double lambda, int L, double scale) {
  const Vec g = 2.0 * (A.transpose() * (A * v - y));
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

}  // namespace

Vec fista_solve(const Mat& A, const Vec& y, double lambda, int L,
                const GlassoOptions& opts, double spec_bound,
                const Vec* warm_start) {
  const Index N = A.cols();
  if (A.rows() != y.size())
    throw std::invalid_argument("fista_solve: dimension mismatch");
  if (L < 1 || N % L != 0)
    throw std::invalid_argument("fista_solve: N must be a multiple of L");
  if (!A.allFinite() || !y.allFinite() || !std::isfinite(lambda) || lambda < 0.0)
    throw std::invalid_argument("fista_solve: inputs must be finite, lambda >= 0");

  if (spec_bound <= 0.0) spec_bound = spectral_bound(A, opts.power_iterations);
  const double eta = 1.0 / (2.0 * spec_bound);
  const double lambda_scale = 1.0 + (A.transpose() * y).norm();
  const Index B = N / L;

  Vec x = warm_start != nullptr ? *warm_start : Vec::Zero(N);
  Vec z = x;
  double t_mom = 1.0;
  double fx = penalized_objective(y - A * x, x, lambda, L);

  Vec u(N);
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vec grad = 2.0 * (A.transpose() * (A * z - y));
    const Vec step = z - eta * grad;
    for (Index b = 0; b < B; ++b)
      u.segment(b * L, L) = block_soft_threshold(step.segment(b * L, L), eta * lambda);
    const double fu = penalized_objective(y - A * u, u, lambda, L);

    // monotone acceptance: keep the better of the candidate and the previous point
    const bool accept_u = fu <= fx;
    const double fx_next = accept_u ? fu : fx;
    const Vec x_next = accept_u ? u : x;

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
    z = x_next + (t_mom / t_next) * (u - x_next) +
        ((t_mom - 1.0) / t_next) * (x_next - x);

    const double decrease = fx - fx_next;
    x = x_next;
    fx = fx_next;
    t_mom = t_next;

    const bool stalled = decrease < opts.tol * std::max(fx, 1e-300);
    const bool check_now = (stalled && it % 10 == 0) || (it + 1) % 50 == 0;
    if (check_now && kkt_residual_scaled(A, y, x, lambda, L, lambda_scale) <=
                         opts.certificate_tol)
      return x;
  }
  return x;
}

std::vector<double> make_lambda_grid(const TuneScenario& sc, std::uint64_t seed,
                                     int points) {
  if (points < 1)
    throw std::invalid_argument("make_lambda_grid: need at least one point");
  const ModelParams& mp = sc.model;
  Rng rng = make_rng(derive_seed(seed, 0x9110ull, 0));
  const BlockSparseSignal sig = sample_block_sparse(mp, rng);
  const Mat A = sample_dense_gaussian(sc.K, mp.N(), rng);
  const Vec y = measure(A, sig.values, noise_variance(mp.T, mp.sigma0_sq), rng);

  std::vector<double> corr(mp.B);
  for (int b = 0; b < mp.B; ++b)
    corr[b] = 2.0 * (A.middleCols(static_cast<Index>(b) * mp.L, mp.L).transpose() * y).norm();
  std::nth_element(corr.begin(), corr.begin() + mp.B / 2, corr.end());
  const double med = corr[mp.B / 2];

  std::vector<double> grid(points);
  for (int j = 0; j < points; ++j) {
    const double e = points == 1 ? -1.0 : -3.0 + 4.0 * j / (points - 1);
    grid[j] = med * std::pow(10.0, e);
  }
  return grid;
}

TuneResult tune_lambda(const TuneScenario& sc, int trials,
                       const GlassoOptions& opts, std::uint64_t seed,
                       int workers) {
  if (trials < 1) throw std::invalid_argument("tune_lambda: trials must be >= 1");
  const ModelParams& mp = sc.model;
  if (sc.K < 1) throw std::invalid_argument("tune_lambda: K must be >= 1");

  std::vector<double> grid = opts.lambda_grid.empty()
                                 ? make_lambda_grid(sc, seed, opts.lambda_grid_points)
                                 : opts.lambda_grid;
  std::sort(grid.begin(), grid.end());
  const int G = static_cast<int>(grid.size());

  const double frame_var = noise_variance(mp.T, mp.sigma0_sq);
  Mat trial_mse(trials, G);
  parallel_for(trials, workers, [&](int t) {
    Rng rng = make_rng(derive_seed(seed, 0, t));
    const BlockSparseSignal sig = sample_block_sparse(mp, rng);
    const Mat A = sample_dense_gaussian(sc.K, mp.N(), rng);
    const Vec y = measure(A, sig.values, frame_var, rng);
    const double bound = spectral_bound(A, opts.power_iterations);
    // largest lambda first so each solve warm-starts from the previous one
    Vec v = Vec::Zero(mp.N());
    for (int j = G - 1; j >= 0; --j) {
      v = fista_solve(A, y, grid[j], mp.L, opts, bound, &v);
      trial_mse(t, j) = mse(sig.values, v);
    }
  });

  TuneResult result;
  result.grid = grid;
  result.grid_mse = trial_mse.colwise().mean().transpose();
  Index best = 0;
  result.grid_mse.minCoeff(&best);
  result.lambda_star = grid[best];
  result.mse_at_star = result.grid_mse[best];
  result.per_trial_mse = trial_mse.col(best);
  return result;
}

}  // namespace oaslab
