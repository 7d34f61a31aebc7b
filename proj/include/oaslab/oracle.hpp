#pragma once

#include <stdexcept>

#include "oaslab/types.hpp"

// Ground-truth computations used by tests and the verification suite only.
// Nothing here shares numeric kernels with the estimator or solver paths it
// is used to check.
namespace oaslab::oracle {

struct QuadratureSpec {
  double half_width = 10.0;  // in posterior standard deviations
  int nodes = 320;           // per dimension
};

struct PosteriorStats {
  Vec mean;    // E{x | wbar}
  double mse;  // E{ ||x - E{x|wbar}||^2 | wbar }
};

// Conditional mean and MSE of a block observed through
// wbar = a x + N(0, sigma_sq I_L) under the xi-Bernoulli x N(0, I_L) prior,
// by composite Gauss-Legendre quadrature of the raw mixture densities plus
// the exact point-mass term. L in {1, 2} only; the tensor grid cost grows
// exponentially with L.
PosteriorStats posterior_stats_quadrature(const Vec& wbar, double a,
                                          double sigma_sq, double xi,
                                          const QuadratureSpec& spec = {});

// Block coordinate descent with exact per-block minimization for
//   ||y - A v||^2 + lambda sum_b ||v_b||,
// iterated until the objective change drops below obj_tol. Desk-scale
// reference solver: N <= 64 enforced.
Vec glasso_reference(const Mat& A, const Vec& y, double lambda, int L,
                     double obj_tol = 1e-12, int max_sweeps = 100000);

}  // namespace oaslab::oracle
