#pragma once

#include <cmath>
#include <stdexcept>

#include "oaslab/types.hpp"

namespace oaslab {

// Observation channel of one block after `visits` sensing rounds:
//
//   wbar = visits * x_b + noise,   noise ~ N(0, sigma_sq I_L),
//
// with sigma_sq = visits * (per-round noise variance) and the block prior
// xi-Bernoulli x N(0, I_L). Under the active hypothesis the entries of wbar
// have variance V = visits^2 + sigma_sq.
template <class Scalar = double>
struct BlockPosteriorParams {
  Scalar visits = 0;
  Scalar sigma_sq = 0;
  Scalar xi = 0;
  int L = 0;

  static BlockPosteriorParams after_visits(int visits, Scalar per_visit_var,
                                           Scalar xi, int L) {
    return BlockPosteriorParams{static_cast<Scalar>(visits),
                                static_cast<Scalar>(visits) * per_visit_var, xi, L};
  }

  Scalar V() const { return visits * visits + sigma_sq; }
};

template <class Scalar>
Scalar logistic(Scalar u) {
  using std::exp;
  return u >= Scalar(0) ? Scalar(1) / (Scalar(1) + exp(-u))
                        : exp(u) / (Scalar(1) + exp(u));
}

namespace detail {
template <class Scalar>
void require_visited(const BlockPosteriorParams<Scalar>& p) {
  if (!(p.visits >= Scalar(1)))
    throw std::invalid_argument("posterior: block has no accumulated measurements");
}
}  // namespace detail

// t = log[ (1-xi) phi(wbar | sigma_sq I) / (xi phi(wbar | V I)) ].
// All mixture arithmetic downstream stays in this log domain; the density
// ratio itself under/overflows already at moderate ||wbar|| for L >= 4.
template <class D, class Scalar = typename D::Scalar>
Scalar log_mixture_ratio(const Eigen::MatrixBase<D>& wbar,
                         const BlockPosteriorParams<Scalar>& p) {
  detail::require_visited(p);
  const Scalar V = p.V();
  return std::log((Scalar(1) - p.xi) / p.xi) +
         Scalar(p.L) / 2 * std::log(V / p.sigma_sq) +
         wbar.squaredNorm() / 2 * (Scalar(1) / V - Scalar(1) / p.sigma_sq);
}

// P{block active | wbar} = logistic(-t).
template <class D, class Scalar = typename D::Scalar>
Scalar activity_probability(const Eigen::MatrixBase<D>& wbar,
                            const BlockPosteriorParams<Scalar>& p) {
  return logistic(-log_mixture_ratio(wbar, p));
}

// MMSE estimate E{x_b | wbar} = visits * wbar / C(wbar), evaluated in the
// overflow-free form (visits/V) * P{active | wbar} * wbar.
template <class D, class Scalar = typename D::Scalar>
VecX<Scalar> posterior_mean(const Eigen::MatrixBase<D>& wbar,
                            const BlockPosteriorParams<Scalar>& p) {
  const Scalar q = activity_probability(wbar, p);
  return (p.visits / p.V()) * q * wbar.derived();
}

// Posterior information in the form (1/C) (sigma_sq - visits^2 ||wbar||^2 / C),
// the `paper` adaptation metric, with 1/C = q/V. Can be negative for blocks
// that are confidently active.
template <class D, class Scalar = typename D::Scalar>
Scalar posterior_mse_paper(const Eigen::MatrixBase<D>& wbar,
                           const BlockPosteriorParams<Scalar>& p) {
  const Scalar q = activity_probability(wbar, p);
  const Scalar V = p.V();
  return q / V * (p.sigma_sq - p.visits * p.visits * wbar.squaredNorm() * q / V);
}

// Conditional MSE E{ ||x_b - E{x_b|wbar}||^2 | wbar } of the same channel:
//   q (L sigma_sq / V + a^2 ||wbar||^2 / V^2) - q^2 a^2 ||wbar||^2 / V^2,
// the `exact` adaptation metric. Nonnegative for every input.
template <class D, class Scalar = typename D::Scalar>
Scalar posterior_mse_exact(const Eigen::MatrixBase<D>& wbar,
                           const BlockPosteriorParams<Scalar>& p) {
  const Scalar q = activity_probability(wbar, p);
  const Scalar V = p.V();
  const Scalar active_mean_sq =
      p.visits * p.visits * wbar.squaredNorm() / (V * V);
  return q * (Scalar(p.L) * p.sigma_sq / V + active_mean_sq) -
         q * q * active_mean_sq;
}

}  // namespace oaslab
