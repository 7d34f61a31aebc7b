#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oaslab/posterior.hpp"
#include "oaslab/sensing.hpp"
#include "oaslab/sigmodel.hpp"

namespace oaslab {

enum class AdaptationMetric { paper, exact };

struct OasOptions {
  AdaptationMetric metric = AdaptationMetric::paper;
  PrincipleKind principles = PrincipleKind::identity;
};

// Running per-block state of the subframe loop. Until a block's first visit
// its statistic and estimate stay zero and its information stays +inf; the
// posterior formulas are never evaluated at visit count 0.
struct OasState {
  Mat wbar;  // L x B accumulated statistics, one column per block
  Mat xhat;  // L x B current estimates
  Vec d;     // B posterior-information values, +inf before first visit
  Eigen::VectorXi visit_count;  // B
  int m = 0;                    // completed subframes

  static OasState initial(int B, int L) {
    OasState s;
    s.wbar = Mat::Zero(L, B);
    s.xhat = Mat::Zero(L, B);
    s.d = Vec::Constant(B, std::numeric_limits<double>::infinity());
    s.visit_count = Eigen::VectorXi::Zero(B);
    return s;
  }

  Vec estimate() const {
    return Eigen::Map<const Vec>(xhat.data(), xhat.size());
  }
};

// The F block indices with the largest information values; ties go to the
// smaller block index, and the result is sorted ascending so identical d
// vectors always produce the identical sensing plan.
inline std::vector<int> worst_case_adapt(const Vec& d, int F) {
  const int B = static_cast<int>(d.size());
  if (F < 1 || F > B)
    throw std::invalid_argument("worst_case_adapt: F must lie in [1, B]");
  std::vector<int> order(B);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&d](int i, int j) { return d[i] > d[j]; });
  order.resize(F);
  std::sort(order.begin(), order.end());
  return order;
}

struct SubframeContext {
  const PrincipleSet& principles;
  const ModelParams& model;
  int K;
  AdaptationMetric metric;
};

// One subframe: pick the F worst blocks, sense them for T/M seconds through a
// block-wise orthogonal matrix, fold the back-projection into the accumulated
// statistics and refresh the estimate and information of exactly those blocks.
inline void oas_subframe(OasState& state, const SubframeContext& ctx,
                         const Vec& x, Rng& rng) {
  const int L = ctx.model.L;
  if (state.m >= ctx.model.M)
    throw std::logic_error("oas_subframe: all subframes already executed");
  if (x.size() != ctx.model.N())
    throw std::invalid_argument("oas_subframe: signal length mismatch");

  const int F = ctx.K / L;
  const std::vector<int> selected = worst_case_adapt(state.d, F);
  const BlockwiseSensingMatrix A =
      assemble_blockwise(ctx.principles, selected, ctx.K, ctx.model.B);

  const double sub_var = ctx.model.subframe_noise_var();
  const Vec y = measure(A, x, sub_var, rng);
  const Vec w = backproject(A, y);

  for (int b : selected) {
    state.visit_count[b] += 1;
    state.wbar.col(b) += w.segment(static_cast<Index>(b) * L, L);
    const auto p = BlockPosteriorParams<double>::after_visits(
        state.visit_count[b], sub_var, ctx.model.xi, L);
    state.xhat.col(b) = posterior_mean(state.wbar.col(b), p);
    state.d[b] = ctx.metric == AdaptationMetric::paper
                     ? posterior_mse_paper(state.wbar.col(b), p)
                     : posterior_mse_exact(state.wbar.col(b), p);
  }
  state.m += 1;
}

struct OasRun {
  Vec xhat;       // final estimate, length N
  Vec mse_trace;  // normalized squared error after each subframe, length M
};

// Full M-subframe adaptive run against ground truth x (used only for the
// error trace; the estimator sees measurements alone).
inline OasRun run_blockwise_oas(const ModelParams& params, int K, const Vec& x,
                                Rng& rng, const OasOptions& options = {}) {
  if (K < params.L)
    throw std::invalid_argument("run_blockwise_oas: K must be >= L");
  const int F = K / params.L;
  const PrincipleSet principles =
      make_principles(params.L, F, options.principles, rng);
  OasState state = OasState::initial(params.B, params.L);
  const SubframeContext ctx{principles, params, K, options.metric};

  OasRun out;
  out.mse_trace.resize(params.M);
  for (int m = 0; m < params.M; ++m) {
    oas_subframe(state, ctx, x, rng);
    out.mse_trace[m] = mse(x, state.estimate());
  }
  out.xhat = state.estimate();
  return out;
}

// Structure-blind baseline: the same engine run with block length 1, i.e.
// N sample-blocks, F' = K principles and the per-sample xi-Bernoulli prior.
inline OasRun run_basic_oas(const ModelParams& params, int K, const Vec& x,
                            Rng& rng, const OasOptions& options = {}) {
  if (K < 1) throw std::invalid_argument("run_basic_oas: K must be >= 1");
  const ModelParams per_sample(params.N(), 1, params.xi, params.sigma0_sq,
                               params.T, params.M);
  return run_blockwise_oas(per_sample, K, x, rng, options);
}

}  // namespace oaslab
