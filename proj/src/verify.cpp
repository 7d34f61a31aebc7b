#include "oaslab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "oaslab/glasso.hpp"
#include "oaslab/oracle.hpp"
#include "oaslab/posterior.hpp"
#include "oaslab/sensing.hpp"

namespace oaslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt_err(double err, double tol) {
  std::ostringstream s;
  s << "max err " << err << " (tol " << tol << ")";
  return s.str();
}

// Literal density-ratio transcription of the adaptation-metric formula,
// valid wherever the Gaussian ratio does not overflow. Kept free of the
// log-domain code path it is used to check.
double posterior_mse_literal(const Vec& wbar, double a, double sigma_sq,
                             double xi, int L) {
  const double V = a * a + sigma_sq;
  const auto density = [&](double s2) {
    return std::pow(2.0 * kPi * s2, -L / 2.0) *
           std::exp(-0.5 * wbar.squaredNorm() / s2);
  };
  const double C = V * (1.0 + (1.0 - xi) * density(sigma_sq) / (xi * density(V)));
  return (sigma_sq - a * a * wbar.squaredNorm() / C) / C;
}

CheckResult check_quadrature_agreement() {
  const double tol = 1e-8;
  double worst = 0.0;
  int points = 0;

  const auto compare = [&](const Vec& wbar, int visits, double sub_var, double xi) {
    const auto p = BlockPosteriorParams<double>::after_visits(
        visits, sub_var, xi, static_cast<int>(wbar.size()));
    const auto ref = oracle::posterior_stats_quadrature(
        wbar, p.visits, p.sigma_sq, xi);
    const Vec mean = posterior_mean(wbar, p);
    worst = std::max(worst, (mean - ref.mean).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(posterior_mse_exact(wbar, p) - ref.mse));
    ++points;
  };

  for (int visits : {1, 2, 5})
    for (double sub_var : {0.08, 0.5})
      for (double xi : {0.1, 0.5})
        for (int i = 0; i < 41; ++i) {
          Vec wbar(1);
          wbar[0] = -4.5 + 9.0 * i / 40.0;
          compare(wbar, visits, sub_var, xi);
        }

  const auto grid2 = [&](int visits, double sub_var, double xi) {
    for (int i = 0; i < 11; ++i)
      for (int j = 0; j < 11; ++j) {
        Vec wbar(2);
        wbar[0] = -4.0 + 8.0 * i / 10.0;
        wbar[1] = -4.0 + 8.0 * j / 10.0;
        compare(wbar, visits, sub_var, xi);
      }
  };
  for (int visits : {1, 3}) {
    grid2(visits, 0.08, 0.1);
    grid2(visits, 0.4, 0.1);
    grid2(visits, 0.08, 0.5);
  }

  std::ostringstream detail;
  detail << points << " grid points, " << fmt_err(worst, tol);
  return {"posterior closed forms vs quadrature oracle (L=1,2)", worst <= tol,
          detail.str()};
}

CheckResult check_metric_literal_transcription() {
  const double tol = 1e-10;
  double worst = 0.0;
  int points = 0;
  for (int L : {1, 2, 4})
    for (int visits : {1, 2, 5})
      for (double sub_var : {0.08, 0.5})
        for (double xi : {0.1, 0.5})
          for (int i = 0; i < 25; ++i) {
            Vec wbar = Vec::Zero(L);
            const double r = 4.0 * i / 24.0;
            for (int l = 0; l < L; ++l)
              wbar[l] = r * (l % 2 == 0 ? 1.0 : -0.6) / std::sqrt(double(L));
            const auto p =
                BlockPosteriorParams<double>::after_visits(visits, sub_var, xi, L);
            const double stable = posterior_mse_paper(wbar, p);
            const double literal =
                posterior_mse_literal(wbar, p.visits, p.sigma_sq, xi, L);
            // scale by the formula's term magnitudes; the bracket can cross zero
            const double q = activity_probability(wbar, p);
            const double scale =
                std::max(std::abs(literal),
                         q / p.V() * (p.sigma_sq +
                                      p.visits * p.visits * wbar.squaredNorm() *
                                          q / p.V()));
            worst = std::max(worst, std::abs(stable - literal) / scale);
            ++points;
          }
  std::ostringstream detail;
  detail << points << " grid points, " << fmt_err(worst, tol);
  return {"adaptation metric vs literal density-ratio transcription",
          worst <= tol, detail.str()};
}

CheckResult check_masking_property() {
  const double tol = 1e-12;
  double worst = 0.0;
  Rng rng = make_rng(0xa5a5a5a5ull);
  for (int inst = 0; inst < 100; ++inst) {
    const int L = 1 + inst % 4;
    const int B = 1 + static_cast<int>(uniform01(rng) * 8);
    const int F = std::min(B, 1 + static_cast<int>(uniform01(rng) * B));
    const int K = F * L + static_cast<int>(uniform01(rng) * L);
    const PrincipleKind kind = inst % 2 == 0 ? PrincipleKind::identity
                                             : PrincipleKind::random_orthogonal;
    auto principles = make_principles(L, F, kind, rng);

    std::vector<int> all(B);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> index_set(all.begin(), all.begin() + F);

    const auto A = assemble_blockwise(principles, index_set, K, B);
    const Vec x = normal_vec(rng, static_cast<Index>(B) * L);
    const Vec v = backproject(A, measure(A, x, 0.0, rng));

    Vec expected = Vec::Zero(x.size());
    for (int b : index_set)
      expected.segment(static_cast<Index>(b) * L, L) =
          x.segment(static_cast<Index>(b) * L, L);
    worst = std::max(worst, (v - expected).cwiseAbs().maxCoeff());
  }
  return {"block-wise masking identity on 100 random instances", worst <= tol,
          fmt_err(worst, tol)};
}

CheckResult check_solver_vs_reference() {
  const double tol = 1e-5;
  double worst = 0.0;
  Rng rng = make_rng(0x600d5eedull);
  GlassoOptions opts;
  opts.certificate_tol = 1e-8;
  opts.max_iter = 50000;
  opts.tol = 1e-12;
  for (int inst = 0; inst < 50; ++inst) {
    const int L = (inst % 3 == 0) ? 1 : (inst % 3 == 1 ? 2 : 4);
    const int B = 2 + static_cast<int>(uniform01(rng) * (20 / L - 1));
    const int N = B * L;
    const int K = 6 + static_cast<int>(uniform01(rng) * 15);

    const Mat A = sample_dense_gaussian(K, N, rng);
    Vec x = Vec::Zero(N);
    for (int b = 0; b < B; ++b)
      if (uniform01(rng) < 0.3)
        x.segment(static_cast<Index>(b) * L, L) = normal_vec(rng, L);
    const Vec y = measure(A, x, 0.05, rng);

    double lambda_max = 0.0;
    for (int b = 0; b < B; ++b)
      lambda_max = std::max(
          lambda_max,
          2.0 * (A.middleCols(static_cast<Index>(b) * L, L).transpose() * y).norm());
    const double lambda = (0.05 + 0.6 * uniform01(rng)) * lambda_max;

    const Vec fista = fista_solve(A, y, lambda, L, opts);
    const Vec ref = oracle::glasso_reference(A, y, lambda, L, 1e-14);
    worst = std::max(worst, (fista - ref).cwiseAbs().maxCoeff());
  }
  return {"accelerated solver vs coordinate-descent reference (50 instances)",
          worst <= tol, fmt_err(worst, tol)};
}

}  // namespace

VerifyReport run_verification() {
  VerifyReport report;
  report.checks.push_back(check_quadrature_agreement());
  report.checks.push_back(check_metric_literal_transcription());
  report.checks.push_back(check_masking_property());
  report.checks.push_back(check_solver_vs_reference());
  return report;
}

}  // namespace oaslab
