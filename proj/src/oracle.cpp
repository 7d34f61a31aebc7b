#include "oaslab/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

namespace oaslab::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Golub-Welsch nodes/weights for n-point Gauss-Legendre on [-1, 1].
Rule1D gauss_legendre(int n) {
  Mat J = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    rule.w[i] = 2.0 * v0 * v0;
  }
  return rule;
}

// Composite rule over [lo, hi]: `panels` panels of 16-point Gauss-Legendre.
Rule1D composite_rule(double lo, double hi, int panels) {
  static const Rule1D base = gauss_legendre(16);
  Rule1D rule;
  rule.x.reserve(16 * panels);
  rule.w.reserve(16 * panels);
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (int i = 0; i < 16; ++i) {
      rule.x.push_back(mid + 0.5 * width * base.x[i]);
      rule.w.push_back(0.5 * width * base.w[i]);
    }
  }
  return rule;
}

}  // namespace

PosteriorStats posterior_stats_quadrature(const Vec& wbar, double a,
                                          double sigma_sq, double xi,
                                          const QuadratureSpec& spec) {
  const int L = static_cast<int>(wbar.size());
  if (L < 1 || L > 2)
    throw std::invalid_argument("posterior_stats_quadrature: L must be 1 or 2");
  if (!(a > 0.0) || !(sigma_sq > 0.0))
    throw std::invalid_argument("posterior_stats_quadrature: a and sigma_sq must be positive");
  if (!(xi > 0.0 && xi <= 1.0))
    throw std::invalid_argument("posterior_stats_quadrature: xi must lie in (0, 1]");
  if (spec.nodes < 201 || spec.half_width < 8.0)
    throw std::invalid_argument("posterior_stats_quadrature: spec below minimum resolution");

  // Window placement only: the active-component posterior of each coordinate
  // is centered at a*wbar_j/V with standard deviation sqrt(sigma_sq/V).
  const double V = a * a + sigma_sq;
  const double sd = std::sqrt(sigma_sq / V);
  const int panels = (spec.nodes + 15) / 16;

  const auto component_density = [&](double x, double w) {
    const double r = w - a * x;
    return std::exp(-0.5 * x * x - 0.5 * r * r / sigma_sq);
  };

  Vec m1 = Vec::Zero(L);
  double z_cont = 0.0;
  double m2 = 0.0;
  if (L == 1) {
    const double c = a * wbar[0] / V;
    const Rule1D rule =
        composite_rule(c - spec.half_width * sd, c + spec.half_width * sd, panels);
    for (size_t i = 0; i < rule.x.size(); ++i) {
      const double g = rule.w[i] * component_density(rule.x[i], wbar[0]);
      z_cont += g;
      m1[0] += rule.x[i] * g;
      m2 += rule.x[i] * rule.x[i] * g;
    }
  } else {
    const double c0 = a * wbar[0] / V;
    const double c1 = a * wbar[1] / V;
    const Rule1D r0 =
        composite_rule(c0 - spec.half_width * sd, c0 + spec.half_width * sd, panels);
    const Rule1D r1 =
        composite_rule(c1 - spec.half_width * sd, c1 + spec.half_width * sd, panels);
    for (size_t i = 0; i < r0.x.size(); ++i) {
      const double gi = r0.w[i] * component_density(r0.x[i], wbar[0]);
      for (size_t j = 0; j < r1.x.size(); ++j) {
        const double g = gi * r1.w[j] * component_density(r1.x[j], wbar[1]);
        z_cont += g;
        m1[0] += r0.x[i] * g;
        m1[1] += r1.x[j] * g;
        m2 += (r0.x[i] * r0.x[i] + r1.x[j] * r1.x[j]) * g;
      }
    }
  }

  // Continuous-component prefactor and the exact point mass at x = 0.
  const double cont_scale =
      xi * std::pow(2.0 * kPi, -L / 2.0) * std::pow(2.0 * kPi * sigma_sq, -L / 2.0);
  const double point_mass =
      xi < 1.0 ? (1.0 - xi) * std::pow(2.0 * kPi * sigma_sq, -L / 2.0) *
                     std::exp(-0.5 * wbar.squaredNorm() / sigma_sq)
               : 0.0;

  const double z_total = point_mass + cont_scale * z_cont;
  if (!(z_total > 0.0))
    throw std::runtime_error("posterior_stats_quadrature: density underflow");

  PosteriorStats stats;
  stats.mean = cont_scale * m1 / z_total;
  const double second_moment = cont_scale * m2 / z_total;
  stats.mse = second_moment - stats.mean.squaredNorm();
  return stats;
}

namespace {

// Exact minimizer of v^T G v - 2 c^T v + lambda ||v|| given the
// eigendecomposition G = Q diag(evals) Q^T. Zero iff ||2c|| <= lambda,
// otherwise the secular fixed point rho = ||v(rho)|| is bisected to machine
// precision with v(rho) = (2G + (lambda/rho) I)^{-1} 2c.
Vec block_minimizer(const Mat& Q, const Vec& evals, const Vec& c, double lambda) {
  const int L = static_cast<int>(c.size());
  if (lambda <= 0.0) {
    // unpenalized least-squares block
    Vec ct = Q.transpose() * c;
    for (int j = 0; j < L; ++j) ct[j] = evals[j] > 0.0 ? ct[j] / evals[j] : 0.0;
    return Q * ct;
  }
  if (2.0 * c.norm() <= lambda) return Vec::Zero(L);

  const Vec ct = Q.transpose() * c;
  const auto norm_at = [&](double rho) {
    double s = 0.0;
    for (int j = 0; j < L; ++j) {
      const double t = 2.0 * ct[j] / (2.0 * evals[j] + lambda / rho);
      s += t * t;
    }
    return std::sqrt(s);
  };

  double hi = 1.0;
  int guard = 0;
  while (norm_at(hi) > hi) {
    hi *= 2.0;
    if (++guard > 200)
      throw std::runtime_error("glasso_reference: block subproblem unbounded");
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (norm_at(mid) > mid ? lo : hi) = mid;
  }
  const double rho = 0.5 * (lo + hi);
  Vec vt(L);
  for (int j = 0; j < L; ++j)
    vt[j] = 2.0 * ct[j] / (2.0 * evals[j] + lambda / rho);
  return Q * vt;
}

}  // namespace

Vec glasso_reference(const Mat& A, const Vec& y, double lambda, int L,
                     double obj_tol, int max_sweeps) {
  const int N = static_cast<int>(A.cols());
  if (N > 64)
    throw std::invalid_argument("glasso_reference: instance too large (N > 64)");
  if (N % L != 0)
    throw std::invalid_argument("glasso_reference: N must be a multiple of L");
  if (A.rows() != y.size())
    throw std::invalid_argument("glasso_reference: dimension mismatch");
  if (lambda < 0.0)
    throw std::invalid_argument("glasso_reference: lambda must be >= 0");
  const int B = N / L;

  std::vector<Mat> Q(B);
  std::vector<Vec> evals(B);
  for (int b = 0; b < B; ++b) {
    const Mat G = A.middleCols(static_cast<Index>(b) * L, L).transpose() *
                  A.middleCols(static_cast<Index>(b) * L, L);
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    Q[b] = es.eigenvectors();
    evals[b] = es.eigenvalues();
  }

  Vec v = Vec::Zero(N);
  Vec residual = y;  // y - A v maintained incrementally
  double obj_prev = residual.squaredNorm();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int b = 0; b < B; ++b) {
      const auto Ab = A.middleCols(static_cast<Index>(b) * L, L);
      const Vec vb_old = v.segment(static_cast<Index>(b) * L, L);
      const Vec c = Ab.transpose() * (residual + Ab * vb_old);
      const Vec vb_new = block_minimizer(Q[b], evals[b], c, lambda);
      residual += Ab * (vb_old - vb_new);
      v.segment(static_cast<Index>(b) * L, L) = vb_new;
    }
    double obj = residual.squaredNorm();
    for (int b = 0; b < B; ++b)
      obj += lambda * v.segment(static_cast<Index>(b) * L, L).norm();
    if (obj_prev - obj <= obj_tol * (1.0 + std::abs(obj))) break;
    obj_prev = obj;
  }
  return v;
}

}  // namespace oaslab::oracle
