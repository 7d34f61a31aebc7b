#pragma once

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "oaslab/rng.hpp"
#include "oaslab/types.hpp"

namespace oaslab {

enum class PrincipleKind { identity, random_orthogonal };

// F orthogonal L x L principles U_f with U_f U_f^T = I_L.
struct PrincipleSet {
  int L = 0;
  std::vector<Mat> principles;

  int F() const { return static_cast<int>(principles.size()); }
};

inline PrincipleSet make_principles(int L, int F, PrincipleKind kind, Rng& rng) {
  if (L < 1 || F < 1)
    throw std::invalid_argument("make_principles: L and F must be >= 1");
  PrincipleSet ps;
  ps.L = L;
  ps.principles.reserve(F);
  for (int f = 0; f < F; ++f) {
    if (kind == PrincipleKind::identity) {
      ps.principles.push_back(Mat::Identity(L, L));
    } else {
      // Orthonormalization of an i.i.d. Gaussian draw; signs fixed so Q is
      // the factor with positive-diagonal R (uniquely defined, and for L=1
      // this reduces to [sign of the draw]).
      Mat g = normal_mat(rng, L, L);
      Eigen::HouseholderQR<Mat> qr(g);
      Mat q = qr.householderQ();
      Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int j = 0; j < L; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
      ps.principles.push_back(std::move(q));
    }
  }
  return ps;
}

// Compact K x N block-wise orthogonal sensing matrix: principle U_f occupies
// row-block f and column-block index_set[f]; rows F*L..K-1 are identically
// zero. Never stored dense; densify() exists as a test utility.
struct BlockwiseSensingMatrix {
  PrincipleSet principles;
  std::vector<int> index_set;  // F distinct block indices in [0, B)
  int K = 0;
  int B = 0;
  int L = 0;

  int F() const { return static_cast<int>(index_set.size()); }
  Index rows() const { return K; }
  Index cols() const { return static_cast<Index>(B) * L; }
};

inline BlockwiseSensingMatrix assemble_blockwise(PrincipleSet principles,
                                                 std::vector<int> index_set,
                                                 int K, int B) {
  const int L = principles.L;
  if (L < 1 || K < L || B < 1)
    throw std::invalid_argument("assemble_blockwise: need K >= L >= 1 and B >= 1");
  const int F = K / L;
  if (principles.F() != F)
    throw std::invalid_argument("assemble_blockwise: principle count must equal floor(K/L)");
  if (static_cast<int>(index_set.size()) != F)
    throw std::invalid_argument("assemble_blockwise: index set size must equal floor(K/L)");
  std::unordered_set<int> seen;
  for (int b : index_set) {
    if (b < 0 || b >= B)
      throw std::invalid_argument("assemble_blockwise: block index out of range");
    if (!seen.insert(b).second)
      throw std::invalid_argument("assemble_blockwise: duplicate block index");
  }
  BlockwiseSensingMatrix A;
  A.principles = std::move(principles);
  A.index_set = std::move(index_set);
  A.K = K;
  A.B = B;
  A.L = L;
  return A;
}

// y = A x + z with z ~ N(0, noise_var I_K). Rows beyond F*L carry noise only.
inline Vec measure(const BlockwiseSensingMatrix& A, const Vec& x,
                   double noise_var, Rng& rng) {
  if (x.size() != A.cols())
    throw std::invalid_argument("measure: signal length mismatch");
  if (noise_var < 0.0)
    throw std::invalid_argument("measure: noise variance must be >= 0");
  Vec y = normal_vec(rng, A.K, std::sqrt(noise_var));
  for (int f = 0; f < A.F(); ++f)
    y.segment(static_cast<Index>(f) * A.L, A.L).noalias() +=
        A.principles.principles[f] *
        x.segment(static_cast<Index>(A.index_set[f]) * A.L, A.L);
  return y;
}

inline Vec measure(const Mat& A, const Vec& x, double noise_var, Rng& rng) {
  if (x.size() != A.cols())
    throw std::invalid_argument("measure: signal length mismatch");
  if (noise_var < 0.0)
    throw std::invalid_argument("measure: noise variance must be >= 0");
  Vec y = normal_vec(rng, A.rows(), std::sqrt(noise_var));
  y.noalias() += A * x;
  return y;
}

// w = A^T y computed block-wise in O(F L^2): w_{i_f} = U_f^T y_f, all other
// blocks exactly zero. Measurements in the trailing zero rows are discarded.
inline Vec backproject(const BlockwiseSensingMatrix& A, const Vec& y) {
  if (y.size() != A.K)
    throw std::invalid_argument("backproject: measurement length mismatch");
  Vec w = Vec::Zero(A.cols());
  for (int f = 0; f < A.F(); ++f)
    w.segment(static_cast<Index>(A.index_set[f]) * A.L, A.L).noalias() =
        A.principles.principles[f].transpose() *
        y.segment(static_cast<Index>(f) * A.L, A.L);
  return w;
}

// i.i.d. N(0, 1/K) K x N sensing matrix for the single-shot baseline.
inline Mat sample_dense_gaussian(int K, int N, Rng& rng) {
  if (K < 1 || N < 1)
    throw std::invalid_argument("sample_dense_gaussian: K and N must be >= 1");
  return normal_mat(rng, K, N, 1.0 / std::sqrt(static_cast<double>(K)));
}

// Test utility; the pipeline always works on the compact form.
inline Mat densify(const BlockwiseSensingMatrix& A) {
  Mat dense = Mat::Zero(A.K, A.cols());
  for (int f = 0; f < A.F(); ++f)
    dense.block(static_cast<Index>(f) * A.L,
                static_cast<Index>(A.index_set[f]) * A.L, A.L, A.L) =
        A.principles.principles[f];
  return dense;
}

}  // namespace oaslab
