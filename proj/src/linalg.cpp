#include "superlin/linalg.hpp"

#include <cmath>

#include "superlin/error.hpp"

namespace superlin {

namespace {

// Flips column signs so the largest-magnitude entry of each column is
// positive (first occurrence wins ties). Keeps orthogonal bases reproducible
// across SVD implementations that only fix columns up to sign.
void normalize_column_signs(Eigen::MatrixXd& X) {
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    Eigen::Index imax = 0;
    X.col(j).cwiseAbs().maxCoeff(&imax);
    if (X(imax, j) < 0.0) X.col(j) = -X.col(j);
  }
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& X, double tol) {
  if (tol <= 0.0) fail(ErrorCode::Precondition, "rank tolerance must be positive");
  if (X.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

RankFactorization rank_factorization(const Eigen::MatrixXd& G, double tol) {
  RankFactorization out;
  out.rank = numerical_rank(G, tol);
  const Eigen::Index n = G.rows(), m = G.cols(), r = out.rank;
  if (r == 0) {
    out.V = Eigen::MatrixXd::Zero(n, 0);
    out.W = Eigen::MatrixXd::Zero(0, m);
    return out;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G);
  const Eigen::Index k = std::min(n, m);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < r; ++i) {
    if (R(i, i) < 0.0) {
      R.row(i) = -R.row(i);
      Q.col(i) = -Q.col(i);
    }
  }
  out.V = Q.leftCols(r);
  out.W = R.topRows(r) * qr.colsPermutation().inverse();
  return out;
}

Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& M, const Eigen::MatrixXd& G) {
  const Eigen::Index m = M.rows(), n = G.rows();
  if (M.cols() != m || G.cols() != m)
    fail(ErrorCode::Dimension, "observability matrix blocks do not conform");
  Eigen::MatrixXd O(n * m, m);
  Eigen::MatrixXd block = G;
  for (Eigen::Index k = 0; k < m; ++k) {
    O.middleRows(k * n, n) = block;
    if (k + 1 < m) block = block * M;
  }
  return O;
}

ObservableStaircase observable_staircase(const Eigen::MatrixXd& M, const Eigen::MatrixXd& G,
                                         double tol) {
  const Eigen::Index m = M.rows();
  if (M.cols() != m || G.cols() != m)
    fail(ErrorCode::Dimension, "staircase blocks do not conform");
  ObservableStaircase out;
  if (m == 0) {
    out.P = Eigen::MatrixXd::Zero(0, 0);
    out.M1 = out.M2 = out.M3 = Eigen::MatrixXd::Zero(0, 0);
    out.G1 = Eigen::MatrixXd::Zero(G.rows(), 0);
    return out;
  }
  const Eigen::MatrixXd O = observability_matrix(M, G);
  out.rank = numerical_rank(O, tol);
  const Eigen::Index r = out.rank;

  // Right singular vectors: leading r span the row space of O (observable),
  // trailing m - r its kernel (unobservable). Kernel block goes first so the
  // conjugated pair lands in staircase form.
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(O, Eigen::ComputeFullV);
  Eigen::MatrixXd V = svd.matrixV();
  normalize_column_signs(V);
  Eigen::MatrixXd Pinv(m, m);
  Pinv << V.rightCols(m - r), V.leftCols(r);
  out.P = Pinv.transpose();

  const Eigen::MatrixXd Mc = out.P * M * Pinv;
  const Eigen::MatrixXd Gc = G * Pinv;
  out.M1 = Mc.topLeftCorner(m - r, m - r);
  out.M2 = Mc.topRightCorner(m - r, r);
  out.M3 = Mc.bottomRightCorner(r, r);
  out.G1 = Gc.rightCols(r);
  return out;
}

}  // namespace superlin
