#pragma once

#include <Eigen/Dense>

namespace superlin {

/// Number of singular values above tol * (largest singular value); 0 for the
/// zero or empty matrix.
int numerical_rank(const Eigen::MatrixXd& X, double tol);

/// Full-rank factorization G = V * W with V of full column rank r and W of
/// full row rank r.
struct RankFactorization {
  Eigen::MatrixXd V;  // n x r
  Eigen::MatrixXd W;  // r x m
  int rank = 0;
};

/// Deterministic rank factorization from a column-pivoted QR with the sign of
/// each pivot fixed positive.
RankFactorization rank_factorization(const Eigen::MatrixXd& G, double tol);

/// Vertical stack G, GM, GM^2, ..., GM^{m-1} for M (m x m) and G (n x m).
Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& M, const Eigen::MatrixXd& G);

/// Orthogonal change of coordinates separating the subspace unobservable from
/// the output y = G w of w' = M w:
///   P M P^{-1} = [[M1, M2], [0, M3]],  G P^{-1} = [0, G1],
/// with the observable block of size r = rank of the observability matrix.
struct ObservableStaircase {
  Eigen::MatrixXd P;  // m x m, orthogonal
  int rank = 0;       // r
  Eigen::MatrixXd M1, M2, M3, G1;
};

ObservableStaircase observable_staircase(const Eigen::MatrixXd& M, const Eigen::MatrixXd& G,
                                         double tol);

}  // namespace superlin
