#include <doctest.h>

#include <random>

#include "superlin/error.hpp"
#include "superlin/linalg.hpp"

using namespace superlin;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& eng, int rows, int cols) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::MatrixXd X(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) X(i, j) = d(eng);
  return X;
}

// Random matrix of exactly the requested rank, built from an outer product.
Eigen::MatrixXd random_rank(std::mt19937_64& eng, int rows, int cols, int rank) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(rows, cols);
  while (true) {
    const Eigen::MatrixXd U = random_matrix(eng, rows, rank);
    const Eigen::MatrixXd V = random_matrix(eng, rank, cols);
    X = U * V;
    if (numerical_rank(X, 1e-9) == rank) return X;
  }
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("numerical rank on constructed matrices") {
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(3, 2), 1e-9) == 0);
  CHECK(numerical_rank(Eigen::MatrixXd(0, 4), 1e-9) == 0);
  CHECK(numerical_rank(Eigen::MatrixXd::Identity(4, 4), 1e-9) == 4);

  Eigen::MatrixXd outer = (Eigen::VectorXd(3) << 1, 2, 3).finished() *
                          (Eigen::RowVectorXd(2) << 4, 5).finished();
  CHECK(numerical_rank(outer, 1e-9) == 1);

  // A singular value exactly at the cutoff does not count; above it does.
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 1e-9;
  CHECK(numerical_rank(diag, 1e-9) == 1);
  diag(1, 1) = 1e-8;
  CHECK(numerical_rank(diag, 1e-9) == 2);

  CHECK_THROWS_AS(numerical_rank(diag, 0.0), Error);
}

TEST_CASE("rank factorization reconstructs the matrix with conforming shapes") {
  std::mt19937_64 eng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int rows = 1 + static_cast<int>(eng() % 5);
    const int cols = 1 + static_cast<int>(eng() % 5);
    const int rank = static_cast<int>(eng() % (std::min(rows, cols) + 1));
    const Eigen::MatrixXd G =
        rank == 0 ? Eigen::MatrixXd::Zero(rows, cols) : random_rank(eng, rows, cols, rank);
    const RankFactorization rf = rank_factorization(G, 1e-9);
    CHECK(rf.rank == rank);
    REQUIRE(rf.V.rows() == rows);
    REQUIRE(rf.V.cols() == rank);
    REQUIRE(rf.W.rows() == rank);
    REQUIRE(rf.W.cols() == cols);
    CHECK((rf.V * rf.W - G).lpNorm<Eigen::Infinity>() < 1e-12);
    if (rank > 0) {
      CHECK(numerical_rank(rf.V, 1e-9) == rank);
      CHECK(numerical_rank(rf.W, 1e-9) == rank);
    }
  }
}

TEST_CASE("rank factorization is deterministic with frozen output on a small case") {
  const Eigen::MatrixXd G = (Eigen::MatrixXd(2, 2) << 1, 1, 0, 0).finished();
  const RankFactorization rf = rank_factorization(G, 1e-9);
  REQUIRE(rf.rank == 1);
  CHECK(rf.V(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rf.V(1, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rf.W(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rf.W(0, 1) == doctest::Approx(1.0).epsilon(1e-14));

  const RankFactorization again = rank_factorization(G, 1e-9);
  CHECK((rf.V - again.V).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((rf.W - again.W).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("observability matrix stacks G through G M^{m-1}") {
  const Eigen::MatrixXd M = (Eigen::MatrixXd(2, 2) << -2, 0, 0, -3).finished();
  const Eigen::MatrixXd G = (Eigen::MatrixXd(2, 2) << 1, 0, 0, 0).finished();
  const Eigen::MatrixXd O = observability_matrix(M, G);
  REQUIRE(O.rows() == 4);
  REQUIRE(O.cols() == 2);
  Eigen::MatrixXd expected(4, 2);
  expected << 1, 0, 0, 0, -2, 0, 0, 0;
  CHECK((O - expected).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(numerical_rank(O, 1e-9) == 1);
}

TEST_CASE("observable staircase splits coordinates with the contract blocks") {
  std::mt19937_64 eng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + static_cast<int>(eng() % 4);
    const int n = 1 + static_cast<int>(eng() % 3);
    const int g_rank = static_cast<int>(eng() % (std::min(n, m) + 1));
    const Eigen::MatrixXd M = random_matrix(eng, m, m);
    const Eigen::MatrixXd G =
        g_rank == 0 ? Eigen::MatrixXd::Zero(n, m) : random_rank(eng, n, m, g_rank);
    const int r = numerical_rank(observability_matrix(M, G), 1e-9);

    const ObservableStaircase st = observable_staircase(M, G, 1e-9);
    CHECK(st.rank == r);
    // Orthogonality.
    CHECK((st.P * st.P.transpose() - Eigen::MatrixXd::Identity(m, m))
              .lpNorm<Eigen::Infinity>() < 1e-12);
    // Transformed blocks reassemble the originals.
    const Eigen::MatrixXd Pinv = st.P.transpose();
    Eigen::MatrixXd Mt = st.P * M * Pinv;
    Eigen::MatrixXd Gt = G * Pinv;
    CHECK((Mt.topLeftCorner(m - r, m - r) - st.M1).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK((Mt.topRightCorner(m - r, r) - st.M2).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK((Mt.bottomRightCorner(r, r) - st.M3).lpNorm<Eigen::Infinity>() < 1e-12);
    // The unobservable block decouples: zero lower-left block and zero output.
    CHECK(Mt.bottomLeftCorner(r, m - r).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK(Gt.leftCols(m - r).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK((Gt.rightCols(r) - st.G1).lpNorm<Eigen::Infinity>() < 1e-12);
    // The kept pair is fully observable.
    CHECK(numerical_rank(observability_matrix(st.M3, st.G1), 1e-9) == r);
  }
}

TEST_CASE("observable staircase is deterministic") {
  std::mt19937_64 eng(23);
  const Eigen::MatrixXd M = random_matrix(eng, 4, 4);
  const Eigen::MatrixXd G = random_rank(eng, 2, 4, 1);
  const ObservableStaircase a = observable_staircase(M, G, 1e-9);
  const ObservableStaircase b = observable_staircase(M, G, 1e-9);
  CHECK((a.P - b.P).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("observable staircase dimension mismatch throws") {
  CHECK_THROWS_AS(
      observable_staircase(Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(1, 2), 1e-9),
      Error);
}

TEST_SUITE_END();
