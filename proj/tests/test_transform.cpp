#include <doctest.h>

#include <functional>
#include <random>

#include "fixtures.hpp"
#include "superlin/embedding.hpp"
#include "superlin/error.hpp"
#include "superlin/linalg.hpp"
#include "superlin/transform.hpp"

using namespace superlin;

namespace {

bool blocks_equal(const SuperLinearization& a, const SuperLinearization& b, double tol) {
  if (a.n != b.n || a.m != b.m) return false;
  const auto close = [tol](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() &&
           (x.size() == 0 || (x - y).lpNorm<Eigen::Infinity>() <= tol);
  };
  if (!close(a.A, b.A) || !close(a.G, b.G) || !close(a.H, b.H) || !close(a.M, b.M))
    return false;
  if (!close(a.B, b.B) || !close(a.C, b.C) || !close(a.D, b.D) || !close(a.E, b.E))
    return false;
  return poly_identity_zero(a.p - b.p, tol == 0.0 ? 1e-15 : tol);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  REQUIRE(false);
  return ErrorCode::Numeric;
}

}  // namespace

TEST_SUITE_BEGIN("transform");

TEST_CASE("conjugation rescales the coupling and the observables inversely") {
  const SuperLinearization L = fixtures::ex1();
  const Eigen::MatrixXd P = (Eigen::MatrixXd(1, 1) << 2).finished();
  const SuperLinearization out = conjugate(L, P);
  CHECK(out.G(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(out.M(0, 0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(out.p[0].coefficient({0, 2}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(validate(out).pass);
  CHECK(same_system(L, out));

  const SuperLinearization back = conjugate(out, P.inverse());
  CHECK(blocks_equal(L, back, 1e-13));
}

TEST_CASE("conjugation rejects singular and misshapen matrices") {
  const SuperLinearization L = fixtures::ex2a();
  CHECK(code_of([&] { conjugate(L, Eigen::MatrixXd::Zero(2, 2)); }) ==
        ErrorCode::Singular);
  CHECK(code_of([&] { conjugate(L, Eigen::MatrixXd::Identity(3, 3)); }) ==
        ErrorCode::Dimension);
}

TEST_CASE("identity conjugation and zero shift are exact no-ops") {
  const SuperLinearization L = fixtures::ex2b();
  CHECK(blocks_equal(L, conjugate(L, Eigen::MatrixXd::Identity(3, 3)), 0.0));
  CHECK(blocks_equal(
      L, shift_observables(L, Eigen::MatrixXd::Zero(3, 2), Eigen::VectorXd::Zero(3)),
      0.0));
}

TEST_CASE("the documented shift of the base fixture lands on the shifted fixture") {
  const SuperLinearization L = fixtures::ex1();
  const Eigen::MatrixXd R = (Eigen::MatrixXd(1, 2) << 0, 1).finished();
  const Eigen::VectorXd S = (Eigen::VectorXd(1) << 1).finished();
  const SuperLinearization out = shift_observables(L, R, S);
  CHECK(blocks_equal(out, fixtures::ex1_prime(), 0.0));
  CHECK(validate(out).pass);
  CHECK(same_system(L, out));
}

TEST_CASE("shifts compose additively and invert exactly") {
  std::mt19937_64 eng(31);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const SuperLinearization L = fixtures::ex2b();
  Eigen::MatrixXd R(3, 2);
  Eigen::VectorXd S(3);
  for (int i = 0; i < 3; ++i) {
    S(i) = d(eng);
    for (int j = 0; j < 2; ++j) R(i, j) = d(eng);
  }
  const SuperLinearization shifted = shift_observables(L, R, S);
  CHECK(validate(shifted).pass);
  CHECK(same_system(L, shifted));
  const SuperLinearization back = shift_observables(shifted, -R, -S);
  CHECK(blocks_equal(L, back, 1e-12));
}

TEST_CASE("stripping affine terms undoes any shift of an affine-free embedding") {
  const SuperLinearization stripped = strip_affine_terms(fixtures::ex1_prime());
  CHECK(blocks_equal(stripped, fixtures::ex1(), 0.0));

  // Idempotence and exact rank preservation.
  const SuperLinearization twice = strip_affine_terms(stripped);
  CHECK(blocks_equal(twice, stripped, 0.0));
  CHECK((stripped.G - fixtures::ex1_prime().G).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("expanding the base fixture appends the single coupled combination") {
  const SuperLinearization out = expand_rank_visible(fixtures::ex1());
  REQUIRE(out.m == 2);
  Eigen::MatrixXd G(2, 2), M(2, 2);
  G << 0, 1, 0, 0;
  M << -2, 0, -2, 0;
  CHECK((out.G - G).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((out.M - M).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(out.H.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(out.p[0].coefficient({0, 2}) == 1.0);
  CHECK(out.p[1].coefficient({0, 2}) == 1.0);
  CHECK(validate(out).pass);
  CHECK(same_system(fixtures::ex1(), out));

  const Classification c = classify(out);
  CHECK(c.hidden == std::vector<int>{0});
  CHECK(c.visible == std::vector<int>{1});
}

TEST_CASE("expansion leaves exactly rank-of-G visible observables of full column rank") {
  for (const auto& [name, L] : fixtures::valid_fixtures()) {
    CAPTURE(name);
    const int r = numerical_rank(L.G, 1e-9);
    const SuperLinearization out = expand_rank_visible(L);
    const Classification c = classify(out);
    CHECK(c.m_v == r);
    if (r > 0) {
      Eigen::MatrixXd visible_cols(out.n, c.m_v);
      for (int j = 0; j < c.m_v; ++j)
        visible_cols.col(j) = out.G.col(c.visible[static_cast<std::size_t>(j)]);
      CHECK(numerical_rank(visible_cols, 1e-9) == r);
    }
    CHECK(validate(out).pass);
    CHECK(same_system(L, out));
  }
}

TEST_CASE("expansion of a fully hidden embedding is a no-op") {
  SuperLinearization L = fixtures::ex1();
  // Decouple the observable: x' = A x alone, p stays valid since
  // d(y^2)/dt = -2 y^2 still matches M p through a zero G.
  L.G = Eigen::MatrixXd::Zero(2, 1);
  REQUIRE(validate(L).pass);
  const SuperLinearization out = expand_rank_visible(L);
  CHECK(blocks_equal(L, out, 0.0));
}

TEST_CASE("merging collapses duplicated visible observables onto one") {
  const SuperLinearization L = fixtures::duplicated_visible();
  REQUIRE(validate(L).pass);
  const SuperLinearization out = merge_dependent_visible(L);
  REQUIRE(out.m == 1);
  Eigen::MatrixXd G(3, 1);
  G << 1, 2, 0;
  CHECK((out.G - G).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(out.M(0, 0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(out.p[0].coefficient({0, 0, 2}) == 1.0);
  CHECK(validate(out).pass);
  CHECK(same_system(L, out));
}

TEST_CASE("merging is a verbatim no-op when the visible observables are independent") {
  for (const auto& [name, L] : fixtures::valid_fixtures()) {
    CAPTURE(name);
    CHECK(blocks_equal(L, merge_dependent_visible(L), 0.0));
  }
}

TEST_CASE("an actual merge requires full coupling rank") {
  // Both columns nonzero (both observables visible), dependent entries, but
  // rank(G) = 1 < 2: the rewrite G p = G V p'' has no exact solution, so the
  // operation must refuse.
  SuperLinearization L = fixtures::duplicated_visible();
  L.G = (Eigen::MatrixXd(3, 2) << 1, 2, 0, 0, 0, 0).finished();
  CHECK(code_of([&] { merge_dependent_visible(L); }) == ErrorCode::Precondition);
}

TEST_CASE("pruning drops the hidden closure observable and recovers the base fixture") {
  const SuperLinearization out = prune_unobservable(fixtures::ex1_plus());
  REQUIRE(out.m == 1);
  CHECK(blocks_equal(out, fixtures::ex1(), 1e-14));
  CHECK(validate(out).pass);
  CHECK(same_system(out, fixtures::ex1()));
}

TEST_CASE("pruning keeps all observables when the pair is fully observable") {
  const SuperLinearization L = fixtures::ex2b();
  REQUIRE(numerical_rank(observability_matrix(L.M, L.G), 1e-9) == 3);
  CHECK(blocks_equal(L, prune_unobservable(L), 0.0));
}

TEST_CASE("pruning a fully hidden embedding empties the observable list") {
  SuperLinearization L = fixtures::ex1();
  L.G = Eigen::MatrixXd::Zero(2, 1);
  const SuperLinearization out = prune_unobservable(L);
  CHECK(out.m == 0);
  CHECK(validate(out).pass);
  CHECK(same_system(L, out));
}

TEST_CASE("the reduction pipeline on the base fixture: strip, expand, merge") {
  ReductionReport report;
  const SuperLinearization reduced = to_reduced_visible_form(fixtures::ex1(), &report);
  REQUIRE(report.steps.size() == 3);
  CHECK(report.steps[0].name == "strip");
  CHECK(report.steps[1].name == "expand");
  CHECK(report.steps[2].name == "merge");
  CHECK(report.steps[1].m_before == 1);
  CHECK(report.steps[1].m_after == 2);
  CHECK(report.m_v_star == 1);
  CHECK(reduced.m == 2);
  CHECK(validate(reduced).pass);
  CHECK(same_system(fixtures::ex1(), reduced));
}

TEST_CASE("reduction refuses invalid inputs") {
  CHECK(code_of([&] { to_reduced_visible_form(fixtures::ex1_broken()); }) ==
        ErrorCode::Validation);
}

TEST_CASE("minimal visible counts on the reference embeddings") {
  CHECK(minimal_visible_count(fixtures::ex1()) == 1);
  CHECK(minimal_visible_count(fixtures::ex2a()) == 1);
  CHECK(minimal_visible_count(fixtures::ex2b()) == 1);
  CHECK(minimal_visible_count(fixtures::ex1_plus()) == 1);
  CHECK(minimal_visible_count(fixtures::ex1_prime()) == 1);
}

TEST_CASE("the minimal count sees through a full-rank coupling of dependent observables") {
  // rank(G) = 2 but both observables are the same monomial, so a single
  // visible observable suffices.
  const SuperLinearization L = fixtures::duplicated_visible();
  REQUIRE(numerical_rank(L.G, 1e-9) == 2);
  CHECK(minimal_visible_count(L) == 1);
}

TEST_CASE("realizing the minimum yields a valid equivalent embedding with that count") {
  const SuperLinearization L = fixtures::ex2a();
  const SuperLinearization out = realize_minimal_visible(L);
  CHECK(validate(out).pass);
  CHECK(same_system(L, out));
  CHECK(classify(out).m_v == 1);
  CHECK(out.m == 4);  // two monomials, their visible sum, and its expansion
}

TEST_SUITE_END();
