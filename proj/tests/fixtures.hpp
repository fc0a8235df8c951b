// Hand-derived reference embeddings used across the suite. All blocks were
// worked out on paper from the dynamics and double-checked against the PDE
// identities; tests treat them as frozen oracles.
#pragma once

#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "superlin/embedding.hpp"
#include "superlin/poly.hpp"

namespace fixtures {

using superlin::MultiPoly;
using superlin::ObservableMap;
using superlin::SuperLinearization;

inline MultiPoly mono(int n, std::initializer_list<int> exps, double coef) {
  MultiPoly p(n);
  p.add_term(superlin::Monomial(exps), coef);
  p.normalize();
  return p;
}

// x1' = -x1 + y^2, y' = -y, input on x1; one observable p1 = y^2.
inline SuperLinearization ex1() {
  SuperLinearization L;
  L.n = 2;
  L.m = 1;
  L.A = (Eigen::MatrixXd(2, 2) << -1, 0, 0, -1).finished();
  L.G = (Eigen::MatrixXd(2, 1) << 1, 0).finished();
  L.H = Eigen::MatrixXd::Zero(1, 2);
  L.M = (Eigen::MatrixXd(1, 1) << -2).finished();
  L.B = (Eigen::VectorXd(2) << 1, 0).finished();
  L.C = Eigen::VectorXd::Zero(1);
  L.D = Eigen::VectorXd::Zero(2);
  L.E = Eigen::VectorXd::Zero(1);
  L.p = ObservableMap(2, {mono(2, {0, 2}, 1.0)});
  return L;
}

// Same projected system as ex1 but with the wrong multiplier on p1: the
// first dynamics identity misses by exactly y^2.
inline SuperLinearization ex1_broken() {
  SuperLinearization L = ex1();
  L.M(0, 0) = -3;
  return L;
}

// ex1 with an extra hidden observable p2 = y^3 (zero G column).
inline SuperLinearization ex1_plus() {
  SuperLinearization L;
  L.n = 2;
  L.m = 2;
  L.A = (Eigen::MatrixXd(2, 2) << -1, 0, 0, -1).finished();
  L.G = (Eigen::MatrixXd(2, 2) << 1, 0, 0, 0).finished();
  L.H = Eigen::MatrixXd::Zero(2, 2);
  L.M = (Eigen::MatrixXd(2, 2) << -2, 0, 0, -3).finished();
  L.B = (Eigen::VectorXd(2) << 1, 0).finished();
  L.C = Eigen::VectorXd::Zero(2);
  L.D = Eigen::VectorXd::Zero(2);
  L.E = Eigen::VectorXd::Zero(2);
  L.p = ObservableMap(2, {mono(2, {0, 2}, 1.0), mono(2, {0, 3}, 1.0)});
  return L;
}

// ex1 shifted by p -> p + R x + S with R = [0 1], S = 1, so p1 = y^2 + y + 1.
// Same projected system as ex1; E = 2 keeps the dynamics identity exact.
inline SuperLinearization ex1_prime() {
  SuperLinearization L;
  L.n = 2;
  L.m = 1;
  L.A = (Eigen::MatrixXd(2, 2) << -1, -1, 0, -1).finished();
  L.G = (Eigen::MatrixXd(2, 1) << 1, 0).finished();
  L.H = (Eigen::MatrixXd(1, 2) << 0, 1).finished();
  L.M = (Eigen::MatrixXd(1, 1) << -2).finished();
  L.B = (Eigen::VectorXd(2) << 1, 0).finished();
  L.C = Eigen::VectorXd::Zero(1);
  L.D = (Eigen::VectorXd(2) << -1, 0).finished();
  L.E = (Eigen::VectorXd(1) << 2).finished();
  MultiPoly p1 = mono(2, {0, 2}, 1.0) + mono(2, {0, 1}, 1.0) + mono(2, {0, 0}, 1.0);
  L.p = ObservableMap(2, {p1});
  return L;
}

// x1' = -x1 + x2 + y^2 + y^3, y' = y, with both monomials visible.
inline SuperLinearization ex2a() {
  SuperLinearization L;
  L.n = 2;
  L.m = 2;
  L.A = (Eigen::MatrixXd(2, 2) << -1, 1, 0, 1).finished();
  L.G = (Eigen::MatrixXd(2, 2) << 1, 1, 0, 0).finished();
  L.H = Eigen::MatrixXd::Zero(2, 2);
  L.M = (Eigen::MatrixXd(2, 2) << 2, 0, 0, 3).finished();
  L.B = Eigen::VectorXd::Zero(2);
  L.C = Eigen::VectorXd::Zero(2);
  L.D = Eigen::VectorXd::Zero(2);
  L.E = Eigen::VectorXd::Zero(2);
  L.p = ObservableMap(2, {mono(2, {0, 2}, 1.0), mono(2, {0, 3}, 1.0)});
  return L;
}

// Same system as ex2a with the sum adjoined as the only visible observable
// and the two monomials kept hidden to close the dynamics.
inline SuperLinearization ex2b() {
  SuperLinearization L;
  L.n = 2;
  L.m = 3;
  L.A = (Eigen::MatrixXd(2, 2) << -1, 1, 0, 1).finished();
  L.G = (Eigen::MatrixXd(2, 3) << 1, 0, 0, 0, 0, 0).finished();
  L.H = Eigen::MatrixXd::Zero(3, 2);
  L.M = (Eigen::MatrixXd(3, 3) << 0, 2, 3, 0, 2, 0, 0, 0, 3).finished();
  L.B = Eigen::VectorXd::Zero(2);
  L.C = Eigen::VectorXd::Zero(3);
  L.D = Eigen::VectorXd::Zero(2);
  L.E = Eigen::VectorXd::Zero(3);
  MultiPoly sum = mono(2, {0, 2}, 1.0) + mono(2, {0, 3}, 1.0);
  L.p = ObservableMap(2, {sum, mono(2, {0, 2}, 1.0), mono(2, {0, 3}, 1.0)});
  return L;
}

// Two visible observables that are scalar multiples of one another:
// p = (y^2, 2 y^2) with y = x3. Merging must collapse them to one.
inline SuperLinearization duplicated_visible() {
  SuperLinearization L;
  L.n = 3;
  L.m = 2;
  L.A = -Eigen::MatrixXd::Identity(3, 3);
  L.G = (Eigen::MatrixXd(3, 2) << 1, 0, 0, 1, 0, 0).finished();
  L.H = Eigen::MatrixXd::Zero(2, 3);
  L.M = (Eigen::MatrixXd(2, 2) << -2, 0, 0, -2).finished();
  L.B = (Eigen::VectorXd(3) << 1, 0, 0).finished();
  L.C = Eigen::VectorXd::Zero(2);
  L.D = Eigen::VectorXd::Zero(3);
  L.E = Eigen::VectorXd::Zero(2);
  L.p = ObservableMap(3, {mono(3, {0, 0, 2}, 1.0), mono(3, {0, 0, 2}, 2.0)});
  return L;
}

struct NamedFixture {
  const char* name;
  SuperLinearization system;
};

// The five valid reference embeddings.
inline std::vector<NamedFixture> valid_fixtures() {
  return {{"ex1", ex1()},
          {"ex2a", ex2a()},
          {"ex2b", ex2b()},
          {"ex1plus", ex1_plus()},
          {"ex1prime", ex1_prime()}};
}

}  // namespace fixtures
