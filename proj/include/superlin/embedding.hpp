#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superlin/poly.hpp"

namespace superlin {

/// Working tolerances: `rank` drives singular-value cutoffs and entrywise
/// visibility thresholds, `poly` drives polynomial identity checks.
struct Tolerances {
  double rank = 1e-9;
  double poly = 1e-9;
};

/// A lifted affine realization of a polynomial control system.
///
/// The lifted state is z = (x, p(x)) with x in R^n and m adjoined observables;
/// the lifted dynamics is z' = A_l z + B_l u + D_l with the block partition
///
///   A_l = [A G; H M],  B_l = [B; C],  D_l = [D; E].
///
/// Validity (the lifted flow projecting onto the nonlinear flow) is checked by
/// `validate`, not assumed by construction.
struct SuperLinearization {
  int n = 0;
  int m = 0;
  Eigen::MatrixXd A;  // n x n
  Eigen::MatrixXd G;  // n x m, couples observables into the state dynamics
  Eigen::MatrixXd H;  // m x n
  Eigen::MatrixXd M;  // m x m
  Eigen::VectorXd B;  // n
  Eigen::VectorXd C;  // m
  Eigen::VectorXd D;  // n
  Eigen::VectorXd E;  // m
  ObservableMap p;    // R^n -> R^m

  Eigen::MatrixXd lift_matrix() const;  // A_l, (n+m) x (n+m)
  Eigen::VectorXd lift_input() const;   // B_l
  Eigen::VectorXd lift_offset() const;  // D_l
};

/// Polynomial control system x' = f(x) + u g with constant input field g.
struct ControlSystem {
  int n = 0;
  ObservableMap f;    // R^n -> R^n
  Eigen::VectorXd g;  // n
};

struct ValidationCheck {
  std::string name;  // "shape", "PDE-1", "PDE-2"
  bool pass = false;
  double residual = 0.0;  // largest residual coefficient magnitude
};

struct ValidationReport {
  bool pass = false;
  std::vector<ValidationCheck> checks;
};

/// Checks the block shapes and the pair of polynomial identities
///   G (dp/dx) (A x + G p + D) == G (H x + M p + E)
///   G (dp/dx) B == G C
/// coefficient-exactly up to tol.poly relative to the identities' own scale.
/// Shape violations are reported as failures, never thrown.
ValidationReport validate(const SuperLinearization& L, const Tolerances& tol = {});

/// The projected system: f(x) = A x + G p(x) + D, g = B.
ControlSystem induced_control_system(const SuperLinearization& L);

struct Classification {
  std::vector<int> visible;  // ascending; columns of G with an above-threshold entry
  std::vector<int> hidden;   // ascending; the rest
  int m_v = 0;
  int m_h = 0;
};

/// Splits observables into visible (nonzero G column) and hidden ones, with
/// the entrywise threshold tol.rank relative to the largest |G| entry.
Classification classify(const SuperLinearization& L, const Tolerances& tol = {});

/// True iff both embeddings project to the same control system, comparing the
/// drift polynomials and input vectors coefficient-exactly up to tol.poly.
bool same_system(const SuperLinearization& a, const SuperLinearization& b,
                 const Tolerances& tol = {});

}  // namespace superlin
