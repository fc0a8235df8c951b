#pragma once

#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace superlin {

/// Exponent vector of a monomial, one non-negative entry per variable.
using Monomial = std::vector<int>;

/// Graded lexicographic order: lower total degree first, ties lexicographic.
/// Fixed globally so monomial bases and serialized term lists are reproducible.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using TermMap = std::map<Monomial, double, GradedLexLess>;

/// Sparse multivariate polynomial over a fixed number of real variables.
///
/// Arithmetic collects like terms and drops coefficients whose magnitude falls
/// below 1e-12 of the operands' largest coefficient, so the zero polynomial is
/// always represented by an empty term map.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int n_vars);

  static MultiPoly constant(int n_vars, double value);
  static MultiPoly variable(int n_vars, int index);
  static MultiPoly monomial(Monomial exponents, double coefficient);

  int n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // total degree; 0 for the zero polynomial

  double coefficient(const Monomial& e) const;
  double max_abs_coefficient() const;

  double eval(std::span<const double> x) const;
  MultiPoly derivative(int var) const;

  /// Accumulates a term, collecting like terms; call normalize() when done.
  MultiPoly& add_term(Monomial exponents, double coefficient);
  /// Drops coefficients below 1e-12 of the polynomial's own largest magnitude.
  void normalize();

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(double s, const MultiPoly& p);
  MultiPoly operator-() const;

 private:
  int n_vars_ = 0;
  TermMap terms_;
};

/// A finite sequence of polynomials sharing one input space: a map R^n -> R^m.
class ObservableMap {
 public:
  ObservableMap() = default;
  ObservableMap(int n, std::vector<MultiPoly> entries);
  static ObservableMap zero(int n, int m);

  int input_dim() const { return n_; }
  int output_dim() const { return static_cast<int>(entries_.size()); }
  const MultiPoly& operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  const std::vector<MultiPoly>& entries() const { return entries_; }

  friend ObservableMap operator+(const ObservableMap& a, const ObservableMap& b);
  friend ObservableMap operator-(const ObservableMap& a, const ObservableMap& b);

 private:
  int n_ = 0;
  std::vector<MultiPoly> entries_;
};

/// Dense matrix of polynomials, row-major, uniform variable count.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int n_vars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int n_vars() const { return n_vars_; }
  const MultiPoly& operator()(int i, int j) const;
  MultiPoly& operator()(int i, int j);

 private:
  int rows_ = 0, cols_ = 0, n_vars_ = 0;
  std::vector<MultiPoly> entries_;
};

Eigen::VectorXd eval_map(const ObservableMap& p, const Eigen::VectorXd& x);

/// Formal Jacobian: entry (j, i) is d p_j / d x_i.
PolyMatrix jacobian(const ObservableMap& p);

/// Entrywise W * p for a real k x m matrix W.
ObservableMap linear_combination(const Eigen::MatrixXd& W, const ObservableMap& p);

/// x |-> p(x) + R x + S.
ObservableMap affine_shift(const ObservableMap& p, const Eigen::MatrixXd& R,
                           const Eigen::VectorXd& S);

struct AffineSplit {
  ObservableMap p0;  // terms of degree >= 2
  Eigen::MatrixXd R;
  Eigen::VectorXd S;
};

/// Exact decomposition p = p0 + R x + S with p0(0) = 0 and dp0/dx(0) = 0.
AffineSplit split_affine(const ObservableMap& p);

struct CoefficientMatrix {
  std::vector<Monomial> basis;  // sorted union of monomials, graded lex
  Eigen::MatrixXd K;            // |basis| x m; column j holds the coefficients of p_j
};

/// Coefficient matrix of the map's entries; w^T p == 0 iff K w == 0.
CoefficientMatrix coefficient_matrix(const ObservableMap& p);

struct IndependentSubset {
  std::vector<int> indices;  // ascending; the selected linearly independent entries
  Eigen::MatrixXd Q;         // (m - m') x m'; complement entries = Q * selected entries
};

/// Greedy maximal linearly independent subset of the entries, by increasing
/// index, with the dependency coefficients of the remaining entries.
IndependentSubset independent_subset(const ObservableMap& p, double tol);

/// True iff every coefficient satisfies |c| <= tol * (1 + largest magnitude).
bool poly_identity_zero(const ObservableMap& q, double tol);
bool poly_identity_zero(const PolyMatrix& q, double tol);

// Construction helpers shared by the embedding and verification code.
ObservableMap map_from_linear(const Eigen::MatrixXd& R);
ObservableMap map_from_constant(const Eigen::VectorXd& S, int n_vars);
ObservableMap submap(const ObservableMap& p, std::span<const int> indices);
ObservableMap apply(const PolyMatrix& J, const ObservableMap& v);
ObservableMap apply(const PolyMatrix& J, const Eigen::VectorXd& b);
PolyMatrix multiply(const Eigen::MatrixXd& W, const PolyMatrix& J);
double max_abs_coefficient(const ObservableMap& p);

}  // namespace superlin
