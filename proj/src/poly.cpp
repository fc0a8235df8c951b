#include "superlin/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "superlin/error.hpp"
#include "superlin/linalg.hpp"

namespace superlin {

namespace {

constexpr double kDropFactor = 1e-12;

int total_degree(const Monomial& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Drops coefficients at or below the threshold; exact zeros always go.
void prune_terms(TermMap& terms, double threshold) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= threshold)
      it = terms.erase(it);
    else
      ++it;
  }
}

double map_max_abs(const TermMap& terms) {
  double m = 0.0;
  for (const auto& [e, c] : terms) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 0) fail(ErrorCode::Dimension, "polynomial variable count must be non-negative");
}

MultiPoly MultiPoly::constant(int n_vars, double value) {
  MultiPoly p(n_vars);
  if (value != 0.0) p.terms_.emplace(Monomial(static_cast<std::size_t>(n_vars), 0), value);
  return p;
}

MultiPoly MultiPoly::variable(int n_vars, int index) {
  if (index < 0 || index >= n_vars) fail(ErrorCode::Dimension, "variable index out of range");
  MultiPoly p(n_vars);
  Monomial e(static_cast<std::size_t>(n_vars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.terms_.emplace(std::move(e), 1.0);
  return p;
}

MultiPoly MultiPoly::monomial(Monomial exponents, double coefficient) {
  MultiPoly p(static_cast<int>(exponents.size()));
  for (int e : exponents)
    if (e < 0) fail(ErrorCode::Dimension, "monomial exponents must be non-negative");
  if (coefficient != 0.0) p.terms_.emplace(std::move(exponents), coefficient);
  return p;
}

int MultiPoly::degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

double MultiPoly::coefficient(const Monomial& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

double MultiPoly::max_abs_coefficient() const { return map_max_abs(terms_); }

double MultiPoly::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_vars_)
    fail(ErrorCode::Dimension, "evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int i = 0; i < n_vars_; ++i)
      for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) t *= x[static_cast<std::size_t>(i)];
    sum += t;
  }
  return sum;
}

MultiPoly MultiPoly::derivative(int var) const {
  if (var < 0 || var >= n_vars_) fail(ErrorCode::Dimension, "derivative index out of range");
  MultiPoly out(n_vars_);
  for (const auto& [e, c] : terms_) {
    const int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Monomial d = e;
    d[static_cast<std::size_t>(var)] = k - 1;
    out.terms_[std::move(d)] += c * k;
  }
  prune_terms(out.terms_, kDropFactor * map_max_abs(out.terms_));
  return out;
}

MultiPoly& MultiPoly::add_term(Monomial exponents, double coefficient) {
  if (static_cast<int>(exponents.size()) != n_vars_)
    fail(ErrorCode::Dimension, "term exponent vector has wrong length");
  terms_[std::move(exponents)] += coefficient;
  return *this;
}

void MultiPoly::normalize() { prune_terms(terms_, kDropFactor * map_max_abs(terms_)); }

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_vars_ != b.n_vars_) fail(ErrorCode::Dimension, "polynomial variable counts differ");
  MultiPoly out = a;
  for (const auto& [e, c] : b.terms_) out.terms_[e] += c;
  prune_terms(out.terms_,
              kDropFactor * std::max(a.max_abs_coefficient(), b.max_abs_coefficient()));
  return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_vars_ != b.n_vars_) fail(ErrorCode::Dimension, "polynomial variable counts differ");
  MultiPoly out = a;
  for (const auto& [e, c] : b.terms_) out.terms_[e] -= c;
  prune_terms(out.terms_,
              kDropFactor * std::max(a.max_abs_coefficient(), b.max_abs_coefficient()));
  return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_vars_ != b.n_vars_) fail(ErrorCode::Dimension, "polynomial variable counts differ");
  MultiPoly out(a.n_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Monomial e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.terms_[std::move(e)] += ca * cb;
    }
  }
  prune_terms(out.terms_,
              kDropFactor * std::max(a.max_abs_coefficient(), b.max_abs_coefficient()));
  return out;
}

MultiPoly operator*(double s, const MultiPoly& p) {
  MultiPoly out(p.n_vars_);
  if (s == 0.0) return out;
  for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, s * c);
  return out;
}

MultiPoly MultiPoly::operator-() const { return -1.0 * *this; }

ObservableMap::ObservableMap(int n, std::vector<MultiPoly> entries)
    : n_(n), entries_(std::move(entries)) {
  for (const MultiPoly& p : entries_)
    if (p.n_vars() != n) fail(ErrorCode::Dimension, "observable entry has wrong variable count");
}

ObservableMap ObservableMap::zero(int n, int m) {
  return ObservableMap(n, std::vector<MultiPoly>(static_cast<std::size_t>(m), MultiPoly(n)));
}

ObservableMap operator+(const ObservableMap& a, const ObservableMap& b) {
  if (a.n_ != b.n_ || a.output_dim() != b.output_dim())
    fail(ErrorCode::Dimension, "observable map shapes differ");
  std::vector<MultiPoly> out;
  out.reserve(a.entries_.size());
  for (std::size_t j = 0; j < a.entries_.size(); ++j) out.push_back(a.entries_[j] + b.entries_[j]);
  return ObservableMap(a.n_, std::move(out));
}

ObservableMap operator-(const ObservableMap& a, const ObservableMap& b) {
  if (a.n_ != b.n_ || a.output_dim() != b.output_dim())
    fail(ErrorCode::Dimension, "observable map shapes differ");
  std::vector<MultiPoly> out;
  out.reserve(a.entries_.size());
  for (std::size_t j = 0; j < a.entries_.size(); ++j) out.push_back(a.entries_[j] - b.entries_[j]);
  return ObservableMap(a.n_, std::move(out));
}

PolyMatrix::PolyMatrix(int rows, int cols, int n_vars)
    : rows_(rows), cols_(cols), n_vars_(n_vars),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               MultiPoly(n_vars)) {
  if (rows < 0 || cols < 0) fail(ErrorCode::Dimension, "matrix dimensions must be non-negative");
}

const MultiPoly& PolyMatrix::operator()(int i, int j) const {
  return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(j)];
}

MultiPoly& PolyMatrix::operator()(int i, int j) {
  return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(j)];
}

Eigen::VectorXd eval_map(const ObservableMap& p, const Eigen::VectorXd& x) {
  if (static_cast<int>(x.size()) != p.input_dim())
    fail(ErrorCode::Dimension, "evaluation point has wrong dimension");
  Eigen::VectorXd out(p.output_dim());
  const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
  for (int j = 0; j < p.output_dim(); ++j) out(j) = p[j].eval(xs);
  return out;
}

PolyMatrix jacobian(const ObservableMap& p) {
  PolyMatrix J(p.output_dim(), p.input_dim(), p.input_dim());
  for (int j = 0; j < p.output_dim(); ++j)
    for (int i = 0; i < p.input_dim(); ++i) J(j, i) = p[j].derivative(i);
  return J;
}

ObservableMap linear_combination(const Eigen::MatrixXd& W, const ObservableMap& p) {
  if (static_cast<int>(W.cols()) != p.output_dim())
    fail(ErrorCode::Dimension, "combination matrix has wrong column count");
  std::vector<MultiPoly> out;
  out.reserve(static_cast<std::size_t>(W.rows()));
  for (int i = 0; i < W.rows(); ++i) {
    MultiPoly acc(p.input_dim());
    for (int j = 0; j < W.cols(); ++j) {
      if (W(i, j) == 0.0) continue;
      for (const auto& [e, c] : p[j].terms()) acc.add_term(e, W(i, j) * c);
    }
    acc.normalize();
    out.push_back(std::move(acc));
  }
  return ObservableMap(p.input_dim(), std::move(out));
}

ObservableMap affine_shift(const ObservableMap& p, const Eigen::MatrixXd& R,
                           const Eigen::VectorXd& S) {
  const int n = p.input_dim(), m = p.output_dim();
  if (R.rows() != m || R.cols() != n || S.size() != m)
    fail(ErrorCode::Dimension, "affine shift shapes do not conform");
  std::vector<MultiPoly> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    MultiPoly q = p[j];
    for (int i = 0; i < n; ++i) {
      if (R(j, i) == 0.0) continue;
      Monomial e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      q.add_term(std::move(e), R(j, i));
    }
    if (S(j) != 0.0) q.add_term(Monomial(static_cast<std::size_t>(n), 0), S(j));
    q.normalize();
    out.push_back(std::move(q));
  }
  return ObservableMap(n, std::move(out));
}

AffineSplit split_affine(const ObservableMap& p) {
  const int n = p.input_dim(), m = p.output_dim();
  AffineSplit out;
  out.R = Eigen::MatrixXd::Zero(m, n);
  out.S = Eigen::VectorXd::Zero(m);
  std::vector<MultiPoly> rest;
  rest.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    MultiPoly q(n);
    for (const auto& [e, c] : p[j].terms()) {
      const int deg = total_degree(e);
      if (deg == 0) {
        out.S(j) = c;
      } else if (deg == 1) {
        const auto i = std::find(e.begin(), e.end(), 1) - e.begin();
        out.R(j, static_cast<Eigen::Index>(i)) = c;
      } else {
        q.add_term(e, c);
      }
    }
    rest.push_back(std::move(q));
  }
  out.p0 = ObservableMap(n, std::move(rest));
  return out;
}

CoefficientMatrix coefficient_matrix(const ObservableMap& p) {
  const int m = p.output_dim();
  std::map<Monomial, int, GradedLexLess> index;
  for (int j = 0; j < m; ++j)
    for (const auto& [e, c] : p[j].terms()) index.emplace(e, 0);
  CoefficientMatrix out;
  out.basis.reserve(index.size());
  for (auto& [e, idx] : index) {
    idx = static_cast<int>(out.basis.size());
    out.basis.push_back(e);
  }
  out.K = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out.basis.size()), m);
  for (int j = 0; j < m; ++j)
    for (const auto& [e, c] : p[j].terms()) out.K(index.at(e), j) = c;
  return out;
}

IndependentSubset independent_subset(const ObservableMap& p, double tol) {
  const int m = p.output_dim();
  const CoefficientMatrix cm = coefficient_matrix(p);
  IndependentSubset out;
  std::vector<int> complement;
  Eigen::MatrixXd sel(cm.K.rows(), 0);
  for (int j = 0; j < m; ++j) {
    Eigen::MatrixXd cand(cm.K.rows(), sel.cols() + 1);
    cand << sel, cm.K.col(j);
    if (numerical_rank(cand, tol) == static_cast<int>(cand.cols())) {
      sel = std::move(cand);
      out.indices.push_back(j);
    } else {
      complement.push_back(j);
    }
  }
  const auto k = static_cast<Eigen::Index>(out.indices.size());
  out.Q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(complement.size()), k);
  if (k > 0) {
    const auto qr = sel.colPivHouseholderQr();
    for (std::size_t r = 0; r < complement.size(); ++r)
      out.Q.row(static_cast<Eigen::Index>(r)) = qr.solve(cm.K.col(complement[r])).transpose();
  }
  // The least-squares fit must reproduce the dependent entries exactly.
  const ObservableMap diff =
      submap(p, complement) - linear_combination(out.Q, submap(p, out.indices));
  if (!poly_identity_zero(diff, tol))
    fail(ErrorCode::Numeric, "dependent observables are not reproduced by the fitted combination");
  return out;
}

bool poly_identity_zero(const ObservableMap& q, double tol) {
  const double scale = max_abs_coefficient(q);
  return scale <= tol * (1.0 + scale);
}

bool poly_identity_zero(const PolyMatrix& q, double tol) {
  double scale = 0.0;
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) scale = std::max(scale, q(i, j).max_abs_coefficient());
  return scale <= tol * (1.0 + scale);
}

ObservableMap map_from_linear(const Eigen::MatrixXd& R) {
  return affine_shift(ObservableMap::zero(static_cast<int>(R.cols()), static_cast<int>(R.rows())),
                      R, Eigen::VectorXd::Zero(R.rows()));
}

ObservableMap map_from_constant(const Eigen::VectorXd& S, int n_vars) {
  std::vector<MultiPoly> out;
  out.reserve(static_cast<std::size_t>(S.size()));
  for (int j = 0; j < S.size(); ++j) out.push_back(MultiPoly::constant(n_vars, S(j)));
  return ObservableMap(n_vars, std::move(out));
}

ObservableMap submap(const ObservableMap& p, std::span<const int> indices) {
  std::vector<MultiPoly> out;
  out.reserve(indices.size());
  for (int j : indices) {
    if (j < 0 || j >= p.output_dim()) fail(ErrorCode::Dimension, "submap index out of range");
    out.push_back(p[j]);
  }
  return ObservableMap(p.input_dim(), std::move(out));
}

ObservableMap apply(const PolyMatrix& J, const ObservableMap& v) {
  if (J.cols() != v.output_dim() || (J.rows() > 0 && J.cols() > 0 && J.n_vars() != v.input_dim()))
    fail(ErrorCode::Dimension, "matrix-map product shapes do not conform");
  std::vector<MultiPoly> out;
  out.reserve(static_cast<std::size_t>(J.rows()));
  for (int i = 0; i < J.rows(); ++i) {
    MultiPoly acc(v.input_dim());
    for (int k = 0; k < J.cols(); ++k) acc = acc + J(i, k) * v[k];
    out.push_back(std::move(acc));
  }
  return ObservableMap(v.input_dim(), std::move(out));
}

ObservableMap apply(const PolyMatrix& J, const Eigen::VectorXd& b) {
  if (J.cols() != static_cast<int>(b.size()))
    fail(ErrorCode::Dimension, "matrix-vector product shapes do not conform");
  std::vector<MultiPoly> out;
  out.reserve(static_cast<std::size_t>(J.rows()));
  for (int i = 0; i < J.rows(); ++i) {
    MultiPoly acc(J.n_vars());
    for (int k = 0; k < J.cols(); ++k) acc = acc + b(k) * J(i, k);
    out.push_back(std::move(acc));
  }
  return ObservableMap(J.n_vars(), std::move(out));
}

PolyMatrix multiply(const Eigen::MatrixXd& W, const PolyMatrix& J) {
  if (static_cast<int>(W.cols()) != J.rows())
    fail(ErrorCode::Dimension, "matrix product shapes do not conform");
  PolyMatrix out(static_cast<int>(W.rows()), J.cols(), J.n_vars());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) {
      MultiPoly acc(J.n_vars());
      for (int k = 0; k < J.rows(); ++k) acc = acc + W(i, k) * J(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

double max_abs_coefficient(const ObservableMap& p) {
  double m = 0.0;
  for (int j = 0; j < p.output_dim(); ++j) m = std::max(m, p[j].max_abs_coefficient());
  return m;
}

}  // namespace superlin
