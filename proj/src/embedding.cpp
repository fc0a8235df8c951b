#include "superlin/embedding.hpp"

#include <cmath>

#include "superlin/error.hpp"
#include "superlin/linalg.hpp"

namespace superlin {

Eigen::MatrixXd SuperLinearization::lift_matrix() const {
  Eigen::MatrixXd Al(n + m, n + m);
  Al << A, G, H, M;
  return Al;
}

Eigen::VectorXd SuperLinearization::lift_input() const {
  Eigen::VectorXd Bl(n + m);
  Bl << B, C;
  return Bl;
}

Eigen::VectorXd SuperLinearization::lift_offset() const {
  Eigen::VectorXd Dl(n + m);
  Dl << D, E;
  return Dl;
}

namespace {

bool shapes_conform(const SuperLinearization& L) {
  const int n = L.n, m = L.m;
  return n >= 0 && m >= 0 && L.A.rows() == n && L.A.cols() == n && L.G.rows() == n &&
         L.G.cols() == m && L.H.rows() == m && L.H.cols() == n && L.M.rows() == m &&
         L.M.cols() == m && L.B.size() == n && L.C.size() == m && L.D.size() == n &&
         L.E.size() == m && L.p.input_dim() == n && L.p.output_dim() == m;
}

}  // namespace

ValidationReport validate(const SuperLinearization& L, const Tolerances& tol) {
  ValidationReport report;
  const bool shapes_ok = shapes_conform(L);
  report.checks.push_back({"shape", shapes_ok, 0.0});
  if (!shapes_ok) {
    report.pass = false;
    return report;
  }

  const PolyMatrix J = jacobian(L.p);
  const ObservableMap drift = affine_shift(linear_combination(L.G, L.p), L.A, L.D);

  // G (dp/dx) (A x + G p + D) == G (H x + M p + E)
  const ObservableMap lhs1 = linear_combination(L.G, apply(J, drift));
  const ObservableMap rhs1 =
      linear_combination(L.G, affine_shift(linear_combination(L.M, L.p), L.H, L.E));
  const ObservableMap res1 = lhs1 - rhs1;
  const bool pde1 = poly_identity_zero(res1, tol.poly);
  report.checks.push_back({"PDE-1", pde1, max_abs_coefficient(res1)});

  // G (dp/dx) B == G C
  const ObservableMap lhs2 = linear_combination(L.G, apply(J, L.B));
  const ObservableMap rhs2 = map_from_constant(L.G * L.C, L.n);
  const ObservableMap res2 = lhs2 - rhs2;
  const bool pde2 = poly_identity_zero(res2, tol.poly);
  report.checks.push_back({"PDE-2", pde2, max_abs_coefficient(res2)});

  report.pass = pde1 && pde2;
  return report;
}

ControlSystem induced_control_system(const SuperLinearization& L) {
  ControlSystem sys;
  sys.n = L.n;
  sys.f = affine_shift(linear_combination(L.G, L.p), L.A, L.D);
  sys.g = L.B;
  return sys;
}

Classification classify(const SuperLinearization& L, const Tolerances& tol) {
  Classification out;
  const double threshold =
      L.G.size() == 0 ? 0.0 : tol.rank * L.G.cwiseAbs().maxCoeff();
  for (int j = 0; j < L.m; ++j) {
    const bool visible = L.m > 0 && L.n > 0 && L.G.col(j).cwiseAbs().maxCoeff() > threshold;
    (visible ? out.visible : out.hidden).push_back(j);
  }
  out.m_v = static_cast<int>(out.visible.size());
  out.m_h = static_cast<int>(out.hidden.size());
  return out;
}

bool same_system(const SuperLinearization& a, const SuperLinearization& b,
                 const Tolerances& tol) {
  if (a.n != b.n) return false;
  const ControlSystem sa = induced_control_system(a);
  const ControlSystem sb = induced_control_system(b);
  if (!poly_identity_zero(sa.f - sb.f, tol.poly)) return false;
  const double gscale =
      a.n == 0 ? 0.0 : std::max(sa.g.cwiseAbs().maxCoeff(), sb.g.cwiseAbs().maxCoeff());
  const double gdiff = a.n == 0 ? 0.0 : (sa.g - sb.g).cwiseAbs().maxCoeff();
  return gdiff <= tol.poly * (1.0 + gscale);
}

}  // namespace superlin
