#include "superlin/transform.hpp"

#include <utility>
#include <vector>

#include "superlin/error.hpp"
#include "superlin/linalg.hpp"

namespace superlin {

SuperLinearization conjugate(const SuperLinearization& L, const Eigen::MatrixXd& P,
                             const Tolerances& tol) {
  if (P.rows() != L.m || P.cols() != L.m)
    fail(ErrorCode::Dimension, "conjugation matrix must be m x m");
  if (numerical_rank(P, tol.rank) != L.m)
    fail(ErrorCode::Singular, "conjugation matrix is singular at the working tolerance");
  const Eigen::MatrixXd Pinv =
      P.partialPivLu().solve(Eigen::MatrixXd::Identity(L.m, L.m));
  SuperLinearization out;
  out.n = L.n;
  out.m = L.m;
  out.A = L.A;
  out.G = L.G * Pinv;
  out.H = P * L.H;
  out.M = P * L.M * Pinv;
  out.B = L.B;
  out.C = P * L.C;
  out.D = L.D;
  out.E = P * L.E;
  out.p = linear_combination(P, L.p);
  return out;
}

SuperLinearization shift_observables(const SuperLinearization& L, const Eigen::MatrixXd& R,
                                     const Eigen::VectorXd& S) {
  if (R.rows() != L.m || R.cols() != L.n || S.size() != L.m)
    fail(ErrorCode::Dimension, "shift blocks must be m x n and m");
  SuperLinearization out;
  out.n = L.n;
  out.m = L.m;
  out.A = L.A - L.G * R;
  out.G = L.G;
  out.H = L.H - L.M * R + R * L.A - R * L.G * R;
  out.M = L.M + R * L.G;
  out.B = L.B;
  out.C = L.C + R * L.B;
  out.D = L.D - L.G * S;
  out.E = L.E - L.M * S + R * L.D - R * L.G * S;
  out.p = affine_shift(L.p, R, S);
  return out;
}

SuperLinearization strip_affine_terms(const SuperLinearization& L) {
  const AffineSplit split = split_affine(L.p);
  return shift_observables(L, -split.R, -split.S);
}

SuperLinearization expand_rank_visible(const SuperLinearization& L, const Tolerances& tol) {
  const RankFactorization rf = rank_factorization(L.G, tol.rank);
  const int r = rf.rank;
  if (r == 0) return L;
  const int n = L.n, m = L.m, m2 = m + r;
  SuperLinearization out;
  out.n = n;
  out.m = m2;
  out.A = L.A;
  out.B = L.B;
  out.D = L.D;
  out.G = Eigen::MatrixXd::Zero(n, m2);
  out.G.rightCols(r) = rf.V;
  out.H = Eigen::MatrixXd(m2, n);
  out.H << L.H, rf.W * L.H;
  out.M = Eigen::MatrixXd::Zero(m2, m2);
  out.M.topLeftCorner(m, m) = L.M;
  out.M.block(m, 0, r, m) = rf.W * L.M;
  out.C = Eigen::VectorXd(m2);
  out.C << L.C, rf.W * L.C;
  out.E = Eigen::VectorXd(m2);
  out.E << L.E, rf.W * L.E;
  std::vector<MultiPoly> entries = L.p.entries();
  const ObservableMap wp = linear_combination(rf.W, L.p);
  for (const MultiPoly& q : wp.entries()) entries.push_back(q);
  out.p = ObservableMap(n, std::move(entries));
  return out;
}

SuperLinearization merge_dependent_visible(const SuperLinearization& L, const Tolerances& tol) {
  const Classification cls = classify(L, tol);
  const ObservableMap visible = submap(L.p, cls.visible);
  const IndependentSubset sub = independent_subset(visible, tol.rank);
  const int k = static_cast<int>(sub.indices.size());
  if (k == cls.m_v) return L;
  if (numerical_rank(L.G, tol.rank) != cls.m_v)
    fail(ErrorCode::Precondition,
         "merging dependent visible observables requires rank(G) equal to the visible count");

  // Permute observables to (hidden, independent visible, dependent visible).
  std::vector<int> order = cls.hidden;
  std::vector<bool> selected(static_cast<std::size_t>(cls.m_v), false);
  for (int i : sub.indices) {
    order.push_back(cls.visible[static_cast<std::size_t>(i)]);
    selected[static_cast<std::size_t>(i)] = true;
  }
  for (int i = 0; i < cls.m_v; ++i)
    if (!selected[static_cast<std::size_t>(i)])
      order.push_back(cls.visible[static_cast<std::size_t>(i)]);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(L.m, L.m);
  for (int i = 0; i < L.m; ++i) P(i, order[static_cast<std::size_t>(i)]) = 1.0;
  const SuperLinearization Lp = conjugate(L, P, tol);

  // p = V p'' with V stacking (identity on kept entries, Q on dropped ones).
  const int m2 = cls.m_h + k;
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(L.m, m2);
  V.topLeftCorner(m2, m2).setIdentity();
  V.bottomRightCorner(cls.m_v - k, k) = sub.Q;

  SuperLinearization out;
  out.n = L.n;
  out.m = m2;
  out.A = Lp.A;
  out.B = Lp.B;
  out.D = Lp.D;
  out.G = Lp.G * V;
  out.H = Lp.H.topRows(m2);
  out.M = Lp.M.topRows(m2) * V;
  out.C = Lp.C.head(m2);
  out.E = Lp.E.head(m2);
  std::vector<int> kept(static_cast<std::size_t>(m2));
  for (int i = 0; i < m2; ++i) kept[static_cast<std::size_t>(i)] = i;
  out.p = submap(Lp.p, kept);
  return out;
}

SuperLinearization prune_unobservable(const SuperLinearization& L, const Tolerances& tol) {
  const ObservableStaircase sc = observable_staircase(L.M, L.G, tol.rank);
  const int r = sc.rank;
  if (r == L.m) return L;
  const SuperLinearization Lc = conjugate(L, sc.P, tol);
  SuperLinearization out;
  out.n = L.n;
  out.m = r;
  out.A = Lc.A;
  out.B = Lc.B;
  out.D = Lc.D;
  out.G = Lc.G.rightCols(r);
  out.H = Lc.H.bottomRows(r);
  out.M = Lc.M.bottomRightCorner(r, r);
  out.C = Lc.C.tail(r);
  out.E = Lc.E.tail(r);
  std::vector<int> kept(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) kept[static_cast<std::size_t>(i)] = L.m - r + i;
  out.p = submap(Lc.p, kept);
  return out;
}

namespace {

ReductionStep make_step(const char* name, const SuperLinearization& before,
                        const SuperLinearization& after, const Tolerances& tol) {
  ReductionStep step;
  step.name = name;
  step.n = before.n;
  step.m_before = before.m;
  step.m_after = after.m;
  step.rank_g_before = numerical_rank(before.G, tol.rank);
  step.rank_g_after = numerical_rank(after.G, tol.rank);
  const Classification cb = classify(before, tol), ca = classify(after, tol);
  step.m_v_before = cb.m_v;
  step.m_v_after = ca.m_v;
  step.m_h_before = cb.m_h;
  step.m_h_after = ca.m_h;
  return step;
}

}  // namespace

SuperLinearization to_reduced_visible_form(const SuperLinearization& L, ReductionReport* report,
                                           const Tolerances& tol) {
  if (!validate(L, tol).pass)
    fail(ErrorCode::Validation, "input fails validation; cannot reduce an invalid embedding");
  const SuperLinearization stripped = strip_affine_terms(L);
  const SuperLinearization expanded = expand_rank_visible(stripped, tol);
  const SuperLinearization merged = merge_dependent_visible(expanded, tol);
  if (report) {
    report->steps.clear();
    report->steps.push_back(make_step("strip", L, stripped, tol));
    report->steps.push_back(make_step("expand", stripped, expanded, tol));
    report->steps.push_back(make_step("merge", expanded, merged, tol));
    report->m_v_star = numerical_rank(merged.G, tol.rank);
  }
  return merged;
}

int minimal_visible_count(const SuperLinearization& L, const Tolerances& tol) {
  return numerical_rank(to_reduced_visible_form(L, nullptr, tol).G, tol.rank);
}

SuperLinearization realize_minimal_visible(const SuperLinearization& L, const Tolerances& tol) {
  return expand_rank_visible(to_reduced_visible_form(L, nullptr, tol), tol);
}

}  // namespace superlin
