#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superlin/embedding.hpp"

namespace superlin {

/// Change of observable coordinates p' = P p for invertible P. The projected
/// control system is untouched; the lifted blocks conjugate accordingly.
/// Throws Error(Singular) when P is singular at tolerance tol.rank.
SuperLinearization conjugate(const SuperLinearization& L, const Eigen::MatrixXd& P,
                             const Tolerances& tol = {});

/// Affine re-anchoring p' = p + R x + S. Validity is preserved for any R, S.
SuperLinearization shift_observables(const SuperLinearization& L,
                                     const Eigen::MatrixXd& R,
                                     const Eigen::VectorXd& S);

/// Removes constant and linear terms from every observable by the shift
/// R = -dp/dx(0), S = -p(0). Involutive on already-stripped systems.
SuperLinearization strip_affine_terms(const SuperLinearization& L);

/// Appends the r = rank(G) combinations W p from a rank factorization G = V W
/// and rewrites the coupling G p = V (W p) onto them, zeroing the original
/// columns. Exactly the r appended observables are visible and their G block
/// has full column rank. A no-op when rank(G) = 0.
SuperLinearization expand_rank_visible(const SuperLinearization& L,
                                       const Tolerances& tol = {});

/// Eliminates visible observables that are linear combinations of the other
/// visible ones, rewriting G, M, H, C, E onto the independent subset. The
/// input is returned unchanged when the visible observables are already
/// linearly independent. An actual merge requires rank(G) equal to the
/// visible count (Error(Precondition) otherwise).
SuperLinearization merge_dependent_visible(const SuperLinearization& L,
                                           const Tolerances& tol = {});

/// Drops observable coordinates invisible to the state: conjugates by an
/// orthogonal staircase transform for the pair (M, G) and keeps the
/// observable block. The result has rank(observability_matrix) == m.
SuperLinearization prune_unobservable(const SuperLinearization& L,
                                      const Tolerances& tol = {});

struct ReductionStep {
  std::string name;  // "strip", "expand", "merge"
  int n = 0;
  int m_before = 0, m_after = 0;
  int rank_g_before = 0, rank_g_after = 0;  // never increases along the pipeline
  int m_v_before = 0, m_v_after = 0;
  int m_h_before = 0, m_h_after = 0;
};

struct ReductionReport {
  std::vector<ReductionStep> steps;
  int m_v_star = 0;  // visible count of the reduced form == rank of its G
};

/// Canonical pipeline strip -> expand -> merge producing a reduced visible
/// form: no constant or linear observable terms, visible observables linearly
/// independent. Throws Error(Validation) when the input fails validate().
SuperLinearization to_reduced_visible_form(const SuperLinearization& L,
                                           ReductionReport* report = nullptr,
                                           const Tolerances& tol = {});

/// The number of visible observables in any reduced visible form, an
/// invariant of the projected control system: the rank of the reduced form's
/// G matrix.
int minimal_visible_count(const SuperLinearization& L, const Tolerances& tol = {});

/// A valid embedding of the same control system attaining the minimum, with
/// exactly minimal_visible_count(L) visible observables.
SuperLinearization realize_minimal_visible(const SuperLinearization& L,
                                           const Tolerances& tol = {});

}  // namespace superlin
