#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superlin/embedding.hpp"

namespace superlin {

/// Piecewise-constant control signal: value(t) = values[i] on
/// [breakpoints[i], breakpoints[i+1]), last value held to the right.
/// Breakpoints are strictly increasing and start at the initial time.
struct ControlSignal {
  std::vector<double> breakpoints;
  std::vector<double> values;

  static ControlSignal constant(double v);
  double at(double t) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;  // one per time
  bool truncated = false;               // stopped early on blow-up
};

/// Fixed-step RK4 for x' = f(x) + u(t) g over [0, T], step h, with the grid
/// refined so every control breakpoint in (0, T) is a grid point and u is
/// held at its left-interval value across each step. Integration stops early
/// when the state norm exceeds 1e8 or turns non-finite.
Trajectory integrate_nonlinear(const ControlSystem& sys, const Eigen::VectorXd& x0,
                               const ControlSignal& u, double T, double h);

/// Same grid and stepping rule for the affine lifted dynamics
/// z' = A_l z + B_l u + D_l from z0 = (x0, p(x0)).
Trajectory integrate_linear(const SuperLinearization& L, const Eigen::VectorXd& x0,
                            const ControlSignal& u, double T, double h);

struct CosimReport {
  double max_state_gap = 0.0;  // max_t |x(t) - z_1(t)|_inf
  double max_gp_gap = 0.0;     // max_t |G p(x(t)) - G z_2(t)|_inf
  double step = 0.0;
  double horizon = 0.0;
  bool truncated = false;
  double truncated_at = 0.0;  // last common grid time when truncated
};

struct CosimResult {
  Trajectory nonlinear;
  Trajectory linear;
  CosimReport report;
};

/// Validates L, integrates the projected system and the lifted system on one
/// shared grid, and reports the gaps over the common (possibly truncated)
/// prefix. Throws Error(Validation) when L fails validate().
CosimResult cosimulate(const SuperLinearization& L, const Eigen::VectorXd& x0,
                       const ControlSignal& u, double T, double h,
                       const Tolerances& tol = {});

struct GeneratorSpec {
  int n_x = 2;          // states driven by the observables
  int n_y = 2;          // autonomous diagonal states feeding the observables
  int m = 3;            // observable count
  int deg_max = 3;      // monomial degree cap, >= 2
  int target_rank = 1;  // rank of the generated G, <= min(n_x, m)
  bool scramble = true; // random conjugate + shift after construction
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  SuperLinearization system;
  int true_minimal_visible = 0;  // target_rank by construction
};

/// Seeded random valid embedding: monomial observables in the autonomous
/// coordinates, G of exact rank target_rank, optionally scrambled by a
/// well-conditioned conjugate and a random shift. Deterministic per seed.
/// Throws Error(Infeasible) when the spec is out of range.
GeneratedInstance generate_instance(const GeneratorSpec& spec);

}  // namespace superlin
