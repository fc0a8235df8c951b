#include "superlin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "superlin/error.hpp"
#include "superlin/linalg.hpp"
#include "superlin/transform.hpp"

namespace superlin {

namespace {

constexpr double kEscapeNorm = 1e8;
constexpr std::int64_t kMaxGridPoints = 5'000'000;

std::vector<double> make_grid(double T, double h, const ControlSignal& u) {
  if (!(T > 0.0) || !(h > 0.0) || h > T)
    fail(ErrorCode::Precondition, "require 0 < h <= T for integration");
  if (static_cast<std::int64_t>(T / h) > kMaxGridPoints)
    fail(ErrorCode::Precondition, "integration grid would exceed the point budget");
  std::vector<double> grid;
  for (std::int64_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * h;
    if (t >= T) break;
    grid.push_back(t);
  }
  grid.push_back(T);
  for (double tb : u.breakpoints)
    if (tb > 0.0 && tb < T) grid.push_back(tb);
  std::sort(grid.begin(), grid.end());
  const double merge_tol = 1e-12 * std::max(1.0, T);
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [merge_tol](double a, double b) { return b - a <= merge_tol; }),
             grid.end());
  return grid;
}

// Classical RK4 over an explicit grid; u is frozen at each step's left
// endpoint (the grid contains every breakpoint, so u is constant per step).
Trajectory rk4(const std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>& F,
               const Eigen::VectorXd& z0, const std::vector<double>& grid,
               const ControlSignal& u) {
  Trajectory traj;
  traj.times.reserve(grid.size());
  traj.states.reserve(grid.size());
  traj.times.push_back(grid.front());
  traj.states.push_back(z0);
  Eigen::VectorXd z = z0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dt = grid[i + 1] - grid[i];
    const double uv = u.at(grid[i]);
    const Eigen::VectorXd k1 = F(z, uv);
    const Eigen::VectorXd k2 = F(z + (0.5 * dt) * k1, uv);
    const Eigen::VectorXd k3 = F(z + (0.5 * dt) * k2, uv);
    const Eigen::VectorXd k4 = F(z + dt * k3, uv);
    z = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!z.allFinite() || (z.size() > 0 && z.cwiseAbs().maxCoeff() > kEscapeNorm)) {
      traj.truncated = true;
      break;
    }
    traj.times.push_back(grid[i + 1]);
    traj.states.push_back(z);
  }
  return traj;
}

}  // namespace

ControlSignal ControlSignal::constant(double v) { return {{0.0}, {v}}; }

double ControlSignal::at(double t) const {
  if (breakpoints.empty() || breakpoints.size() != values.size())
    fail(ErrorCode::Precondition, "control signal is empty or inconsistent");
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  const auto idx = std::max<std::ptrdiff_t>(0, (it - breakpoints.begin()) - 1);
  return values[static_cast<std::size_t>(idx)];
}

Trajectory integrate_nonlinear(const ControlSystem& sys, const Eigen::VectorXd& x0,
                               const ControlSignal& u, double T, double h) {
  if (x0.size() != sys.n || sys.f.input_dim() != sys.n || sys.f.output_dim() != sys.n ||
      sys.g.size() != sys.n)
    fail(ErrorCode::Dimension, "control system and initial state shapes do not conform");
  const std::vector<double> grid = make_grid(T, h, u);
  const auto F = [&sys](const Eigen::VectorXd& x, double uv) -> Eigen::VectorXd {
    return eval_map(sys.f, x) + uv * sys.g;
  };
  return rk4(F, x0, grid, u);
}

Trajectory integrate_linear(const SuperLinearization& L, const Eigen::VectorXd& x0,
                            const ControlSignal& u, double T, double h) {
  if (x0.size() != L.n) fail(ErrorCode::Dimension, "initial state has wrong dimension");
  const std::vector<double> grid = make_grid(T, h, u);
  const Eigen::MatrixXd Al = L.lift_matrix();
  const Eigen::VectorXd Bl = L.lift_input();
  const Eigen::VectorXd Dl = L.lift_offset();
  Eigen::VectorXd z0(L.n + L.m);
  z0 << x0, eval_map(L.p, x0);
  const auto F = [&](const Eigen::VectorXd& z, double uv) -> Eigen::VectorXd {
    return Al * z + uv * Bl + Dl;
  };
  return rk4(F, z0, grid, u);
}

CosimResult cosimulate(const SuperLinearization& L, const Eigen::VectorXd& x0,
                       const ControlSignal& u, double T, double h, const Tolerances& tol) {
  if (!validate(L, tol).pass)
    fail(ErrorCode::Validation, "embedding fails validation; refusing to co-simulate");
  CosimResult res;
  res.nonlinear = integrate_nonlinear(induced_control_system(L), x0, u, T, h);
  res.linear = integrate_linear(L, x0, u, T, h);
  const std::size_t len = std::min(res.nonlinear.times.size(), res.linear.times.size());
  res.report.step = h;
  res.report.horizon = T;
  res.report.truncated = res.nonlinear.truncated || res.linear.truncated ||
                         res.nonlinear.times.size() != res.linear.times.size();
  res.report.truncated_at = res.report.truncated ? res.nonlinear.times[len - 1] : T;
  for (std::size_t i = 0; i < len; ++i) {
    const Eigen::VectorXd& x = res.nonlinear.states[i];
    const Eigen::VectorXd& z = res.linear.states[i];
    const double sg = L.n == 0 ? 0.0 : (x - z.head(L.n)).cwiseAbs().maxCoeff();
    const double gg =
        L.n == 0 ? 0.0
                 : (L.G * eval_map(L.p, x) - L.G * z.tail(L.m)).cwiseAbs().maxCoeff();
    res.report.max_state_gap = std::max(res.report.max_state_gap, sg);
    res.report.max_gp_gap = std::max(res.report.max_gp_gap, gg);
  }
  return res;
}

namespace {

// Portable uniform doubles/integers from the raw engine stream; the standard
// distributions are implementation-defined, which would break seed stability.
double uniform_pm1(std::mt19937_64& eng) {
  return 2.0 * ((eng() >> 11) * 0x1.0p-53) - 1.0;
}

int uniform_int(std::mt19937_64& eng, int lo, int hi) {
  return lo + static_cast<int>((eng() >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
}

Eigen::MatrixXd random_matrix(std::mt19937_64& eng, int rows, int cols) {
  Eigen::MatrixXd X(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) X(i, j) = uniform_pm1(eng);
  return X;
}

// All exponent vectors over `vars` variables with 2 <= total degree <= deg_max,
// in graded lexicographic order.
void enumerate_monomials(int vars, int deg_max, Monomial& prefix, int remaining,
                         std::vector<Monomial>& out) {
  if (static_cast<int>(prefix.size()) == vars - 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    prefix.push_back(e);
    enumerate_monomials(vars, deg_max, prefix, remaining - e, out);
    prefix.pop_back();
  }
}

std::vector<Monomial> monomial_pool(int vars, int deg_max) {
  std::vector<Monomial> out;
  for (int d = 2; d <= deg_max; ++d) {
    Monomial prefix;
    enumerate_monomials(vars, deg_max, prefix, d, out);
  }
  return out;
}

}  // namespace

GeneratedInstance generate_instance(const GeneratorSpec& spec) {
  if (spec.n_x < 1 || spec.n_y < 1 || spec.m < 1 || spec.deg_max < 2)
    fail(ErrorCode::Infeasible, "generator spec requires n_x, n_y, m >= 1 and deg_max >= 2");
  if (spec.target_rank < 1 || spec.target_rank > std::min(spec.n_x, spec.m))
    fail(ErrorCode::Infeasible,
         "target rank must lie in [1, min(n_x, m)]: only the driven block of G can carry rank");
  std::vector<Monomial> pool = monomial_pool(spec.n_y, spec.deg_max);
  if (static_cast<int>(pool.size()) < spec.m)
    fail(ErrorCode::Infeasible, "not enough distinct monomials for the requested observable count");

  std::mt19937_64 eng(spec.seed);
  const int ny = spec.n_y, nx = spec.n_x, n = nx + ny, m = spec.m, r = spec.target_rank;
  const double rank_tol = 1e-9;

  // Autonomous block: y' = diag(lambda) y with integer rates.
  Eigen::VectorXd lambda(ny);
  for (int i = 0; i < ny; ++i) {
    const int pick = uniform_int(eng, 0, 5);
    lambda(i) = pick < 3 ? pick - 3 : pick - 2;
  }

  // Fisher-Yates over the monomial pool; the first m survive.
  for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(uniform_int(eng, 0, i))]);

  SuperLinearization L;
  L.n = n;
  L.m = m;
  L.A = Eigen::MatrixXd::Zero(n, n);
  L.A.topLeftCorner(ny, ny) = lambda.asDiagonal();
  L.A.bottomRows(nx) = random_matrix(eng, nx, n);

  L.G = Eigen::MatrixXd::Zero(n, m);
  for (;;) {
    const Eigen::MatrixXd Gx = random_matrix(eng, nx, r) * random_matrix(eng, r, m);
    if (numerical_rank(Gx, rank_tol) == r) {
      L.G.bottomRows(nx) = Gx;
      break;
    }
  }

  L.H = Eigen::MatrixXd::Zero(m, n);
  L.M = Eigen::MatrixXd::Zero(m, m);
  L.B = Eigen::VectorXd::Zero(n);
  L.B.tail(nx) = random_matrix(eng, nx, 1);
  L.C = Eigen::VectorXd::Zero(m);
  L.D = Eigen::VectorXd::Zero(n);
  L.D.tail(nx) = random_matrix(eng, nx, 1);
  L.E = Eigen::VectorXd::Zero(m);

  std::vector<MultiPoly> entries;
  entries.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const Monomial& alpha = pool[static_cast<std::size_t>(j)];
    double rate = 0.0;
    for (int i = 0; i < ny; ++i) rate += alpha[static_cast<std::size_t>(i)] * lambda(i);
    L.M(j, j) = rate;
    Monomial full(static_cast<std::size_t>(n), 0);
    std::copy(alpha.begin(), alpha.end(), full.begin());
    entries.push_back(MultiPoly::monomial(std::move(full), 1.0));
  }
  L.p = ObservableMap(n, std::move(entries));

  GeneratedInstance out;
  out.true_minimal_visible = r;
  if (!spec.scramble) {
    out.system = std::move(L);
    return out;
  }

  // Well-conditioned random change of observable coordinates plus a random
  // affine re-anchoring; both preserve the projected system and m_v*.
  Eigen::MatrixXd P;
  for (;;) {
    P = random_matrix(eng, m, m);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(P);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(m - 1);
    if (smin >= 0.05 && smax <= 50.0 * smin) break;
  }
  const Eigen::MatrixXd R = random_matrix(eng, m, n);
  const Eigen::VectorXd S = random_matrix(eng, m, 1);
  out.system = shift_observables(conjugate(L, P, Tolerances{}), R, S);
  return out;
}

}  // namespace superlin
