#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "desknum/ndcore.hpp"

namespace desknum::dyn {

using Rhs = std::function<Vector(double t, std::span<const double> y)>;

struct IvpProblem {
  Rhs f;
  double t0 = 0.0;
  Vector y0;
  double h = 0.01;
  double t_end = 1.0;
};

/// One row of `ys` per entry of `ts`.
struct Trajectory {
  Vector ts;
  Matrix ys;

  Vector final_state() const {
    const auto r = ys.row_span(ys.rows() - 1);
    return {r.begin(), r.end()};
  }
};

Trajectory euler_solve(const IvpProblem& p);
Trajectory rk4_solve(const IvpProblem& p);
/// Implicit Euler; each step solves y' = y + h f(t', y') by Newton with a finite-difference Jacobian.
Trajectory backward_euler_solve(const IvpProblem& p);

struct LifParams {
  double tau_m = 10.0;
  double v_rest = -65.0;
  double r_m = 10.0;
  double current = 20.0;
};

/// tau dV/dt = -(V - V_rest) + R I from V(0) = V_rest, RK4, no threshold.
Trajectory lif_simulate(const LifParams& params, double h, double t_end);

struct HeatProblem {
  double alpha = 0.01;
  double length = 10.0;
  std::size_t nx = 100;
  std::size_t nt = 500;
  double t_total = 1.0;
  std::function<double(double)> u0;
};

struct HeatResult {
  Vector x;
  Vector u;
  std::vector<Vector> snapshots;  // every `snapshot_every` steps, initial state first
};

/// alpha dt / dx^2 with dx = L / (nx - 1), dt = T / nt.
double heat_stability_factor(const HeatProblem& p);

/// Explicit FTCS scheme; boundary values stay at u0. `snapshot_every` = 0 stores no snapshots.
HeatResult heat1d_explicit(const HeatProblem& p, std::size_t snapshot_every = 0);

/// tau y' + y = K, y(0) = 0, RK4.
Trajectory lti_step_response(double k, double tau, double h, double t_end);

}  // namespace desknum::dyn
