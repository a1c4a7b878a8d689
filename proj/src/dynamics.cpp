#include "desknum/dynamics.hpp"

#include <cmath>

#include "desknum/roots.hpp"

namespace desknum::dyn {

namespace {

void check(const IvpProblem& p) {
  require(static_cast<bool>(p.f), ErrorCode::InvalidArgument, "ivp: missing right-hand side");
  require(!p.y0.empty(), ErrorCode::EmptyInput, "ivp: empty initial state");
  require(p.h > 0.0 && p.t_end > p.t0, ErrorCode::InvalidArgument, "ivp: need h > 0 and t_end > t0");
  require(p.h <= p.t_end - p.t0, ErrorCode::InvalidArgument, "ivp: step larger than the interval");
}

using Stepper = std::function<Vector(double t, std::span<const double> y, double h)>;

// Uniform grid from t0; the last step is shortened to land on t_end.
Trajectory integrate(const IvpProblem& p, const Stepper& step) {
  check(p);
  const double span = p.t_end - p.t0;
  const auto steps = static_cast<std::size_t>(std::ceil(span / p.h - 1e-9));
  const std::size_t dim = p.y0.size();
  Vector ts(steps + 1);
  std::vector<double> ys((steps + 1) * dim);
  ts[0] = p.t0;
  std::copy(p.y0.begin(), p.y0.end(), ys.begin());
  Vector y = p.y0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = p.t0 + static_cast<double>(k) * p.h;
    const double t_next = k + 1 == steps ? p.t_end : p.t0 + static_cast<double>(k + 1) * p.h;
    y = step(t, y, t_next - t);
    require(all_finite(y), ErrorCode::NonFinite, "ivp: solution blew up");
    ts[k + 1] = t_next;
    std::copy(y.begin(), y.end(), ys.begin() + static_cast<std::ptrdiff_t>((k + 1) * dim));
  }
  return {std::move(ts), Matrix(steps + 1, dim, std::move(ys))};
}

Vector rk4_step(const Rhs& f, double t, std::span<const double> y, double h) {
  const Vector k1 = f(t, y);
  const Vector k2 = f(t + h / 2, axpy(h / 2, k1, y));
  const Vector k3 = f(t + h / 2, axpy(h / 2, k2, y));
  const Vector k4 = f(t + h, axpy(h, k3, y));
  Vector out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace

Trajectory euler_solve(const IvpProblem& p) {
  return integrate(p, [&](double t, std::span<const double> y, double h) { return axpy(h, p.f(t, y), y); });
}

Trajectory rk4_solve(const IvpProblem& p) {
  return integrate(p, [&](double t, std::span<const double> y, double h) { return rk4_step(p.f, t, y, h); });
}

Trajectory backward_euler_solve(const IvpProblem& p) {
  return integrate(p, [&](double t, std::span<const double> y, double h) {
    const Vector yn(y.begin(), y.end());
    const double t1 = t + h;
    auto residual = [&](std::span<const double> z) {
      Vector r = p.f(t1, z);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = z[i] - yn[i] - h * r[i];
      return r;
    };
    try {
      return roots::newton_system(residual, std::nullopt, yn, 1e-11, 50).root;
    } catch (const Error& e) {
      fail(ErrorCode::NewtonFailure, std::string("backward_euler: inner Newton failed at t = ") + std::to_string(t1) +
                                         " (" + e.what() + ")");
    }
  });
}

Trajectory lif_simulate(const LifParams& params, double h, double t_end) {
  require(params.tau_m > 0.0, ErrorCode::InvalidArgument, "lif: tau_m must be positive");
  const Rhs f = [params](double, std::span<const double> v) {
    return Vector{(-(v[0] - params.v_rest) + params.r_m * params.current) / params.tau_m};
  };
  return rk4_solve({f, 0.0, {params.v_rest}, h, t_end});
}

double heat_stability_factor(const HeatProblem& p) {
  const double dx = p.length / static_cast<double>(p.nx - 1);
  const double dt = p.t_total / static_cast<double>(p.nt);
  return p.alpha * dt / (dx * dx);
}

HeatResult heat1d_explicit(const HeatProblem& p, std::size_t snapshot_every) {
  require(p.alpha > 0.0 && p.length > 0.0 && p.t_total > 0.0, ErrorCode::InvalidArgument,
          "heat: alpha, length and time must be positive");
  require(p.nx >= 3 && p.nt >= 1, ErrorCode::InvalidArgument, "heat: need nx >= 3 and nt >= 1");
  require(static_cast<bool>(p.u0), ErrorCode::InvalidArgument, "heat: missing initial condition");
  const double r = heat_stability_factor(p);
  if (r >= 0.5) fail(ErrorCode::Unstable, "The scheme is unstable! (alpha dt / dx^2 = " + std::to_string(r) + ")");

  const double dx = p.length / static_cast<double>(p.nx - 1);
  HeatResult out;
  out.x.resize(p.nx);
  out.u.resize(p.nx);
  for (std::size_t i = 0; i < p.nx; ++i) {
    out.x[i] = static_cast<double>(i) * dx;
    out.u[i] = p.u0(out.x[i]);
  }
  require(all_finite(out.u), ErrorCode::NonFinite, "heat: initial condition is not finite");
  if (snapshot_every > 0) out.snapshots.push_back(out.u);
  Vector next = out.u;
  for (std::size_t n = 1; n <= p.nt; ++n) {
    for (std::size_t i = 1; i + 1 < p.nx; ++i)
      next[i] = out.u[i] + r * (out.u[i + 1] - 2.0 * out.u[i] + out.u[i - 1]);
    std::swap(out.u, next);
    if (snapshot_every > 0 && n % snapshot_every == 0) out.snapshots.push_back(out.u);
  }
  return out;
}

Trajectory lti_step_response(double k, double tau, double h, double t_end) {
  require(tau > 0.0, ErrorCode::InvalidArgument, "lti: tau must be positive");
  const Rhs f = [k, tau](double, std::span<const double> y) { return Vector{(k - y[0]) / tau}; };
  return rk4_solve({f, 0.0, {0.0}, h, t_end});
}

}  // namespace desknum::dyn
