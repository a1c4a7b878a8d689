#include "desknum/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>

#include "desknum/lindecomp.hpp"

namespace desknum::opt {

OptState OptState::zeros(std::size_t n) {
  OptState s;
  s.velocity.assign(n, 0.0);
  s.accum.assign(n, 0.0);
  s.sq_avg.assign(n, 0.0);
  s.m.assign(n, 0.0);
  s.v.assign(n, 0.0);
  return s;
}

Vector optimizer_step(StepKind kind, std::span<const double> theta, std::span<const double> g, OptState& state,
                      const OptConfig& cfg) {
  const std::size_t n = theta.size();
  require(g.size() == n, ErrorCode::ShapeMismatch, "optimizer_step: gradient length mismatch");
  require(cfg.eta > 0.0 && cfg.eps > 0.0, ErrorCode::InvalidArgument, "optimizer_step: eta and eps must be positive");
  if (state.velocity.empty() && state.t == 0) state = OptState::zeros(n);
  require(state.velocity.size() == n && state.accum.size() == n && state.sq_avg.size() == n && state.m.size() == n &&
              state.v.size() == n,
          ErrorCode::ShapeMismatch, "optimizer_step: state sized for a different parameter count");

  ++state.t;
  Vector out(theta.begin(), theta.end());
  switch (kind) {
    case StepKind::Momentum:
      for (std::size_t i = 0; i < n; ++i) {
        state.velocity[i] = cfg.beta * state.velocity[i] + (1.0 - cfg.beta) * g[i];
        out[i] -= cfg.eta * state.velocity[i];
      }
      break;
    case StepKind::Adagrad:
      for (std::size_t i = 0; i < n; ++i) {
        state.accum[i] += g[i] * g[i];
        out[i] -= cfg.eta / std::sqrt(state.accum[i] + cfg.eps) * g[i];
      }
      break;
    case StepKind::RmsProp:
      for (std::size_t i = 0; i < n; ++i) {
        state.sq_avg[i] = cfg.beta * state.sq_avg[i] + (1.0 - cfg.beta) * g[i] * g[i];
        out[i] -= cfg.eta / std::sqrt(state.sq_avg[i] + cfg.eps) * g[i];
      }
      break;
    case StepKind::Adam:
    case StepKind::AdamW: {
      const double t = static_cast<double>(state.t);
      const double c1 = 1.0 - std::pow(cfg.beta1, t);
      const double c2 = 1.0 - std::pow(cfg.beta2, t);
      for (std::size_t i = 0; i < n; ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g[i];
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        out[i] -= cfg.eta * m_hat / (std::sqrt(v_hat) + cfg.eps);
        if (kind == StepKind::AdamW) out[i] -= cfg.eta * cfg.weight_decay * theta[i];
      }
      break;
    }
  }
  require(all_finite(out), ErrorCode::NonFinite, "optimizer_step: parameters diverged");
  return out;
}

std::vector<Vector> gd_minimize(const Gradient& grad, std::span<const double> x0, double eta, std::size_t iters) {
  require(eta > 0.0, ErrorCode::InvalidArgument, "gd_minimize: eta must be positive");
  std::vector<Vector> traj;
  traj.reserve(iters + 1);
  traj.emplace_back(x0.begin(), x0.end());
  for (std::size_t k = 0; k < iters; ++k) {
    const Vector& x = traj.back();
    Vector next = axpy(-eta, grad(x), x);
    require(all_finite(next), ErrorCode::NonFinite, "gd_minimize: iterate diverged");
    traj.push_back(std::move(next));
  }
  return traj;
}

double cosine_annealing(double eta_min, double eta_max, double t_cur, double t_max) {
  return eta_min + 0.5 * (eta_max - eta_min) * (1.0 + std::cos(std::numbers::pi * t_cur / t_max));
}

double lr_at(const Schedule& s, std::size_t t) {
  switch (s.kind) {
    case ScheduleKind::Constant: return s.eta0;
    case ScheduleKind::Step:
      require(s.drop_epoch >= 1, ErrorCode::InvalidArgument, "step schedule: drop_epoch must be >= 1");
      return s.eta0 * std::pow(s.drop_factor, static_cast<double>(t / s.drop_epoch));
    case ScheduleKind::Exponential: return s.eta0 * std::exp(-s.lambda * static_cast<double>(t));
    case ScheduleKind::CosineWarmRestarts: {
      require(s.t0 >= 1 && s.t_mult >= 1, ErrorCode::InvalidArgument, "warm restarts: need T0 >= 1 and T_mult >= 1");
      require(s.eta_min <= s.eta_max, ErrorCode::InvalidArgument, "warm restarts: need eta_min <= eta_max");
      std::size_t period = s.t0;
      std::size_t t_cur = t;
      while (t_cur >= period) {
        t_cur -= period;
        period *= s.t_mult;
      }
      return cosine_annealing(s.eta_min, s.eta_max, static_cast<double>(t_cur), static_cast<double>(period));
    }
  }
  return s.eta0;
}

Vector clip_by_norm(std::span<const double> g, double threshold) {
  require(threshold > 0.0, ErrorCode::InvalidArgument, "clip_by_norm: threshold must be positive");
  if (g.empty()) return {};
  const double n = norm(g);
  if (n <= threshold) return Vector(g.begin(), g.end());
  return scale(g, threshold / n);
}

MinimizeResult newton_minimize(const Gradient& grad, const Hessian& hess, std::span<const double> x0, double tol,
                               std::size_t max_iter) {
  MinimizeResult res;
  res.x.assign(x0.begin(), x0.end());
  res.trajectory.push_back(res.x);
  for (std::size_t k = 0; k < max_iter; ++k) {
    const Vector g = grad(res.x);
    Vector delta;
    try {
      delta = solve_direct(hess(res.x), scale(g, -1.0), DirectMethod::Lu);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Singular) fail(ErrorCode::SingularHessian, "newton_minimize: singular Hessian");
      throw;
    }
    if (norm_inf(delta) < tol) {
      res.x = axpy(1.0, delta, res.x);
      res.converged = true;
      return res;
    }
    res.x = axpy(1.0, delta, res.x);
    require(all_finite(res.x), ErrorCode::NonFinite, "newton_minimize: iterate diverged");
    res.trajectory.push_back(res.x);
    res.iterations = k + 1;
  }
  fail(ErrorCode::MaxIterations, "newton_minimize: no convergence within max_iter");
}

namespace {

constexpr double kArmijo = 1e-4;
// Updates are skipped unless y^T s exceeds this fraction of |y| |s|.
constexpr double kCurvatureGuard = std::numeric_limits<double>::epsilon();

// Backtracking line search with sufficient decrease; returns the accepted step length.
double backtrack(const Objective& f, std::span<const double> x, double fx, std::span<const double> g,
                 std::span<const double> p) {
  const double slope = dot(g, p);
  double alpha = 1.0;
  for (int k = 0; k < 60; ++k) {
    const Vector trial = axpy(alpha, p, x);
    const double ft = f(trial);
    if (std::isfinite(ft) && ft <= fx + kArmijo * alpha * slope) return alpha;
    alpha *= 0.5;
  }
  fail(ErrorCode::LineSearchFailure, "line search: no sufficient decrease");
}

}  // namespace

MinimizeResult bfgs_minimize(const Objective& f, const Gradient& grad, std::span<const double> x0, double tol,
                             std::size_t max_iter, const BfgsObserver& observe) {
  const std::size_t n = x0.size();
  require(n > 0, ErrorCode::EmptyInput, "bfgs: empty initial point");
  MinimizeResult res;
  res.x.assign(x0.begin(), x0.end());
  res.trajectory.push_back(res.x);
  Matrix h = Matrix::identity(n);
  double fx = f(res.x);
  Vector g = grad(res.x);
  for (std::size_t k = 0; k < max_iter; ++k) {
    if (norm_inf(g) < tol) {
      res.converged = true;
      res.f = fx;
      return res;
    }
    Vector p = scale(matvec(h, g), -1.0);
    if (dot(p, g) >= 0.0) {  // lost descent; restart from steepest descent
      h = Matrix::identity(n);
      p = scale(g, -1.0);
    }
    const double alpha = backtrack(f, res.x, fx, g, p);
    const Vector s = scale(p, alpha);
    Vector x_new = axpy(1.0, s, res.x);
    const Vector g_new = grad(x_new);
    const Vector y = sub(g_new, g);
    const double ys = dot(y, s);
    if (ys > kCurvatureGuard * norm(y) * norm(s)) {
      if (k == 0) h = ew_binary(h, ys / dot(y, y), BinaryOp::Mul);  // scale H0 before the first update
      const double rho = 1.0 / ys;
      const Vector hy = matvec(h, y);
      const double yhy = dot(y, hy);
      // H+ = H - rho (s (Hy)^T + (Hy) s^T) + (rho^2 y^T H y + rho) s s^T
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          h(i, j) += -rho * (s[i] * hy[j] + hy[i] * s[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) h(i, j) = h(j, i) = 0.5 * (h(i, j) + h(j, i));
    }
    res.x = std::move(x_new);
    fx = f(res.x);
    g = g_new;
    res.trajectory.push_back(res.x);
    res.iterations = k + 1;
    if (observe) observe(h);
  }
  res.f = fx;
  if (norm_inf(g) < tol) {
    res.converged = true;
    return res;
  }
  fail(ErrorCode::MaxIterations, "bfgs: no convergence within max_iter");
}

MinimizeResult lbfgs_minimize(const Objective& f, const Gradient& grad, std::span<const double> x0,
                              std::size_t memory, double tol, std::size_t max_iter) {
  require(!x0.empty(), ErrorCode::EmptyInput, "lbfgs: empty initial point");
  require(memory >= 1, ErrorCode::InvalidArgument, "lbfgs: memory must be >= 1");
  struct Pair {
    Vector s, y;
    double rho;
  };
  std::deque<Pair> pairs;
  MinimizeResult res;
  res.x.assign(x0.begin(), x0.end());
  res.trajectory.push_back(res.x);
  double fx = f(res.x);
  Vector g = grad(res.x);
  for (std::size_t k = 0; k < max_iter; ++k) {
    if (norm_inf(g) < tol) {
      res.converged = true;
      res.f = fx;
      return res;
    }
    // Two-loop recursion for p = -H g.
    Vector q = g;
    std::vector<double> alphas(pairs.size());
    for (std::size_t i = pairs.size(); i-- > 0;) {
      alphas[i] = pairs[i].rho * dot(pairs[i].s, q);
      q = axpy(-alphas[i], pairs[i].y, q);
    }
    const double gamma = pairs.empty() ? 1.0 : dot(pairs.back().s, pairs.back().y) / dot(pairs.back().y, pairs.back().y);
    Vector r = scale(q, gamma);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double beta = pairs[i].rho * dot(pairs[i].y, r);
      r = axpy(alphas[i] - beta, pairs[i].s, r);
    }
    Vector p = scale(r, -1.0);
    if (dot(p, g) >= 0.0) {
      pairs.clear();
      p = scale(g, -1.0);
    }
    const double alpha = backtrack(f, res.x, fx, g, p);
    const Vector s = scale(p, alpha);
    Vector x_new = axpy(1.0, s, res.x);
    const Vector g_new = grad(x_new);
    const Vector y = sub(g_new, g);
    const double ys = dot(y, s);
    if (ys > kCurvatureGuard * norm(y) * norm(s)) {
      pairs.push_back({s, y, 1.0 / ys});
      if (pairs.size() > memory) pairs.pop_front();
    } else {
      pairs.clear();  // stale pairs describe the wrong curvature
    }
    res.x = std::move(x_new);
    fx = f(res.x);
    g = g_new;
    res.trajectory.push_back(res.x);
    res.iterations = k + 1;
  }
  res.f = fx;
  if (norm_inf(g) < tol) {
    res.converged = true;
    return res;
  }
  fail(ErrorCode::MaxIterations, "lbfgs: no convergence within max_iter");
}

MinimizeResult nelder_mead(const Objective& f, std::span<const double> x0, double tol, std::size_t max_iter) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  const std::size_t n = x0.size();
  require(n > 0, ErrorCode::EmptyInput, "nelder_mead: empty initial point");

  std::vector<Vector> pts(n + 1, Vector(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += x0[i] != 0.0 ? 0.05 * x0[i] : 0.00025;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);
  std::vector<std::size_t> order(n + 1);

  MinimizeResult res;
  res.trajectory.emplace_back(x0.begin(), x0.end());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<Vector> p2(n + 1);
    std::vector<double> f2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = std::move(pts[order[i]]);
      f2[i] = fv[order[i]];
    }
    pts = std::move(p2);
    fv = std::move(f2);
  };

  for (std::size_t k = 0;; ++k) {
    sort_simplex();
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) diameter = std::max(diameter, norm_inf(sub(pts[i], pts[0])));
    // Equal values alone can come from vertices straddling the minimum, so the simplex must also be small.
    if (fv[n] - fv[0] < tol && diameter <= std::sqrt(tol) * (1.0 + norm_inf(pts[0]))) {
      res.x = pts[0];
      res.f = fv[0];
      res.iterations = k;
      res.converged = true;
      return res;
    }
    if (k == max_iter) fail(ErrorCode::MaxIterations, "nelder_mead: simplex did not collapse within max_iter");

    Vector centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
    auto toward = [&](double coef) {  // centroid + coef * (centroid - worst)
      Vector x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + coef * (centroid[j] - pts[n][j]);
      return x;
    };

    Vector xr = toward(kReflect);
    const double fr = f(xr);
    if (fr < fv[0]) {
      Vector xe = toward(kReflect * kExpand);
      const double fe = f(xe);
      if (fe < fr) {
        pts[n] = std::move(xe);
        fv[n] = fe;
      } else {
        pts[n] = std::move(xr);
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      pts[n] = std::move(xr);
      fv[n] = fr;
    } else {
      // Outside contraction when the reflection improved on the worst point, inside otherwise.
      const bool outside = fr < fv[n];
      Vector xc = toward(outside ? kContract : -kContract);
      const double fc = f(xc);
      if (fc < (outside ? fr : fv[n])) {
        pts[n] = std::move(xc);
        fv[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[0][j] + kShrink * (pts[i][j] - pts[0][j]);
          fv[i] = f(pts[i]);
        }
      }
    }
    res.trajectory.push_back(pts[0]);
  }
}

Vector sgd_linreg(std::span<const double> xs, std::span<const double> ys, std::size_t batch, double eta,
                  std::size_t iters, std::mt19937_64& rng) {
  require(xs.size() == ys.size() && !xs.empty(), ErrorCode::ShapeMismatch, "sgd_linreg: xs and ys differ in length");
  require(batch >= 1 && batch <= xs.size(), ErrorCode::InvalidArgument, "sgd_linreg: need 1 <= batch <= n");
  require(eta > 0.0, ErrorCode::InvalidArgument, "sgd_linreg: eta must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector theta{normal(rng), normal(rng)};
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  for (std::size_t it = 0; it < iters; ++it) {
    double g0 = 0.0, g1 = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      const std::size_t i = pick(rng);
      const double err = theta[0] + theta[1] * xs[i] - ys[i];
      g0 += err;
      g1 += err * xs[i];
    }
    theta[0] -= eta * 2.0 / static_cast<double>(batch) * g0;
    theta[1] -= eta * 2.0 / static_cast<double>(batch) * g1;
    require(all_finite(theta), ErrorCode::NonFinite, "sgd_linreg: parameters diverged");
  }
  return theta;
}

Vector sgd_linreg(std::span<const double> xs, std::span<const double> ys, std::size_t batch, double eta,
                  std::size_t iters, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sgd_linreg(xs, ys, batch, eta, iters, rng);
}

}  // namespace desknum::opt
