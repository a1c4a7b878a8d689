#include "desknum/roots.hpp"

#include <cmath>

#include "desknum/lindecomp.hpp"

namespace desknum::roots {

// Iteration counts below record the number of updates larger than the
// tolerance; the final sub-tolerance update is applied but not counted.

namespace {

double finite_or_fail(double v, const char* what) {
  require(std::isfinite(v), ErrorCode::NonFinite, what);
  return v;
}

Vector solve_or(const Matrix& a, std::span<const double> b, ErrorCode code, const char* what) {
  try {
    return solve_direct(a, b, DirectMethod::Lu);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) fail(code, what);
    throw;
  }
}

void check_tol(double tol) { require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive"); }

}  // namespace

RootReport bisection(const ScalarFn& f, double a, double b, double tol, std::size_t max_iter,
                     const BracketObserver& observe) {
  check_tol(tol);
  require(a < b, ErrorCode::InvalidArgument, "bisection: need a < b");
  double fa = finite_or_fail(f(a), "bisection: f(a) not finite");
  const double fb = finite_or_fail(f(b), "bisection: f(b) not finite");
  if (fa * fb >= 0.0) fail(ErrorCode::NoSignChange, "bisection: f(a) and f(b) must have opposite signs");

  std::size_t k = 0;
  while ((b - a) / 2.0 > tol) {
    if (k == max_iter) fail(ErrorCode::MaxIterations, "bisection: interval did not shrink below tol");
    const double c = (a + b) / 2.0;
    const double fc = finite_or_fail(f(c), "bisection: f(c) not finite");
    ++k;
    if (fc == 0.0) return {c, k, 0.0, true};
    if (fa * fc < 0.0) {
      b = c;
    } else {
      a = c;
      fa = fc;
    }
    if (observe) observe(a, b);
  }
  const double root = (a + b) / 2.0;
  return {root, k, std::abs(f(root)), true};
}

RootReport newton(const ScalarFn& f, const std::optional<ScalarFn>& df, double x0, double tol, std::size_t max_iter,
                  std::vector<double>* iterates) {
  check_tol(tol);
  constexpr double h = 1e-6;
  auto deriv = [&](double x) { return df ? (*df)(x) : (f(x + h) - f(x - h)) / (2.0 * h); };
  double x = x0;
  if (iterates) iterates->push_back(x);
  for (std::size_t k = 0; k < max_iter; ++k) {
    const double d = deriv(x);
    if (!(std::abs(d) >= 1e-14)) fail(ErrorCode::ZeroDerivative, "newton: derivative vanished");
    const double x_new = finite_or_fail(x - f(x) / d, "newton: iterate not finite");
    if (iterates) iterates->push_back(x_new);
    if (std::abs(x_new - x) < tol) return {x_new, k, std::abs(f(x_new)), true};
    x = x_new;
  }
  fail(ErrorCode::MaxIterations, "newton: no convergence within max_iter");
}

RootReport secant(const ScalarFn& f, double x0, double x1, double tol, std::size_t max_iter,
                  std::vector<double>* iterates) {
  check_tol(tol);
  if (iterates) {
    iterates->push_back(x0);
    iterates->push_back(x1);
  }
  for (std::size_t k = 0; k < max_iter; ++k) {
    const double f0 = f(x0);
    const double f1 = f(x1);
    if (std::abs(f1 - f0) < tol) fail(ErrorCode::FlatSecant, "secant: successive function values too close");
    const double x_new = finite_or_fail(x1 - f1 * (x1 - x0) / (f1 - f0), "secant: iterate not finite");
    if (iterates) iterates->push_back(x_new);
    if (std::abs(x_new - x1) < tol) return {x_new, k, std::abs(f(x_new)), true};
    x0 = x1;
    x1 = x_new;
  }
  fail(ErrorCode::MaxIterations, "secant: no convergence within max_iter");
}

RootReport fixed_point(const ScalarFn& g, double x0, double tol, std::size_t max_iter) {
  check_tol(tol);
  double x = x0;
  for (std::size_t k = 0; k < max_iter; ++k) {
    const double x_new = g(x);
    if (!std::isfinite(x_new) || std::abs(x_new) > 1e12) fail(ErrorCode::NonFinite, "fixed_point: iteration diverged");
    if (std::abs(x_new - x) < tol) return {x_new, k, std::abs(g(x_new) - x_new), true};
    x = x_new;
  }
  fail(ErrorCode::MaxIterations, "fixed_point: no convergence within max_iter");
}

Matrix fd_jacobian(const VectorFn& f, std::span<const double> x, double h) {
  const Vector f0 = f(x);
  Matrix j(f0.size(), x.size());
  Vector xp(x.begin(), x.end());
  for (std::size_t c = 0; c < x.size(); ++c) {
    xp[c] = x[c] + h;
    const Vector f1 = f(xp);
    xp[c] = x[c];
    for (std::size_t r = 0; r < f0.size(); ++r) j(r, c) = (f1[r] - f0[r]) / h;
  }
  return j;
}

SystemReport newton_system(const VectorFn& f, const std::optional<JacobianFn>& jac, std::span<const double> x0,
                           double tol, std::size_t max_iter) {
  check_tol(tol);
  require(!x0.empty(), ErrorCode::EmptyInput, "newton_system: empty initial guess");
  Vector x(x0.begin(), x0.end());
  for (std::size_t k = 0; k < max_iter; ++k) {
    const Vector fx = f(x);
    require(fx.size() == x.size(), ErrorCode::ShapeMismatch, "newton_system: F must map R^n to R^n");
    require(all_finite(fx), ErrorCode::NonFinite, "newton_system: F not finite");
    const Matrix j = jac ? (*jac)(x) : fd_jacobian(f, x);
    const Vector delta = solve_or(j, scale(fx, -1.0), ErrorCode::SingularJacobian, "newton_system: singular Jacobian");
    x = axpy(1.0, delta, x);
    require(all_finite(x), ErrorCode::NonFinite, "newton_system: iterate not finite");
    if (norm(delta) < tol) return {x, k, norm_inf(f(x)), true};
  }
  fail(ErrorCode::MaxIterations, "newton_system: no convergence within max_iter");
}

SystemReport broyden(const VectorFn& f, std::span<const double> x0, const Matrix& b0, double tol,
                     std::size_t max_iter) {
  check_tol(tol);
  const std::size_t n = x0.size();
  require(n > 0, ErrorCode::EmptyInput, "broyden: empty initial guess");
  Matrix b = b0.empty() ? Matrix::identity(n) : b0;
  require(b.rows() == n && b.cols() == n, ErrorCode::ShapeMismatch, "broyden: B0 must be n x n");

  Vector x(x0.begin(), x0.end());
  Vector fx = f(x);
  require(fx.size() == n, ErrorCode::ShapeMismatch, "broyden: F must map R^n to R^n");
  for (std::size_t k = 0; k < max_iter; ++k) {
    const Vector s = solve_or(b, scale(fx, -1.0), ErrorCode::SingularApproximation, "broyden: singular B");
    const Vector x_new = axpy(1.0, s, x);
    const Vector f_new = f(x_new);
    require(all_finite(f_new), ErrorCode::NonFinite, "broyden: F not finite");
    const double ss = dot(s, s);
    if (ss > 0.0) {
      const Vector y = sub(f_new, fx);
      const Vector resid = sub(y, matvec(b, s));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) += resid[i] * s[j] / ss;
    }
    x = x_new;
    fx = f_new;
    if (std::sqrt(ss) < tol) return {x, k, norm_inf(fx), true};
  }
  fail(ErrorCode::MaxIterations, "broyden: no convergence within max_iter");
}

}  // namespace desknum::roots
