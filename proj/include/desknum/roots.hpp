#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "desknum/ndcore.hpp"

namespace desknum::roots {

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<Vector(std::span<const double>)>;
using JacobianFn = std::function<Matrix(std::span<const double>)>;

struct RootReport {
  double root = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;  // |f(root)|
  bool converged = false;
};

struct SystemReport {
  Vector root;
  std::size_t iterations = 0;
  double residual = 0.0;  // ||F(root)||_inf
  bool converged = false;
};

/// Bisection iterates (a_k, b_k) are reported through this optional observer.
using BracketObserver = std::function<void(double a, double b)>;

inline constexpr double kScalarTol = 1e-5;
inline constexpr double kSystemTol = 1e-6;
inline constexpr std::size_t kMaxIter = 100;

RootReport bisection(const ScalarFn& f, double a, double b, double tol = kScalarTol, std::size_t max_iter = kMaxIter,
                     const BracketObserver& observe = {});

/// Newton iteration; without `df` a central difference with h = 1e-6 is used.
RootReport newton(const ScalarFn& f, const std::optional<ScalarFn>& df, double x0, double tol = kScalarTol,
                  std::size_t max_iter = kMaxIter, std::vector<double>* iterates = nullptr);

RootReport secant(const ScalarFn& f, double x0, double x1, double tol = kScalarTol, std::size_t max_iter = kMaxIter,
                  std::vector<double>* iterates = nullptr);

/// Iterates x <- g(x) until |g(x) - x| < tol. `residual` reports |g(x) - x|.
RootReport fixed_point(const ScalarFn& g, double x0, double tol = kScalarTol, std::size_t max_iter = kMaxIter);

/// Newton for F(x) = 0; without `jac` the Jacobian is built from forward differences (h = 1e-7).
SystemReport newton_system(const VectorFn& f, const std::optional<JacobianFn>& jac, std::span<const double> x0,
                           double tol = kSystemTol, std::size_t max_iter = kMaxIter);

/// Broyden's rank-one quasi-Newton method. An empty `b0` means the identity.
SystemReport broyden(const VectorFn& f, std::span<const double> x0, const Matrix& b0 = {}, double tol = kSystemTol,
                     std::size_t max_iter = kMaxIter);

/// Forward-difference Jacobian used by `newton_system`.
Matrix fd_jacobian(const VectorFn& f, std::span<const double> x, double h = 1e-7);

}  // namespace desknum::roots
