#pragma once

#include <span>
#include <vector>

#include "desknum/ndcore.hpp"

namespace desknum::interp {

/// Knots closer than this are treated as duplicates.
inline constexpr double kKnotTol = 1e-12;

double lagrange_eval(std::span<const double> xs, std::span<const double> ys, double x);

/// Newton form p(x) = c0 + c1 (x - x0) + c2 (x - x0)(x - x1) + ...
class DividedDiffPoly {
 public:
  DividedDiffPoly(std::span<const double> xs, std::span<const double> ys);

  double operator()(double x) const;
  const Vector& knots() const noexcept { return xs_; }
  const Vector& coeffs() const noexcept { return coeffs_; }

 private:
  Vector xs_;
  Vector coeffs_;
};

/// Natural cubic spline, S''(x0) = S''(xn) = 0. Queries outside the knot range
/// extrapolate the nearest boundary cubic.
class CubicSpline {
 public:
  CubicSpline(std::span<const double> xs, std::span<const double> ys);

  double operator()(double x) const;
  double derivative(double x, int order) const;

  const Vector& knots() const noexcept { return xs_; }
  std::size_t segments() const noexcept { return a_.size(); }

  /// Derivative of the cubic on `segment` evaluated at x, without segment lookup.
  double segment_derivative(std::size_t segment, double x, int order) const;

 private:
  std::size_t locate(double x) const;

  Vector xs_;
  Vector a_, b_, c_, d_;
};

/// Piecewise linear interpolation, clamped to the end values outside the knot range.
double linear_interp(std::span<const double> xs, std::span<const double> ys, double x);

}  // namespace desknum::interp
