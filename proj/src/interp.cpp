#include "desknum/interp.hpp"

#include <algorithm>
#include <cmath>

namespace desknum::interp {

namespace {

void check_pairs(std::span<const double> xs, std::span<const double> ys) {
  require(xs.size() == ys.size(), ErrorCode::ShapeMismatch, "interp: xs and ys differ in length");
  require(!xs.empty(), ErrorCode::EmptyInput, "interp: no knots");
  require(all_finite(xs) && all_finite(ys), ErrorCode::NonFinite, "interp: knots must be finite");
}

void check_distinct(std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (std::abs(xs[i] - xs[j]) < kKnotTol) fail(ErrorCode::DuplicateKnots, "interp: duplicate knots");
}

void check_increasing(std::span<const double> xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] - xs[i - 1] >= kKnotTol)) fail(ErrorCode::UnsortedKnots, "interp: knots must be strictly increasing");
}

}  // namespace

double lagrange_eval(std::span<const double> xs, std::span<const double> ys, double x) {
  check_pairs(xs, ys);
  check_distinct(xs);
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double basis = 1.0;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) basis *= (x - xs[j]) / (xs[i] - xs[j]);
    total += ys[i] * basis;
  }
  return total;
}

DividedDiffPoly::DividedDiffPoly(std::span<const double> xs, std::span<const double> ys)
    : xs_(xs.begin(), xs.end()), coeffs_(ys.begin(), ys.end()) {
  check_pairs(xs, ys);
  check_distinct(xs);
  const std::size_t n = xs_.size();
  // In-place table: after pass k, coeffs_[i] holds f[x_{i-k}, ..., x_i] for i >= k.
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) coeffs_[i] = (coeffs_[i] - coeffs_[i - 1]) / (xs_[i] - xs_[i - k]);
}

double DividedDiffPoly::operator()(double x) const {
  double p = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) p = p * (x - xs_[k]) + coeffs_[k];
  return p;
}

CubicSpline::CubicSpline(std::span<const double> xs, std::span<const double> ys) : xs_(xs.begin(), xs.end()) {
  check_pairs(xs, ys);
  require(xs.size() >= 3, ErrorCode::TooFewPoints, "cubic spline needs at least 3 knots");
  check_increasing(xs);
  const std::size_t n = xs.size() - 1;  // number of segments
  Vector h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = xs[i + 1] - xs[i];

  // Tridiagonal system for second-derivative-related coefficients c_i (= S''/2), c_0 = c_n = 0.
  Vector c(n + 1, 0.0);
  if (n >= 2) {
    const std::size_t m = n - 1;
    Vector diag(m), upper(m), lower(m), rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = k + 1;
      lower[k] = h[i - 1];
      diag[k] = 2.0 * (h[i - 1] + h[i]);
      upper[k] = h[i];
      rhs[k] = 3.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
    }
    // Thomas algorithm; the system is strictly diagonally dominant.
    for (std::size_t k = 1; k < m; ++k) {
      const double w = lower[k] / diag[k - 1];
      diag[k] -= w * upper[k - 1];
      rhs[k] -= w * rhs[k - 1];
    }
    c[m] = rhs[m - 1] / diag[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) c[k + 1] = (rhs[k] - upper[k] * c[k + 2]) / diag[k];
  }

  a_.resize(n);
  b_.resize(n);
  c_.resize(n);
  d_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a_[i] = ys[i];
    c_[i] = c[i];
    d_[i] = (c[i + 1] - c[i]) / (3.0 * h[i]);
    b_[i] = (ys[i + 1] - ys[i]) / h[i] - h[i] * (2.0 * c[i] + c[i + 1]) / 3.0;
  }
}

std::size_t CubicSpline::locate(double x) const {
  if (x <= xs_.front()) return 0;
  if (x >= xs_.back()) return a_.size() - 1;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  return static_cast<std::size_t>(it - xs_.begin()) - 1;
}

double CubicSpline::segment_derivative(std::size_t i, double x, int order) const {
  const double t = x - xs_[i];
  switch (order) {
    case 0: return a_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
    case 1: return b_[i] + t * (2.0 * c_[i] + 3.0 * d_[i] * t);
    case 2: return 2.0 * c_[i] + 6.0 * d_[i] * t;
    case 3: return 6.0 * d_[i];
    default: return 0.0;
  }
}

double CubicSpline::operator()(double x) const { return segment_derivative(locate(x), x, 0); }

double CubicSpline::derivative(double x, int order) const { return segment_derivative(locate(x), x, order); }

double linear_interp(std::span<const double> xs, std::span<const double> ys, double x) {
  check_pairs(xs, ys);
  check_increasing(xs);
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  return ys[i] + (ys[i + 1] - ys[i]) * (x - xs[i]) / (xs[i + 1] - xs[i]);
}

}  // namespace desknum::interp
