#include "desknum/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace desknum::quad {

double finite_diff(const Fn& f, double x, double h, DiffScheme scheme) {
  require(h > 0.0, ErrorCode::InvalidArgument, "finite_diff: step must be positive");
  switch (scheme) {
    case DiffScheme::Forward: return (f(x + h) - f(x)) / h;
    case DiffScheme::Backward: return (f(x) - f(x - h)) / h;
    case DiffScheme::Central: return (f(x + h) - f(x - h)) / (2.0 * h);
  }
  return 0.0;
}

double trapezoid(const Fn& f, double a, double b, int n) {
  require(n >= 1 && a < b, ErrorCode::BadPartition, "trapezoid: need n >= 1 and a < b");
  const double h = (b - a) / n;
  double inner = 0.0;
  for (int i = 1; i < n; ++i) inner += f(a + i * h);
  return h / 2.0 * (f(a) + 2.0 * inner + f(b));
}

double trapezoid_samples(std::span<const double> xs, std::span<const double> ys) {
  require(xs.size() == ys.size() && xs.size() >= 2, ErrorCode::ShapeMismatch,
          "trapezoid_samples: need equal lengths >= 2");
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    require(xs[i + 1] >= xs[i], ErrorCode::UnsortedKnots, "trapezoid_samples: xs must be nondecreasing");
    area += (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]) / 2.0;
  }
  return area;
}

double simpson(const Fn& f, double a, double b, int n) {
  require(n >= 2, ErrorCode::BadPartition, "simpson: need n >= 2");
  require(n % 2 == 0, ErrorCode::OddPartition, "simpson: n must be even");
  require(a < b, ErrorCode::BadPartition, "simpson: need a < b");
  const double h = (b - a) / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; ++i) (i % 2 ? odd : even) += f(a + i * h);
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

GaussRule build_rule(int n) {
  GaussRule rule{n, Vector(n), Vector(n)};
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Ascending order: negative nodes first.
    rule.nodes[i - 1] = -x;
    rule.nodes[n - i] = x;
    rule.weights[i - 1] = w;
    rule.weights[n - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

struct RuleCache {
  std::array<std::once_flag, kMaxGaussOrder + 1> once;
  std::array<std::unique_ptr<GaussRule>, kMaxGaussOrder + 1> rules;
};

RuleCache& cache() {
  static RuleCache c;
  return c;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  require(n >= 1 && n <= kMaxGaussOrder, ErrorCode::BadOrder, "gauss_legendre: order must be in [1, 64]");
  RuleCache& c = cache();
  std::call_once(c.once[n], [&] { c.rules[n] = std::make_unique<GaussRule>(build_rule(n)); });
  return *c.rules[n];
}

double gauss_legendre(const Fn& f, double a, double b, int n) {
  const GaussRule& rule = gauss_rule(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

}  // namespace desknum::quad
