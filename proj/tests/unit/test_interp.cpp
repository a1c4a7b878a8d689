#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "desknum/interp.hpp"
#include "desknum/lindecomp.hpp"

using namespace desknum;
namespace ip = desknum::interp;

TEST(Lagrange, Fixtures) {
  const Vector xs{0, 1, 2}, ys{1, 3, 2};
  EXPECT_NEAR(ip::lagrange_eval(xs, ys, 1.5), 2.875, 1e-14);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ip::lagrange_eval(xs, ys, xs[i]), ys[i]);
  EXPECT_EQ(ip::lagrange_eval(Vector{4}, Vector{-2}, 100.0), -2.0);
  EXPECT_THROW(ip::lagrange_eval(Vector{1, 1}, Vector{0, 1}, 0.5), Error);
}

TEST(Lagrange, VandermondeOracle) {
  // Quadratic through the three knots, solved directly.
  const Vector c = solve_direct(Matrix{{1, 0, 0}, {1, 1, 1}, {1, 2, 4}}, Vector{1, 3, 2}, DirectMethod::Lu);
  EXPECT_NEAR(c[0] + c[1] * 1.5 + c[2] * 2.25, 2.875, 1e-12);
}

TEST(NewtonDD, Fixtures) {
  const ip::DividedDiffPoly p(Vector{0, 1, 2}, Vector{1, 3, 2});
  EXPECT_NEAR(p(1.5), 2.875, 1e-14);
  EXPECT_EQ(p.coeffs()[0], 1.0);
  const ip::DividedDiffPoly line(Vector{1, 3}, Vector{4, 10});
  EXPECT_EQ(line(2.0), 7.0);
  EXPECT_THROW(ip::DividedDiffPoly(Vector{0, 1, 1e-13 + 1}, Vector{1, 2, 3}), Error);
}

TEST(NewtonDD, AgreesWithLagrange) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_int_distribution<int> count(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = count(rng);
    Vector xs, ys;
    while (static_cast<int>(xs.size()) < n) {
      const double x = u(rng);
      bool ok = true;
      for (double k : xs) ok = ok && std::abs(k - x) > 0.2;
      if (!ok) continue;
      xs.push_back(x);
      ys.push_back(u(rng));
    }
    const double q = u(rng);
    const ip::DividedDiffPoly p(xs, ys);
    const double l = ip::lagrange_eval(xs, ys, q);
    EXPECT_NEAR(p(q), l, 1e-9 * std::max(1.0, std::abs(l))) << trial;
  }
}

TEST(NewtonDD, ReproducesPolynomials) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int d = 0; d <= 6; ++d) {
    Vector coef(d + 1);
    for (auto& c : coef) c = u(rng);
    auto poly = [&](double x) {
      double s = 0.0;
      for (int k = d; k >= 0; --k) s = s * x + coef[k];
      return s;
    };
    Vector xs, ys;
    for (int i = 0; i <= d; ++i) {
      xs.push_back(-2.0 + 4.0 * i / std::max(d, 1));
      ys.push_back(poly(xs.back()));
    }
    const ip::DividedDiffPoly p(xs, ys);
    for (int i = 0; i <= 50; ++i) {
      const double x = d == 0 ? xs[0] : -2.0 + 4.0 * i / 50.0;
      EXPECT_LT(std::abs(p(x) - poly(x)), 1e-8);
      EXPECT_LT(std::abs(ip::lagrange_eval(xs, ys, x) - poly(x)), 1e-8);
    }
  }
}

TEST(Spline, KnotsLinesAndSine) {
  const Vector xs{0, 0.5, 1.7, 2.0, 3.3}, ys{1, -1, 0.5, 2, 0};
  const ip::CubicSpline s(xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(s(xs[i]), ys[i], 1e-12);

  Vector ly;
  for (double x : xs) ly.push_back(2 * x - 1);
  const ip::CubicSpline line(xs, ly);
  for (double x = -0.5; x <= 4.0; x += 0.01) EXPECT_NEAR(line(x), 2 * x - 1, 1e-10);

  Vector sx, sy;
  for (int i = 0; i < 9; ++i) {
    sx.push_back(std::numbers::pi * i / 8);
    sy.push_back(std::sin(sx.back()));
  }
  const ip::CubicSpline sine(sx, sy);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = std::numbers::pi * (i + 0.5) / 100;
    worst = std::max(worst, std::abs(sine(x) - std::sin(x)));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Spline, SecondDerivativeContinuity) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector xs{0.0}, ys{u(rng)};
    for (int i = 1; i < 8; ++i) {
      xs.push_back(xs.back() + 0.2 + std::abs(u(rng)));
      ys.push_back(u(rng));
    }
    const ip::CubicSpline s(xs, ys);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      EXPECT_LT(std::abs(s.segment_derivative(i - 1, xs[i], 2) - s.segment_derivative(i, xs[i], 2)), 1e-9);
      EXPECT_LT(std::abs(s.segment_derivative(i - 1, xs[i], 1) - s.segment_derivative(i, xs[i], 1)), 1e-9);
      EXPECT_LT(std::abs(s.segment_derivative(i - 1, xs[i], 0) - s.segment_derivative(i, xs[i], 0)), 1e-9);
    }
    EXPECT_LT(std::abs(s.derivative(xs.front(), 2)), 1e-9);
    EXPECT_LT(std::abs(s.derivative(xs.back(), 2)), 1e-9);
  }
}

TEST(Spline, Errors) {
  EXPECT_THROW(ip::CubicSpline(Vector{0, 2, 1}, Vector{0, 1, 2}), Error);
  EXPECT_THROW(ip::CubicSpline(Vector{0}, Vector{0}), Error);
  EXPECT_THROW(ip::CubicSpline(Vector{0, 1}, Vector{0}), Error);
}

TEST(Linear, FixturesAndClamping) {
  const Vector xs{0, 1, 2, 3}, ys{1, 2, 0, 3};
  EXPECT_EQ(ip::linear_interp(xs, ys, 0.5), 1.5);
  EXPECT_EQ(ip::linear_interp(xs, ys, 2.5), 1.5);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ip::linear_interp(xs, ys, xs[i]), ys[i]);
  EXPECT_EQ(ip::linear_interp(xs, ys, -4.0), 1.0);
  EXPECT_EQ(ip::linear_interp(xs, ys, 9.0), 3.0);
  double prev = ip::linear_interp(xs, ys, 0.0);
  for (double x = 0.01; x <= 1.0; x += 0.01) {
    const double v = ip::linear_interp(xs, ys, x);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_THROW(ip::linear_interp(Vector{0, 2, 1}, Vector{0, 1, 2}, 0.5), Error);
}
