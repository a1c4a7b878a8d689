#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "desknum/quadrature.hpp"

using namespace desknum;
namespace qd = desknum::quad;

namespace {
const qd::Fn sine = [](double x) { return std::sin(x); };
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST(FiniteDiff, Fixtures) {
  EXPECT_NEAR(qd::finite_diff(sine, kPi / 4), 0.70710678, 1e-8);
  // f(x, y) = x^2 + 3xy + y^2 at (1, 2): df/dx = 8, df/dy = 7.
  const qd::Fn fx = [](double x) { return x * x + 3 * x * 2 + 4.0; };
  const qd::Fn fy = [](double y) { return 1.0 + 3 * y + y * y; };
  EXPECT_NEAR(qd::finite_diff(fx, 1.0, 1e-5, qd::DiffScheme::Forward), 8.00001, 1e-4);
  EXPECT_NEAR(qd::finite_diff(fy, 2.0, 1e-5, qd::DiffScheme::Forward), 7.00001, 1e-4);
  for (auto s : {qd::DiffScheme::Forward, qd::DiffScheme::Backward, qd::DiffScheme::Central})
    EXPECT_EQ(qd::finite_diff([](double) { return 3.0; }, 0.4, 1e-3, s), 0.0);
}

TEST(FiniteDiff, CentralIsSecondOrder) {
  for (double h : {1e-3, 5e-4, 2.5e-4}) {
    const double e1 = std::abs(qd::finite_diff(sine, kPi / 4, h) - std::cos(kPi / 4));
    const double e2 = std::abs(qd::finite_diff(sine, kPi / 4, h / 2) - std::cos(kPi / 4));
    EXPECT_NEAR(e1 / e2, 4.0, 0.8) << h;
  }
}

TEST(Trapezoid, Fixtures) {
  EXPECT_NEAR(qd::trapezoid(sine, 0, kPi, 1000), 2.0, 2e-6);
  EXPECT_NEAR(qd::trapezoid([](double) { return 2.5; }, 1, 3, 7), 5.0, 1e-14);
  EXPECT_NEAR(qd::trapezoid([](double x) { return 3 * x - 1; }, 0, 2, 3), 4.0, 1e-14);
  EXPECT_THROW(qd::trapezoid(sine, 0, 1, 0), Error);
}

TEST(Trapezoid, SamplesAuc) {
  EXPECT_NEAR(qd::trapezoid_samples(Vector{0, 0.1, 0.4, 0.8, 1.0}, Vector{0, 0.4, 0.7, 0.9, 1.0}), 0.695, 1e-12);
  EXPECT_EQ(qd::trapezoid_samples(Vector{0, 2}, Vector{1, 3}), 4.0);
  EXPECT_EQ(qd::trapezoid_samples(Vector{0, 1, 2}, Vector{0, 0, 0}), 0.0);
  Vector xs, ys;
  for (int i = 0; i <= 64; ++i) {
    xs.push_back(kPi * i / 64);
    ys.push_back(std::sin(xs.back()));
  }
  EXPECT_NEAR(qd::trapezoid_samples(xs, ys), qd::trapezoid(sine, 0, kPi, 64), 1e-12);
  EXPECT_THROW(qd::trapezoid_samples(Vector{0, 1}, Vector{0}), Error);
  EXPECT_THROW(qd::trapezoid_samples(Vector{1, 0}, Vector{0, 1}), Error);
}

TEST(Simpson, Fixtures) {
  EXPECT_NEAR(qd::simpson(sine, 0, kPi, 1000), 2.0, 1e-10);
  EXPECT_NEAR(qd::simpson([](double x) { return x * x * x; }, 0, 2, 2), 4.0, 1e-12);
  EXPECT_NEAR(qd::simpson([](double x) { return x * x; }, 0, 3, 2), 9.0, 1e-12);
  try {
    qd::simpson(sine, 0, 1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddPartition);
  }
}

TEST(Richardson, ErrorRatios) {
  for (int n : {16, 32}) {
    const double t1 = std::abs(qd::trapezoid(sine, 0, kPi, n) - 2), t2 = std::abs(qd::trapezoid(sine, 0, kPi, 2 * n) - 2);
    EXPECT_NEAR(t1 / t2, 4.0, 0.6);
    const double s1 = std::abs(qd::simpson(sine, 0, kPi, n) - 2), s2 = std::abs(qd::simpson(sine, 0, kPi, 2 * n) - 2);
    EXPECT_NEAR(s1 / s2, 16.0, 2.4);
  }
}

TEST(GaussLegendre, Fixtures) {
  EXPECT_NEAR(qd::gauss_legendre([](double x) { return std::pow(x, 5); }, -1, 1, 3), 0.0, 1e-14);
  EXPECT_NEAR(qd::gauss_legendre([](double x) { return std::pow(x, 4); }, -1, 1, 3), 0.4, 1e-12);
  EXPECT_NEAR(qd::gauss_legendre(sine, 0, kPi, 8), 2.0, 1e-10);
  EXPECT_THROW(qd::gauss_rule(0), Error);
  EXPECT_THROW(qd::gauss_rule(65), Error);
}

TEST(GaussLegendre, ExactForMonomials) {
  for (int n = 1; n <= 20; ++n) {
    const qd::GaussRule& r = qd::gauss_rule(n);
    for (int i = 1; i < n; ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(qd::gauss_legendre([k](double x) { return std::pow(x, k); }, -1, 1, n), exact, 1e-12)
          << n << " " << k;
    }
  }
  EXPECT_EQ(&qd::gauss_rule(5), &qd::gauss_rule(5));
}
