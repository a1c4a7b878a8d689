#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "desknum/lindecomp.hpp"
#include "desknum/optimize.hpp"

using namespace desknum;
namespace op = desknum::opt;

namespace {

double quad(std::span<const double> x) { return x[0] * x[0] + 4 * x[0] + 4; }
Vector quad_grad(std::span<const double> x) { return {2 * x[0] + 4}; }

double rosen(std::span<const double> x) {
  return (1 - x[0]) * (1 - x[0]) + 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]);
}
Vector rosen_grad(std::span<const double> x) {
  return {-2 * (1 - x[0]) - 400 * x[0] * (x[1] - x[0] * x[0]), 200 * (x[1] - x[0] * x[0])};
}

}  // namespace

TEST(GradientDescent, Fixtures) {
  const auto t = op::gd_minimize([](std::span<const double> x) { return Vector{2 * x[0]}; }, Vector{10}, 0.1, 3);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0][0], 10.0);
  EXPECT_NEAR(t[1][0], 8.0, 1e-15);
  const auto still = op::gd_minimize(quad_grad, Vector{-2}, 0.1, 5);
  for (const auto& x : still) EXPECT_EQ(x[0], -2.0);
}

TEST(GradientDescent, GeometricContraction) {
  const auto t = op::gd_minimize(quad_grad, Vector{10}, 0.1, 50);
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(std::abs(t[k][0] + 2), 12 * std::pow(0.8, k), 1e-9);
}

TEST(Steps, MomentumWithoutDecayIsGd) {
  op::OptState s;
  op::OptConfig cfg;
  cfg.beta = 0.0;
  cfg.eta = 0.1;
  const Vector th = op::optimizer_step(op::StepKind::Momentum, Vector{1.0, -2.0}, Vector{0.5, 3.0}, s, cfg);
  EXPECT_NEAR(th[0], 1.0 - 0.05, 1e-15);
  EXPECT_NEAR(th[1], -2.0 - 0.3, 1e-15);
}

TEST(Steps, AdamFirstStepIsSignStep) {
  for (double g : {0.01, 3.0, -250.0}) {
    for (auto [b1, b2] : {std::pair{0.9, 0.999}, {0.5, 0.9}, {0.0, 0.5}}) {
      op::OptState s;
      op::OptConfig cfg;
      cfg.eta = 0.01;
      cfg.beta1 = b1;
      cfg.beta2 = b2;
      const Vector th = op::optimizer_step(op::StepKind::Adam, Vector{1.0}, Vector{g}, s, cfg);
      EXPECT_NEAR(th[0] - 1.0, -0.01 * (g > 0 ? 1 : -1), 1e-6);
      EXPECT_NEAR(th[0] - 1.0, -0.01 * g / (std::abs(g) + cfg.eps), 1e-9);
    }
  }
}

TEST(Steps, AdagradShrinks) {
  op::OptState s;
  op::OptConfig cfg;
  cfg.eta = 0.1;
  const Vector a = op::optimizer_step(op::StepKind::Adagrad, Vector{0.0}, Vector{2.0}, s, cfg);
  const Vector b = op::optimizer_step(op::StepKind::Adagrad, a, Vector{2.0}, s, cfg);
  EXPECT_LT(std::abs(b[0] - a[0]), std::abs(a[0]));
}

TEST(Steps, MonotoneDescentOnQuadratic) {
  struct Case {
    op::StepKind kind;
    double beta;
    double decay;
  };
  // Momentum uses beta = 0.3: with beta = 0.9 the heavy ball overshoots the minimum.
  for (const Case c : {Case{op::StepKind::Momentum, 0.3, 0.0}, Case{op::StepKind::Adagrad, 0.9, 0.0},
                       Case{op::StepKind::RmsProp, 0.9, 0.0}, Case{op::StepKind::Adam, 0.9, 0.0},
                       Case{op::StepKind::AdamW, 0.9, 0.01}}) {
    for (double eta : {0.1, 0.05, 0.01}) {
      op::OptState s;
      op::OptConfig cfg;
      cfg.eta = eta;
      cfg.beta = c.beta;
      cfg.weight_decay = c.decay;
      Vector x{10.0};
      double f = quad(x);
      for (int k = 0; k < 50; ++k) {
        x = op::optimizer_step(c.kind, x, quad_grad(x), s, cfg);
        const double fn = quad(x);
        EXPECT_LT(fn, f) << static_cast<int>(c.kind) << " eta " << eta << " step " << k;
        f = fn;
      }
    }
  }
}

TEST(Steps, ShapeMismatch) {
  op::OptState s;
  EXPECT_THROW(op::optimizer_step(op::StepKind::Adam, Vector{1, 2}, Vector{1}, s, {}), Error);
}

TEST(Schedules, Fixtures) {
  op::Schedule step{op::ScheduleKind::Step};
  step.eta0 = 0.1;
  step.drop_factor = 0.5;
  step.drop_epoch = 10;
  EXPECT_EQ(op::lr_at(step, 9), 0.1);
  EXPECT_EQ(op::lr_at(step, 10), 0.05);
  for (std::size_t t = 1; t < 100; ++t) EXPECT_LE(op::lr_at(step, t), op::lr_at(step, t - 1));
  EXPECT_EQ(op::cosine_annealing(0.001, 0.1, 0, 10), 0.1);
  EXPECT_NEAR(op::cosine_annealing(0.001, 0.1, 10, 10), 0.001, 1e-15);
  op::Schedule expo{op::ScheduleKind::Exponential};
  expo.lambda = 0.0;
  EXPECT_EQ(op::lr_at(expo, 37), expo.eta0);

  op::Schedule warm{op::ScheduleKind::CosineWarmRestarts};
  warm.eta_min = 0.001;
  warm.eta_max = 0.1;
  warm.t0 = 10;
  warm.t_mult = 2;
  EXPECT_EQ(op::lr_at(warm, 0), 0.1);
  EXPECT_EQ(op::lr_at(warm, 10), 0.1);  // first restart
  EXPECT_EQ(op::lr_at(warm, 30), 0.1);  // second period lasts 20 epochs
  EXPECT_NEAR(op::lr_at(warm, 20), op::cosine_annealing(0.001, 0.1, 10, 20), 1e-15);
  for (std::size_t t = 0; t < 200; ++t) {
    const double lr = op::lr_at(warm, t);
    EXPECT_GE(lr, 0.001);
    EXPECT_LE(lr, 0.1);
  }
}

TEST(Clip, Fixtures) {
  const Vector c = op::clip_by_norm(Vector{0.5, 0.7, 1.2}, 1.0);
  EXPECT_NEAR(norm(c), 1.0, 1e-12);
  EXPECT_NEAR(c[0], 0.5 / std::sqrt(2.18), 1e-15);
  EXPECT_NEAR(c[1], 0.7 / std::sqrt(2.18), 1e-15);
  EXPECT_NEAR(c[2], 1.2 / std::sqrt(2.18), 1e-15);
  EXPECT_EQ(op::clip_by_norm(c, 1.0), c);
  EXPECT_EQ(op::clip_by_norm(Vector{0.1, 0.2}, 1.0), (Vector{0.1, 0.2}));
  EXPECT_EQ(op::clip_by_norm(Vector{0, 0}, 1.0), (Vector{0, 0}));
  const Vector twice = op::clip_by_norm(op::clip_by_norm(Vector{3, 4}, 2.0), 2.0);
  EXPECT_NEAR(twice[0], 1.2, 1e-15);
  EXPECT_NEAR(twice[1], 1.6, 1e-15);
}

TEST(NewtonMinimize, OneStep) {
  const op::Hessian h1 = [](std::span<const double>) { return Matrix{{2}}; };
  const op::MinimizeResult r = op::newton_minimize(quad_grad, h1, Vector{0});
  EXPECT_EQ(r.trajectory[1][0], -2.0);
  EXPECT_EQ(r.x[0], -2.0);
  EXPECT_EQ(r.iterations, 1u);
  const op::MinimizeResult r2 = op::newton_minimize(
      [](std::span<const double> x) { return Vector{2 * (x[0] - 3), 2 * (x[1] - 2)}; },
      [](std::span<const double>) { return Matrix{{2, 0}, {0, 2}}; }, Vector{0, 0});
  EXPECT_EQ(r2.trajectory[1], (Vector{3, 2}));
  EXPECT_EQ(op::newton_minimize(quad_grad, h1, Vector{-2}).iterations, 0u);
  try {
    op::newton_minimize(quad_grad, [](std::span<const double>) { return Matrix{{0}}; }, Vector{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularHessian);
  }
}

TEST(QuasiNewton, QuadraticAndRosenbrock) {
  const op::MinimizeResult b = op::bfgs_minimize(quad, quad_grad, Vector{10});
  EXPECT_NEAR(b.x[0], -2.0, 1e-6);
  EXPECT_TRUE(b.converged);
  const op::MinimizeResult l = op::lbfgs_minimize(quad, quad_grad, Vector{10});
  EXPECT_NEAR(l.x[0], -2.0, 1e-6);
  const op::MinimizeResult r = op::bfgs_minimize(rosen, rosen_grad, Vector{-1.2, 1});
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
  const op::MinimizeResult lr = op::lbfgs_minimize(rosen, rosen_grad, Vector{-1.2, 1});
  EXPECT_NEAR(lr.x[0], 1.0, 1e-4);
  EXPECT_NEAR(lr.x[1], 1.0, 1e-4);
}

TEST(QuasiNewton, InverseHessianApproximation) {
  // f = x^T Q x / 2 so that the Hessian is Q itself.
  const Matrix q{{4, 1, 0.5}, {1, 3, 0.2}, {0.5, 0.2, 2}};
  const op::Objective f = [&](std::span<const double> x) { return 0.5 * dot(x, matvec(q, x)); };
  const op::Gradient g = [&](std::span<const double> x) { return matvec(q, x); };
  Matrix at_n5;
  std::size_t updates = 0;
  op::bfgs_minimize(f, g, Vector{1, -2, 3}, 1e-12, 500, [&](const Matrix& h) {
    ++updates;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(h(i, j), h(j, i), 1e-9);
    if (updates == 8) at_n5 = h;
  });
  ASSERT_GE(updates, 8u);
  // Armijo halving steps are not exact line searches, so H only approaches Q^-1 loosely.
  const Matrix hq = matmul(at_n5, q);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(hq(i, j), i == j ? 1.0 : 0.0, 2e-2);
}

TEST(NelderMead, Fixtures) {
  EXPECT_NEAR(op::nelder_mead(quad, Vector{10}).x[0], -2.0, 1e-3);
  EXPECT_NEAR(op::nelder_mead(quad, Vector{0}).x[0], -2.0, 1e-3);
  const Vector c{1.5, -0.5, 3.0};
  const op::MinimizeResult r = op::nelder_mead(
      [&](std::span<const double> x) {
        const Vector d = sub(x, c);
        return dot(d, d);
      },
      Vector{0, 0, 0});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r.x[i], c[i], 1e-3);
  const op::MinimizeResult flat = op::nelder_mead([](std::span<const double>) { return 1.0; }, Vector{0.3, 0.4});
  EXPECT_TRUE(flat.converged);
  EXPECT_EQ(flat.x, (Vector{0.3, 0.4}));
}

TEST(Sgd, RecoversLine) {
  std::mt19937_64 data_rng(42);
  std::uniform_real_distribution<double> ux(0.0, 2.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  Vector xs(100), ys(100);
  for (std::size_t i = 0; i < 100; ++i) {
    xs[i] = ux(data_rng);
    ys[i] = 2 * xs[i] + 1 + 0.1 * noise(data_rng);
  }
  const Vector th = op::sgd_linreg(xs, ys, 10, 0.1, 200, std::uint64_t{7});
  EXPECT_NEAR(th[0], 1.0, 0.2);
  EXPECT_NEAR(th[1], 2.0, 0.2);
  EXPECT_EQ(op::sgd_linreg(xs, ys, 10, 0.1, 200, std::uint64_t{7}), th);

  std::mt19937_64 a(3), b(3);
  std::normal_distribution<double> nd(0.0, 1.0);
  const Vector init{nd(b), nd(b)};
  EXPECT_EQ(op::sgd_linreg(xs, ys, 10, 0.1, 0, a), init);
}

TEST(Sgd, ExactTwoPointDataDescends) {
  const Vector xs{0, 1}, ys{1, 3};
  double prev = 1e300;
  for (std::size_t iters = 0; iters <= 200; iters += 20) {
    // Full batch with replacement sampling is still noisy; use a large batch to approximate the full gradient.
    const Vector th = op::sgd_linreg(xs, ys, 2, 0.05, iters, std::uint64_t{1});
    double loss = 0.0;
    for (std::size_t i = 0; i < 2; ++i) loss += std::pow(th[0] + th[1] * xs[i] - ys[i], 2);
    EXPECT_LE(loss, prev + 1e-12);
    prev = loss;
  }
  EXPECT_LT(prev, 1e-2);
}
