#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "desknum/desknum.h"

namespace {

struct Owned {
  dn_matrix* m = nullptr;
  ~Owned() { dn_matrix_free(m); }
};

double x2m4(double x, void*) { return x * x - 4.0; }

double counted(double x, void* ctx) {
  ++*static_cast<int*>(ctx);
  return std::sin(x);
}

void circlepara(const double* x, size_t, double* out, void*) {
  out[0] = x[0] * x[0] + x[1] * x[1] - 1.0;
  out[1] = x[0] * x[0] - x[1];
}

double quad(const double* x, size_t, void*) { return x[0] * x[0] + 4 * x[0] + 4; }
void quad_g(const double* x, size_t, double* g, void*) { g[0] = 2 * x[0] + 4; }
void quad_h(const double*, size_t, double* h, void*) { h[0] = 2; }

void decay(double, const double* y, size_t, double* d, void*) { d[0] = -2.0 * y[0]; }

}  // namespace

TEST(CApi, StatusNamesMirrorErrors) {
  EXPECT_STREQ(dn_status_name(DN_OK), "Ok");
  EXPECT_STREQ(dn_status_name(DN_SINGULAR), "Singular");
  EXPECT_STREQ(dn_status_name(DN_UNSTABLE), "Unstable");
  EXPECT_STREQ(dn_status_name(DN_TOO_SMALL_BATCH), "TooSmallBatch");
}

TEST(CApi, MatrixLifecycle) {
  const double d[] = {1, 2, 3, 4};
  Owned a, c;
  ASSERT_EQ(dn_matrix_create(2, 2, d, &a.m), DN_OK);
  EXPECT_EQ(dn_matrix_rows(a.m), 2u);
  EXPECT_EQ(dn_matrix_cols(a.m), 2u);
  ASSERT_EQ(dn_matrix_copy(a.m, &c.m), DN_OK);
  EXPECT_EQ(std::memcmp(dn_matrix_data(c.m), d, sizeof d), 0);
  double v = 0;
  EXPECT_EQ(dn_matrix_get(a.m, 1, 0, &v), DN_OK);
  EXPECT_EQ(v, 3.0);
  EXPECT_EQ(dn_matrix_get(a.m, 2, 0, &v), DN_INVALID_ARGUMENT);
  dn_matrix_free(nullptr);
}

TEST(CApi, NonFiniteInputRejected) {
  const double d[] = {1, NAN};
  dn_matrix* m = nullptr;
  EXPECT_EQ(dn_matrix_create(1, 2, d, &m), DN_NON_FINITE);
  EXPECT_EQ(m, nullptr);
  EXPECT_NE(std::string(dn_last_error()).find("NonFinite"), std::string::npos);
}

TEST(CApi, NullArgumentsAreErrors) {
  EXPECT_EQ(dn_matrix_create(1, 1, nullptr, nullptr), DN_INVALID_ARGUMENT);
  double out = 0;
  EXPECT_EQ(dn_det(nullptr, &out), DN_INVALID_ARGUMENT);
  EXPECT_EQ(dn_bisection(nullptr, nullptr, 1, 3, 1e-5, 100, nullptr), DN_INVALID_ARGUMENT);
}

TEST(CApi, LinearAlgebraFixtures) {
  const double d[] = {1, 2, 3, 4};
  Owned a, inv, prod;
  ASSERT_EQ(dn_matrix_create(2, 2, d, &a.m), DN_OK);
  double det = 0;
  ASSERT_EQ(dn_det(a.m, &det), DN_OK);
  EXPECT_NEAR(det, -2.0, 1e-12);
  ASSERT_EQ(dn_inv(a.m, &inv.m), DN_OK);
  const double expect[] = {-2, 1, 1.5, -0.5};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(dn_matrix_data(inv.m)[i], expect[i], 1e-12);
  ASSERT_EQ(dn_matmul(a.m, a.m, DN_MATMUL_STRASSEN, &prod.m), DN_OK);
  EXPECT_EQ(dn_matrix_data(prod.m)[0], 7.0);
  const double b[] = {5, 6};
  for (dn_direct_method m : {DN_GAUSS, DN_LU, DN_QR, DN_INVERSE}) {
    double x[2];
    ASSERT_EQ(dn_solve(a.m, b, m, x), DN_OK);
    EXPECT_NEAR(x[0], -4.0, 1e-8);
    EXPECT_NEAR(x[1], 4.5, 1e-8);
  }
  const double s[] = {1, 2, 2, 4};
  Owned sing;
  ASSERT_EQ(dn_matrix_create(2, 2, s, &sing.m), DN_OK);
  double x[2];
  EXPECT_EQ(dn_solve(sing.m, b, DN_LU, x), DN_SINGULAR);
  EXPECT_EQ(dn_cholesky(a.m, &prod.m), DN_NOT_SPD);
}

TEST(CApi, EigAndIterative) {
  const double d[] = {4, 1, 1, 3};
  Owned a, vecs;
  ASSERT_EQ(dn_matrix_create(2, 2, d, &a.m), DN_OK);
  double vals[2];
  ASSERT_EQ(dn_eig(a.m, vals, &vecs.m), DN_OK);
  EXPECT_NEAR(vals[0], (7 + std::sqrt(5.0)) / 2, 1e-10);
  const double b[] = {1, 2};
  double x[2];
  dn_iter_report rep{};
  ASSERT_EQ(dn_solve_iterative(a.m, b, nullptr, DN_CG, 1e-10, 100, x, &rep), DN_OK);
  EXPECT_NEAR(x[0], 1.0 / 11, 1e-8);
  EXPECT_NEAR(x[1], 7.0 / 11, 1e-8);
  EXPECT_EQ(rep.converged, 1);
}

TEST(CApi, RootsThroughCallbacks) {
  dn_root_report r{};
  ASSERT_EQ(dn_bisection(x2m4, nullptr, 1, 3.5, 1e-9, 100, &r), DN_OK);
  EXPECT_NEAR(r.root, 2.0, 1e-8);
  ASSERT_EQ(dn_newton(x2m4, nullptr, nullptr, 3, 1e-10, 100, &r), DN_OK);
  EXPECT_NEAR(r.root, 2.0, 1e-8);
  EXPECT_EQ(dn_bisection(x2m4, nullptr, 3, 4, 1e-9, 100, &r), DN_NO_SIGN_CHANGE);
  const double x0[] = {0.5, 0.5};
  double root[2];
  ASSERT_EQ(dn_solve_system(DN_NEWTON_SYSTEM, circlepara, nullptr, x0, 2, 1e-10, 100, root, nullptr, nullptr), DN_OK);
  EXPECT_NEAR(root[1], (std::sqrt(5.0) - 1) / 2, 1e-8);
}

TEST(CApi, ContextPointerReachesCallback) {
  int calls = 0;
  double v = 0;
  ASSERT_EQ(dn_integrate(DN_SIMPSON, counted, &calls, 0, std::numbers::pi, 100, &v), DN_OK);
  EXPECT_NEAR(v, 2.0, 1e-7);
  EXPECT_EQ(calls, 101);
  EXPECT_EQ(dn_integrate(DN_SIMPSON, counted, &calls, 0, 1, 3, &v), DN_ODD_PARTITION);
}

TEST(CApi, InterpolationAndSpectral) {
  const double xs[] = {0, 1, 2, 3}, ys[] = {1, 2, 0, 4}, q[] = {1.5};
  double lag = 0, newt = 0;
  ASSERT_EQ(dn_interpolate(DN_INTERP_LAGRANGE, xs, ys, 4, q, 1, &lag), DN_OK);
  ASSERT_EQ(dn_interpolate(DN_INTERP_NEWTON, xs, ys, 4, q, 1, &newt), DN_OK);
  EXPECT_NEAR(lag, newt, 1e-12);
  const double re[] = {1, 2, 3, 4};
  double ore[4], oim[4];
  ASSERT_EQ(dn_fft(re, nullptr, 4, ore, oim), DN_OK);
  EXPECT_NEAR(ore[0], 10, 1e-12);
  EXPECT_NEAR(ore[1], -2, 1e-12);
  EXPECT_NEAR(oim[1], 2, 1e-12);
  EXPECT_EQ(dn_fft(re, nullptr, 3, ore, oim), DN_NOT_POWER_OF_TWO);
  const double f[] = {1, 2, 3}, g[] = {0, 1, 0.5};
  const double expect[] = {0, 1, 2.5, 4, 1.5};
  double c1[5], c2[5];
  ASSERT_EQ(dn_convolve(f, 3, g, 3, DN_CONVOLVE_DIRECT, c1), DN_OK);
  ASSERT_EQ(dn_convolve(f, 3, g, 3, DN_CONVOLVE_FFT, c2), DN_OK);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(c1[i], expect[i]);
    EXPECT_NEAR(c2[i], expect[i], 1e-12);
  }
}

TEST(CApi, Minimizers) {
  const double x0[] = {10};
  double x = 0;
  dn_minimize_report rep{};
  for (dn_minimizer m : {DN_MIN_NEWTON, DN_MIN_BFGS, DN_MIN_LBFGS, DN_MIN_NELDER_MEAD}) {
    Owned traj;
    ASSERT_EQ(dn_minimize(m, quad, quad_g, quad_h, nullptr, x0, 1, m == DN_MIN_NELDER_MEAD ? 1e-10 : 1e-8, 500, 5, &x,
                          &rep, &traj.m),
              DN_OK);
    EXPECT_NEAR(x, -2.0, 1e-3);
    EXPECT_EQ(dn_matrix_data(traj.m)[0], 10.0);
  }
  EXPECT_EQ(dn_minimize(DN_MIN_BFGS, quad, nullptr, nullptr, nullptr, x0, 1, 1e-8, 10, 5, &x, nullptr, nullptr),
            DN_INVALID_ARGUMENT);
}

TEST(CApi, OptimizerHandleMatchesPlainStep) {
  dn_optimizer* o = nullptr;
  dn_opt_config cfg = dn_opt_config_default();
  cfg.eta = 0.1;
  ASSERT_EQ(dn_optimizer_create(DN_STEP_SGD, &cfg, 1, &o), DN_OK);
  double th = 10, g = 24;
  ASSERT_EQ(dn_optimizer_step(o, &th, &g), DN_OK);
  EXPECT_NEAR(th, 7.6, 1e-15);
  dn_optimizer_free(o);
  ASSERT_EQ(dn_optimizer_create(DN_STEP_ADAM, &cfg, 1, &o), DN_OK);
  th = 1;
  g = 5;
  ASSERT_EQ(dn_optimizer_step(o, &th, &g), DN_OK);
  EXPECT_NEAR(th, 0.9, 1e-8);  // first Adam step has size eta
  dn_optimizer_free(o);
  dn_schedule s = dn_schedule_default();
  s.kind = DN_SCHED_STEP;
  double lr = 0;
  ASSERT_EQ(dn_lr_at(&s, 9, &lr), DN_OK);
  EXPECT_NEAR(lr, 0.1, 1e-15);
  ASSERT_EQ(dn_lr_at(&s, 10, &lr), DN_OK);
  EXPECT_NEAR(lr, 0.05, 1e-15);
}

TEST(CApi, DynamicsAndHeat) {
  const double y0[] = {1};
  Owned traj, heat;
  ASSERT_EQ(dn_ode_solve(DN_RK4, decay, nullptr, 0, y0, 1, 0.1, 1, &traj.m), DN_OK);
  ASSERT_EQ(dn_matrix_rows(traj.m), 11u);
  ASSERT_EQ(dn_matrix_cols(traj.m), 2u);
  EXPECT_NEAR(dn_matrix_data(traj.m)[21], std::exp(-2.0), 1e-5);
  ASSERT_EQ(dn_heat1d(0.01, 10, 100, 500, 1, nullptr, nullptr, &heat.m), DN_OK);
  EXPECT_EQ(dn_matrix_rows(heat.m), 100u);
  dn_matrix* bad = nullptr;
  EXPECT_EQ(dn_heat1d(0.2, 1, 100, 10, 1, nullptr, nullptr, &bad), DN_UNSTABLE);
  EXPECT_NE(std::string(dn_last_error()).find("unstable"), std::string::npos);
}

TEST(CApi, MicroLearning) {
  const size_t sizes[] = {3, 4, 1};
  dn_mlp* net = nullptr;
  ASSERT_EQ(dn_mlp_create(sizes, 3, 0, &net), DN_OK);
  const double xs[] = {0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1}, ys[] = {0, 1, 1, 0};
  Owned x, y, q;
  ASSERT_EQ(dn_matrix_create(4, 3, xs, &x.m), DN_OK);
  ASSERT_EQ(dn_matrix_create(4, 1, ys, &y.m), DN_OK);
  std::vector<double> hist(50);
  ASSERT_EQ(dn_mlp_train(net, x.m, y.m, 0.5, 50, hist.data()), DN_OK);
  double loss = 0;
  ASSERT_EQ(dn_mlp_loss(net, x.m, y.m, &loss), DN_OK);
  EXPECT_LT(loss, hist[0]);
  dn_mlp_free(net);
  const size_t bad[] = {3};
  EXPECT_EQ(dn_mlp_create(bad, 1, 0, &net), DN_BAD_ARCHITECTURE);

  ASSERT_EQ(dn_qlearn(0.1, 0.9, 0.1, 1000, 0, &q.m), DN_OK);
  size_t path[6], count = 0;
  ASSERT_EQ(dn_greedy_rollout(q.m, 0, 5, path, &count), DN_OK);
  EXPECT_EQ(path[count - 1], 4u);
}

TEST(CApi, LastErrorIsPerThreadAndClearedOnSuccess) {
  double v = 0;
  EXPECT_NE(dn_error_metrics(0, 1, &v, &v), DN_OK);
  EXPECT_STRNE(dn_last_error(), "");
  EXPECT_EQ(dn_error_metrics(1, 1, &v, &v), DN_OK);
  EXPECT_STREQ(dn_last_error(), "");
}
