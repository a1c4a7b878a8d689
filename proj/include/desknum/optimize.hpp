#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "desknum/ndcore.hpp"

namespace desknum::opt {

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<Vector(std::span<const double>)>;
using Hessian = std::function<Matrix(std::span<const double>)>;

struct OptConfig {
  double eta = 0.01;
  double beta = 0.9;   // momentum / RMSprop decay
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;  // AdamW decoupled decay
};

/// Per-parameter accumulators. All vectors are sized to the parameter count
/// on the first step; `t` counts steps taken.
struct OptState {
  Vector velocity;
  Vector accum;    // Adagrad sum of squared gradients
  Vector sq_avg;   // RMSprop E[g^2]
  Vector m;        // Adam first moment
  Vector v;        // Adam raw second moment
  std::size_t t = 0;

  static OptState zeros(std::size_t n);
};

enum class StepKind { Momentum, Adagrad, RmsProp, Adam, AdamW };

/// Applies one update and returns the new parameters; `state` is advanced in place.
Vector optimizer_step(StepKind kind, std::span<const double> theta, std::span<const double> g, OptState& state,
                      const OptConfig& cfg);

/// Plain gradient descent. Returns the full trajectory, x0 first.
std::vector<Vector> gd_minimize(const Gradient& grad, std::span<const double> x0, double eta, std::size_t iters);

enum class ScheduleKind { Constant, Step, Exponential, CosineWarmRestarts };

struct Schedule {
  ScheduleKind kind = ScheduleKind::Constant;
  double eta0 = 0.1;
  double drop_factor = 0.5;
  std::size_t drop_epoch = 10;
  double lambda = 0.0;
  double eta_min = 0.0;
  double eta_max = 0.1;
  std::size_t t0 = 10;
  std::size_t t_mult = 2;
};

/// Learning rate at epoch t (t >= 0).
double lr_at(const Schedule& sched, std::size_t t);

/// eta_min + (eta_max - eta_min) (1 + cos(pi t_cur / t_max)) / 2.
double cosine_annealing(double eta_min, double eta_max, double t_cur, double t_max);

/// Rescales g to norm `threshold` when its L2 norm exceeds it.
Vector clip_by_norm(std::span<const double> g, double threshold);

struct MinimizeResult {
  Vector x;
  double f = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<Vector> trajectory;  // accepted iterates, x0 first
};

MinimizeResult newton_minimize(const Gradient& grad, const Hessian& hess, std::span<const double> x0,
                               double tol = 1e-6, std::size_t max_iter = 100);

/// Inverse-Hessian approximation observer, called after each accepted BFGS step.
using BfgsObserver = std::function<void(const Matrix& h_inv)>;

MinimizeResult bfgs_minimize(const Objective& f, const Gradient& grad, std::span<const double> x0, double tol = 1e-6,
                             std::size_t max_iter = 500, const BfgsObserver& observe = {});

MinimizeResult lbfgs_minimize(const Objective& f, const Gradient& grad, std::span<const double> x0,
                              std::size_t memory = 10, double tol = 1e-6, std::size_t max_iter = 500);

/// Stops when the vertex values differ by less than `tol` and every vertex lies
/// within sqrt(tol) (relative to the best point) of the best vertex.
MinimizeResult nelder_mead(const Objective& f, std::span<const double> x0, double tol = 1e-10,
                           std::size_t max_iter = 2000);

/// Fits y ~ theta[0] + theta[1] x by mini-batch SGD with replacement sampling.
/// `rng` is advanced; initial theta is drawn from it as two standard normals.
Vector sgd_linreg(std::span<const double> xs, std::span<const double> ys, std::size_t batch, double eta,
                  std::size_t iters, std::mt19937_64& rng);
Vector sgd_linreg(std::span<const double> xs, std::span<const double> ys, std::size_t batch, double eta,
                  std::size_t iters, std::uint64_t seed);

}  // namespace desknum::opt
