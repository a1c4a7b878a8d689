#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "desknum/ndcore.hpp"

namespace desknum::ml {

double sigmoid(double z) noexcept;
/// Derivative expressed through the activation: s (1 - s).
double sigmoid_prime_from_output(double s) noexcept;

/// Layer l maps sizes[l] inputs to sizes[l+1] outputs: z = a W_l + b_l.
struct MlpParams {
  std::vector<std::size_t> sizes;
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

/// Standard-normal weights from a seeded generator, zero biases.
MlpParams mlp_init(const std::vector<std::size_t>& sizes, std::uint64_t seed);

/// x W + b with b broadcast over rows (pre-activation).
Matrix affine(const Matrix& x, const Matrix& w, std::span<const double> b);

struct ForwardPass {
  std::vector<Matrix> activations;  // input first, output last
  const Matrix& output() const { return activations.back(); }
};

ForwardPass mlp_forward(const MlpParams& p, const Matrix& x);

/// mean((out - y)^2) over every output entry.
double mlp_loss(const MlpParams& p, const Matrix& x, const Matrix& y);

struct MlpGradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

/// Exact gradient of `mlp_loss` by backpropagation.
MlpGradients mlp_gradients(const MlpParams& p, const Matrix& x, const Matrix& y);

struct TrainResult {
  MlpParams params;
  Vector loss_history;  // loss before each epoch's update
};

/// Full-batch gradient descent on `mlp_loss`.
TrainResult mlp_train(MlpParams p, const Matrix& x, const Matrix& y, double eta, std::size_t epochs);

struct BatchNormParams {
  Vector gamma;
  Vector beta;
  double eps = 1e-5;
};

/// Normalizes each column with the batch mean and biased variance, then scales and shifts.
Matrix batchnorm_forward(const Matrix& x, const BatchNormParams& p);

/// Ring world: every action moves state s to (s + 1) mod n; episodes end at `goal`.
struct GridEnv {
  Matrix rewards{{-1, 0}, {0, 1}, {0, -1}, {-1, 1}, {10, -10}};
  std::size_t goal = 4;

  std::size_t states() const { return rewards.rows(); }
  std::size_t actions() const { return rewards.cols(); }
  std::size_t next(std::size_t s) const { return (s + 1) % states(); }
};

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> v);

/// Tabular epsilon-greedy Q-learning with random start states.
Matrix q_learn(const GridEnv& env, double alpha, double gamma, double epsilon, std::size_t episodes,
               std::uint64_t seed);

/// States visited by the greedy policy from `start`, stopping at the goal or after `max_steps` moves.
/// Every action leads to the same successor, so the path does not depend on `q` beyond validation.
std::vector<std::size_t> greedy_rollout(const GridEnv& env, const Matrix& q, std::size_t start, std::size_t max_steps);

}  // namespace desknum::ml
