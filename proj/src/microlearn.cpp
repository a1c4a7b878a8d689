#include "desknum/microlearn.hpp"

#include <cmath>
#include <random>

namespace desknum::ml {

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double sigmoid_prime_from_output(double s) noexcept { return s * (1.0 - s); }

MlpParams mlp_init(const std::vector<std::size_t>& sizes, std::uint64_t seed) {
  require(sizes.size() >= 2, ErrorCode::BadArchitecture, "mlp_init: need at least an input and an output layer");
  for (std::size_t s : sizes) require(s >= 1, ErrorCode::BadArchitecture, "mlp_init: layer sizes must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  MlpParams p;
  p.sizes = sizes;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    Matrix w(sizes[l], sizes[l + 1]);
    for (double& v : w.data()) v = normal(rng);
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(sizes[l + 1], 0.0);
  }
  return p;
}

Matrix affine(const Matrix& x, const Matrix& w, std::span<const double> b) {
  require(x.cols() == w.rows(), ErrorCode::ShapeMismatch, "affine: input width does not match weight rows");
  require(b.size() == w.cols(), ErrorCode::ShapeMismatch, "affine: bias length does not match weight columns");
  Matrix z = matmul(x, w);
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) += b[j];
  return z;
}

namespace {

void check_params(const MlpParams& p) {
  require(p.weights.size() + 1 == p.sizes.size() && p.biases.size() == p.weights.size(), ErrorCode::BadArchitecture,
          "mlp: layer count mismatch");
  for (std::size_t l = 0; l < p.weights.size(); ++l)
    require(p.weights[l].rows() == p.sizes[l] && p.weights[l].cols() == p.sizes[l + 1] &&
                p.biases[l].size() == p.sizes[l + 1],
            ErrorCode::BadArchitecture, "mlp: parameter shapes do not follow the size chain");
}

}  // namespace

ForwardPass mlp_forward(const MlpParams& p, const Matrix& x) {
  check_params(p);
  require(x.cols() == p.sizes.front(), ErrorCode::ShapeMismatch, "mlp_forward: input width mismatch");
  ForwardPass pass;
  pass.activations.push_back(x);
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    Matrix a = affine(pass.activations.back(), p.weights[l], p.biases[l]);
    for (double& v : a.data()) v = sigmoid(v);
    pass.activations.push_back(std::move(a));
  }
  return pass;
}

double mlp_loss(const MlpParams& p, const Matrix& x, const Matrix& y) {
  const ForwardPass pass = mlp_forward(p, x);
  const Matrix& out = pass.output();
  require(out.rows() == y.rows() && out.cols() == y.cols(), ErrorCode::ShapeMismatch, "mlp_loss: target shape");
  double s = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double e = out.data()[i] - y.data()[i];
    s += e * e;
  }
  return s / static_cast<double>(out.size());
}

MlpGradients mlp_gradients(const MlpParams& p, const Matrix& x, const Matrix& y) {
  const ForwardPass pass = mlp_forward(p, x);
  const Matrix& out = pass.output();
  require(out.rows() == y.rows() && out.cols() == y.cols(), ErrorCode::ShapeMismatch, "mlp_gradients: target shape");
  const std::size_t layers = p.weights.size();
  MlpGradients g;
  g.weights.resize(layers);
  g.biases.resize(layers);

  Matrix delta(out.rows(), out.cols());
  const double scale = 2.0 / static_cast<double>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double a = out.data()[i];
    delta.data()[i] = scale * (a - y.data()[i]) * sigmoid_prime_from_output(a);
  }
  for (std::size_t l = layers; l-- > 0;) {
    const Matrix& a_prev = pass.activations[l];
    g.weights[l] = matmul(transpose(a_prev), delta);
    g.biases[l].assign(delta.cols(), 0.0);
    for (std::size_t i = 0; i < delta.rows(); ++i)
      for (std::size_t j = 0; j < delta.cols(); ++j) g.biases[l][j] += delta(i, j);
    if (l == 0) break;
    Matrix back = matmul(delta, transpose(p.weights[l]));
    for (std::size_t i = 0; i < back.size(); ++i) back.data()[i] *= sigmoid_prime_from_output(a_prev.data()[i]);
    delta = std::move(back);
  }
  return g;
}

TrainResult mlp_train(MlpParams p, const Matrix& x, const Matrix& y, double eta, std::size_t epochs) {
  require(eta > 0.0, ErrorCode::InvalidArgument, "mlp_train: eta must be positive");
  require(x.rows() == y.rows(), ErrorCode::ShapeMismatch, "mlp_train: inputs and targets differ in batch size");
  TrainResult res;
  res.loss_history.reserve(epochs);
  for (std::size_t e = 0; e < epochs; ++e) {
    res.loss_history.push_back(mlp_loss(p, x, y));
    const MlpGradients g = mlp_gradients(p, x, y);
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
      auto w = p.weights[l].data();
      const auto gw = g.weights[l].data();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= eta * gw[i];
      for (std::size_t j = 0; j < p.biases[l].size(); ++j) p.biases[l][j] -= eta * g.biases[l][j];
    }
  }
  res.params = std::move(p);
  return res;
}

Matrix batchnorm_forward(const Matrix& x, const BatchNormParams& p) {
  require(x.rows() >= 2, ErrorCode::TooSmallBatch, "batchnorm: batch must hold at least two rows");
  require(p.gamma.size() == x.cols() && p.beta.size() == x.cols(), ErrorCode::ShapeMismatch,
          "batchnorm: gamma and beta must match the feature count");
  require(p.eps > 0.0, ErrorCode::InvalidArgument, "batchnorm: eps must be positive");
  const auto n = static_cast<double>(x.rows());
  Matrix out(x.rows(), x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) var += (x(i, j) - mean) * (x(i, j) - mean);
    var /= n;
    const double inv_sd = 1.0 / std::sqrt(var + p.eps);
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, j) = p.gamma[j] * (x(i, j) - mean) * inv_sd + p.beta[j];
  }
  return out;
}

std::size_t argmax(std::span<const double> v) {
  require(!v.empty(), ErrorCode::EmptyInput, "argmax: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

Matrix q_learn(const GridEnv& env, double alpha, double gamma, double epsilon, std::size_t episodes,
               std::uint64_t seed) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorCode::InvalidArgument, "q_learn: alpha must lie in (0, 1]");
  require(gamma >= 0.0 && gamma < 1.0, ErrorCode::InvalidArgument, "q_learn: gamma must lie in [0, 1)");
  require(epsilon >= 0.0 && epsilon <= 1.0, ErrorCode::InvalidArgument, "q_learn: epsilon must lie in [0, 1]");
  require(env.goal < env.states(), ErrorCode::InvalidArgument, "q_learn: goal outside the state range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_state(0, env.states() - 1);
  std::uniform_int_distribution<std::size_t> pick_action(0, env.actions() - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Matrix q(env.states(), env.actions());
  for (std::size_t ep = 0; ep < episodes; ++ep) {
    std::size_t s = pick_state(rng);
    while (s != env.goal) {
      const std::size_t a = coin(rng) < epsilon ? pick_action(rng) : argmax(q.row_span(s));
      const std::size_t s2 = env.next(s);
      const double r = env.rewards(s, a);
      const auto row2 = q.row_span(s2);
      const double best_next = row2[argmax(row2)];
      q(s, a) += alpha * (r + gamma * best_next - q(s, a));
      s = s2;
    }
  }
  return q;
}

std::vector<std::size_t> greedy_rollout(const GridEnv& env, const Matrix& q, std::size_t start, std::size_t max_steps) {
  require(q.rows() == env.states() && q.cols() == env.actions(), ErrorCode::ShapeMismatch, "greedy_rollout: Q-table shape");
  require(start < env.states(), ErrorCode::InvalidArgument, "greedy_rollout: start outside the state range");
  std::vector<std::size_t> path{start};
  std::size_t s = start;
  for (std::size_t k = 0; k < max_steps && s != env.goal; ++k) {
    s = env.next(s);
    path.push_back(s);
  }
  return path;
}

}  // namespace desknum::ml
