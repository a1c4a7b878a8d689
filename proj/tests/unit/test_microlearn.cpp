#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "desknum/microlearn.hpp"

using namespace desknum;
namespace ml = desknum::ml;

namespace {

const Matrix kXorX{{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
const Matrix kXorY{{0}, {1}, {1}, {0}};

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (double& v : m.data()) v = u(rng);
  return m;
}

}  // namespace

TEST(Sigmoid, DerivativeIdentity) {
  for (double z = -8.0; z <= 8.0; z += 0.37) {
    const double s = ml::sigmoid(z);
    const double h = 1e-6;
    const double fd = (ml::sigmoid(z + h) - ml::sigmoid(z - h)) / (2 * h);
    EXPECT_NEAR(ml::sigmoid_prime_from_output(s), s * (1 - s), 1e-12);
    EXPECT_NEAR(fd, s * (1 - s), 1e-9);
  }
  EXPECT_EQ(ml::sigmoid(0.0), 0.5);
}

TEST(Mlp, InitShapesAndDeterminism) {
  const ml::MlpParams p = ml::mlp_init({3, 4, 1}, 0);
  ASSERT_EQ(p.weights.size(), 2u);
  EXPECT_EQ(p.weights[0].rows(), 3u);
  EXPECT_EQ(p.weights[0].cols(), 4u);
  EXPECT_EQ(p.weights[1].rows(), 4u);
  EXPECT_EQ(p.weights[1].cols(), 1u);
  EXPECT_EQ(p.biases[0], Vector(4, 0.0));
  EXPECT_EQ(p.biases[1], Vector(1, 0.0));
  const ml::MlpParams q = ml::mlp_init({3, 4, 1}, 0);
  EXPECT_EQ(p.weights, q.weights);
  EXPECT_NE(p.weights, ml::mlp_init({3, 4, 1}, 1).weights);
  try {
    ml::mlp_init({1}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadArchitecture);
  }
  EXPECT_THROW(ml::mlp_init({3, 0, 1}, 0), Error);
}

TEST(Mlp, ForwardFixtures) {
  ml::MlpParams p = ml::mlp_init({3, 4, 2}, 5);
  for (auto& w : p.weights)
    for (double& v : w.data()) v = 0.0;
  const ml::ForwardPass pass = ml::mlp_forward(p, kXorX);
  for (std::size_t l = 1; l < pass.activations.size(); ++l)
    for (double a : pass.activations[l].data()) EXPECT_EQ(a, 0.5);
  EXPECT_EQ(pass.output().rows(), 4u);
  EXPECT_EQ(pass.output().cols(), 2u);
  EXPECT_THROW(ml::mlp_forward(p, Matrix(2, 2)), Error);

  // Row-vector convention: [5, 6] . [[1, 2], [3, 4]]^T + [1, 1] = [18, 40].
  const Matrix z = ml::affine(Matrix{{5, 6}}, transpose(Matrix{{1, 2}, {3, 4}}), Vector{1, 1});
  EXPECT_EQ(z, (Matrix{{18, 40}}));

  ml::MlpParams single = ml::mlp_init({1, 1}, 0);
  double prev = 0.0;
  for (double w : {0.5, 1.0, 5.0, 20.0, 50.0}) {
    single.weights[0](0, 0) = w;
    const double a = ml::mlp_forward(single, Matrix{{1.0}}).output()(0, 0);
    EXPECT_GT(a, prev);
    EXPECT_LE(a, 1.0);
    prev = a;
  }
  EXPECT_NEAR(prev, 1.0, 1e-12);
}

TEST(Mlp, BackpropMatchesFiniteDifferences) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<std::size_t> sizes = trial % 2 ? std::vector<std::size_t>{2, 3, 1}
                                                     : std::vector<std::size_t>{3, 4, 2, 2};
    ml::MlpParams p = ml::mlp_init(sizes, trial);
    for (auto& b : p.biases)
      for (double& v : b) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    const Matrix x = random_matrix(5, sizes.front(), rng);
    Matrix y = random_matrix(5, sizes.back(), rng);
    for (double& v : y.data()) v = 0.5 + 0.5 * v;
    const ml::MlpGradients g = ml::mlp_gradients(p, x, y);
    const double h = 1e-6;
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
      for (std::size_t i = 0; i < p.weights[l].size(); ++i) {
        ml::MlpParams a = p, b = p;
        a.weights[l].data()[i] += h;
        b.weights[l].data()[i] -= h;
        const double fd = (ml::mlp_loss(a, x, y) - ml::mlp_loss(b, x, y)) / (2 * h);
        EXPECT_NEAR(g.weights[l].data()[i], fd, 1e-5 * std::max(1.0, std::abs(fd)));
      }
      for (std::size_t j = 0; j < p.biases[l].size(); ++j) {
        ml::MlpParams a = p, b = p;
        a.biases[l][j] += h;
        b.biases[l][j] -= h;
        const double fd = (ml::mlp_loss(a, x, y) - ml::mlp_loss(b, x, y)) / (2 * h);
        EXPECT_NEAR(g.biases[l][j], fd, 1e-5 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(Mlp, TrainsXor) {
  double best = 1.0;
  for (std::uint64_t seed : {0, 1, 2}) {
    const ml::TrainResult r = ml::mlp_train(ml::mlp_init({3, 4, 1}, seed), kXorX, kXorY, 0.5, 10000);
    ASSERT_EQ(r.loss_history.size(), 10000u);
    best = std::min(best, ml::mlp_loss(r.params, kXorX, kXorY));
    for (std::size_t start = 1000; start + 100 <= r.loss_history.size(); start += 100)
      EXPECT_LE(r.loss_history[start + 99], r.loss_history[start] + 1e-9);
  }
  EXPECT_LT(best, 0.05);
}

TEST(Mlp, ZeroEpochs) {
  const ml::MlpParams p = ml::mlp_init({3, 4, 1}, 9);
  const ml::TrainResult r = ml::mlp_train(p, kXorX, kXorY, 0.5, 0);
  EXPECT_TRUE(r.loss_history.empty());
  EXPECT_EQ(r.params.weights, p.weights);
  EXPECT_THROW(ml::mlp_train(p, kXorX, Matrix(3, 1), 0.5, 1), Error);
}

TEST(BatchNorm, Fixtures) {
  const Matrix x{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const ml::BatchNormParams unit{Vector(3, 1.0), Vector(3, 0.0), 1e-5};
  const Matrix y = ml::batchnorm_forward(x, unit);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(y(0, j), -1.2247, 1e-4);
    EXPECT_NEAR(y(1, j), 0.0, 1e-12);
    EXPECT_NEAR(y(2, j), 1.2247, 1e-4);
  }
  const Matrix b = ml::batchnorm_forward(x, {Vector(3, 0.0), Vector{1, 2, 3}, 1e-5});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(b(i, j), static_cast<double>(j + 1));
  const Matrix c = ml::batchnorm_forward(Matrix{{2, 1}, {2, 5}}, {Vector{3, 1}, Vector{0.5, 0}, 1e-5});
  EXPECT_NEAR(c(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(c(1, 0), 0.5, 1e-12);
  try {
    ml::batchnorm_forward(Matrix{{1, 2}}, {Vector(2, 1.0), Vector(2, 0.0), 1e-5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooSmallBatch);
  }
}

TEST(BatchNorm, StatisticsAndIdempotence) {
  std::mt19937_64 rng(2);
  const Matrix x = random_matrix(16, 4, rng);
  const ml::BatchNormParams unit{Vector(4, 1.0), Vector(4, 0.0), 1e-5};
  const Matrix y = ml::batchnorm_forward(x, unit);
  for (std::size_t j = 0; j < 4; ++j) {
    double m = 0.0, v = 0.0;
    for (std::size_t i = 0; i < 16; ++i) m += y(i, j) / 16;
    for (std::size_t i = 0; i < 16; ++i) v += (y(i, j) - m) * (y(i, j) - m) / 16;
    EXPECT_NEAR(m, 0.0, 1e-9);
    EXPECT_NEAR(v, 1.0, 1e-3);
  }
  const Matrix z = ml::batchnorm_forward(y, unit);
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(z.data()[i], y.data()[i], 1e-4);
}

TEST(QLearning, PaperSettings) {
  const ml::GridEnv env;
  const Matrix q = ml::q_learn(env, 0.1, 0.9, 0.1, 1000, 0);
  const double rmax = 10.0;
  for (double v : q.data()) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LE(std::abs(v), rmax / (1 - 0.9) + rmax);
  }
  const auto path = ml::greedy_rollout(env, q, 0, 5);
  EXPECT_EQ(path.back(), env.goal);
  EXPECT_LE(path.size() - 1, 5u);
  EXPECT_EQ(q, ml::q_learn(env, 0.1, 0.9, 0.1, 1000, 0));
}

TEST(QLearning, ZeroEpisodesAndImmediateRewards) {
  const ml::GridEnv env;
  EXPECT_EQ(ml::q_learn(env, 0.1, 0.9, 0.1, 0, 3), Matrix(5, 2));
  const Matrix q = ml::q_learn(env, 1.0, 0.0, 1.0, 500, 4);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t a = 0; a < 2; ++a) EXPECT_NEAR(q(s, a), env.rewards(s, a), 1e-9);
  EXPECT_EQ(q(4, 0), 0.0);  // the goal is terminal and never updated
  EXPECT_EQ(ml::argmax(Vector{1, 3, 3}), 1u);
  EXPECT_THROW(ml::q_learn(env, 0.0, 0.9, 0.1, 1, 0), Error);
}
