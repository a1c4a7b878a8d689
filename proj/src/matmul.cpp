#include <algorithm>
#include <bit>

#include "desknum/ndcore.hpp"
#include "desknum/strassen.hpp"

namespace desknum {

namespace {

Matrix naive(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// Square n x n block in row-major storage; n is a power of two.
struct Block {
  std::size_t n;
  std::vector<double> v;

  explicit Block(std::size_t n_) : n(n_), v(n_ * n_, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return v[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

Block quadrant(const Block& m, std::size_t qi, std::size_t qj) {
  const std::size_t h = m.n / 2;
  Block out(h);
  for (std::size_t i = 0; i < h; ++i)
    std::copy_n(m.v.begin() + (qi * h + i) * m.n + qj * h, h, out.v.begin() + i * h);
  return out;
}

void place(Block& m, const Block& q, std::size_t qi, std::size_t qj) {
  const std::size_t h = q.n;
  for (std::size_t i = 0; i < h; ++i)
    std::copy_n(q.v.begin() + i * h, h, m.v.begin() + (qi * h + i) * m.n + qj * h);
}

Block add(const Block& x, const Block& y, double sign = 1.0) {
  Block out(x.n);
  for (std::size_t k = 0; k < x.v.size(); ++k) out.v[k] = x.v[k] + sign * y.v[k];
  return out;
}

Block multiply(const Block& a, const Block& b, std::size_t cutoff) {
  const std::size_t n = a.n;
  if (n <= cutoff || n == 1) {
    Block c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a.at(i, k);
        for (std::size_t j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }
  const Block a11 = quadrant(a, 0, 0), a12 = quadrant(a, 0, 1);
  const Block a21 = quadrant(a, 1, 0), a22 = quadrant(a, 1, 1);
  const Block b11 = quadrant(b, 0, 0), b12 = quadrant(b, 0, 1);
  const Block b21 = quadrant(b, 1, 0), b22 = quadrant(b, 1, 1);

  const Block m1 = multiply(add(a11, a22), add(b11, b22), cutoff);
  const Block m2 = multiply(add(a21, a22), b11, cutoff);
  const Block m3 = multiply(a11, add(b12, b22, -1.0), cutoff);
  const Block m4 = multiply(a22, add(b21, b11, -1.0), cutoff);
  const Block m5 = multiply(add(a11, a12), b22, cutoff);
  const Block m6 = multiply(add(a21, a11, -1.0), add(b11, b12), cutoff);
  const Block m7 = multiply(add(a12, a22, -1.0), add(b21, b22), cutoff);

  Block c(n);
  place(c, add(add(m1, m4), add(m7, m5, -1.0)), 0, 0);
  place(c, add(m3, m5), 0, 1);
  place(c, add(m2, m4), 1, 0);
  place(c, add(add(m1, m2, -1.0), add(m3, m6)), 1, 1);
  return c;
}

}  // namespace

Matrix strassen(const Matrix& a, const Matrix& b, std::size_t cutoff) {
  require(a.cols() == b.rows(), ErrorCode::ShapeMismatch, "matmul: a.cols != b.rows");
  const std::size_t n = std::bit_ceil(std::max({a.rows(), a.cols(), b.cols()}));
  Block pa(n), pb(n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) pa.at(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) pb.at(i, j) = b(i, j);

  const Block pc = multiply(pa, pb, std::max<std::size_t>(cutoff, 1));
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = pc.at(i, j);
  return c;
}

Matrix matmul(const Matrix& a, const Matrix& b, MatmulAlgo algo) {
  require(a.cols() == b.rows(), ErrorCode::ShapeMismatch, "matmul: a.cols != b.rows");
  if (algo == MatmulAlgo::Strassen) return strassen(a, b, kStrassenCutoff);
  return naive(a, b);
}

}  // namespace desknum
