// Real-spectrum eigensolver: Householder reduction to Hessenberg form followed
// by Wilkinson-shifted QR sweeps (Givens rotations) with deflation. Trailing
// 2x2 blocks are split analytically; a complex pair aborts with NoConvergence.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "desknum/lindecomp.hpp"

namespace desknum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Rotation {
  double c;
  double s;
};

// Rotation with [c s; -s c]^T [a; b] = [r; 0].
Rotation givens(double a, double b) {
  if (b == 0.0) return {1.0, 0.0};
  const double r = std::hypot(a, b);
  return {a / r, b / r};
}

// Left-multiplies rows p, p+1 by G^T on columns [c0, c1).
void rotate_rows(Matrix& h, std::size_t p, Rotation g, std::size_t c0, std::size_t c1) {
  for (std::size_t j = c0; j < c1; ++j) {
    const double x = h(p, j);
    const double y = h(p + 1, j);
    h(p, j) = g.c * x + g.s * y;
    h(p + 1, j) = -g.s * x + g.c * y;
  }
}

// Right-multiplies columns p, p+1 by G on rows [r0, r1).
void rotate_cols(Matrix& h, std::size_t p, Rotation g, std::size_t r0, std::size_t r1) {
  for (std::size_t i = r0; i < r1; ++i) {
    const double x = h(i, p);
    const double y = h(i, p + 1);
    h(i, p) = g.c * x + g.s * y;
    h(i, p + 1) = -g.s * x + g.c * y;
  }
}

void hessenberg(Matrix& h, Matrix& z) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    Vector v(n - k - 1);
    for (std::size_t i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
    const double alpha = norm(v);
    if (alpha == 0.0) continue;
    v[0] += (v[0] >= 0.0 ? 1.0 : -1.0) * alpha;
    const double beta = 2.0 / dot(v, v);
    // H <- P H P with P = I - beta v v^T acting on indices k+1..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      double proj = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) proj += v[i - k - 1] * h(i, j);
      proj *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= proj * v[i - k - 1];
    }
    for (Matrix* m : {&h, &z}) {
      for (std::size_t i = 0; i < n; ++i) {
        double proj = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) proj += (*m)(i, j) * v[j - k - 1];
        proj *= beta;
        for (std::size_t j = k + 1; j < n; ++j) (*m)(i, j) -= proj * v[j - k - 1];
      }
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Real eigenvalues of [[a b][c d]], or false for a complex pair. `scale` sets the rounding level.
bool eig2(double a, double b, double c, double d, double& l1, double& l2, double scale = 0.0) {
  const double half_tr = 0.5 * (a + d);
  double disc = 0.25 * (a - d) * (a - d) + b * c;
  if (disc < 0.0) {
    // A slightly negative discriminant at rounding level is a double root, not a complex pair.
    const double s = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), scale});
    if (disc < -64.0 * kEps * s * s) return false;
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  // Larger-magnitude root first, the smaller one from the determinant to avoid cancellation.
  l1 = half_tr + (half_tr >= 0.0 ? root : -root);
  const double detv = a * d - b * c;
  l2 = l1 != 0.0 ? detv / l1 : half_tr - root;
  return true;
}

// Reduces the 2x2 diagonal block at (p, p) to upper triangular by one rotation.
void split_block(Matrix& h, Matrix& z, std::size_t p) {
  const std::size_t n = h.rows();
  const double a = h(p, p), b = h(p, p + 1), c = h(p + 1, p), d = h(p + 1, p + 1);
  double l1 = 0.0, l2 = 0.0;
  if (!eig2(a, b, c, d, l1, l2, norm(h.data()))) fail(ErrorCode::NoConvergence, "eig: complex eigenvalue pair");
  // Eigenvector (x, y) of the block for l1; pick the better-conditioned of two forms.
  double x = b, y = l1 - a;
  if (std::hypot(l1 - d, c) > std::hypot(x, y)) {
    x = l1 - d;
    y = c;
  }
  if (x == 0.0 && y == 0.0) return;
  const Rotation g = givens(x, y);
  rotate_rows(h, p, g, 0, n);
  rotate_cols(h, p, g, 0, n);
  rotate_cols(z, p, g, 0, n);
  h(p + 1, p) = 0.0;
}

bool negligible(const Matrix& h, std::size_t k, double norm_h) {
  const double s = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
  return std::abs(h(k, k - 1)) <= kEps * (s == 0.0 ? norm_h : s);
}

// Drives H to upper triangular form, accumulating rotations into Z.
void schur(Matrix& h, Matrix& z) {
  const std::size_t n = h.rows();
  const double norm_h = std::max(norm(h.data()), std::numeric_limits<double>::min());
  std::size_t hi = n - 1;
  std::size_t stall = 0;
  const std::size_t max_stall = 60 * n;
  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0 && !negligible(h, lo, norm_h)) --lo;
    if (lo > 0) h(lo, lo - 1) = 0.0;
    if (lo == hi) {
      --hi;
      stall = 0;
      continue;
    }
    if (lo + 1 == hi) {
      split_block(h, z, lo);
      hi = lo == 0 ? 0 : lo - 1;
      stall = 0;
      continue;
    }
    if (++stall > max_stall) fail(ErrorCode::NoConvergence, "eig: QR iteration did not converge");

    double mu = h(hi, hi);
    double l1 = 0.0, l2 = 0.0;
    if (eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2))
      mu = std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi)) ? l1 : l2;
    if (stall % 11 == 10) mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));  // exceptional shift

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<Rotation> rots;
    rots.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      const Rotation g = givens(h(k, k), h(k + 1, k));
      rotate_rows(h, k, g, k, n);
      h(k + 1, k) = 0.0;
      rots.push_back(g);
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Rotation g = rots[k - lo];
      rotate_cols(h, k, g, 0, std::min(k + 2, hi) + 1);
      rotate_cols(z, k, g, 0, n);
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
  }
}

// Eigenvectors of upper-triangular T by back substitution.
Matrix triangular_eigvecs(const Matrix& t) {
  const std::size_t n = t.rows();
  const double small = kEps * std::max(norm(t.data()), 1.0);
  Matrix y(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    y(k, k) = 1.0;
    const double lambda = t(k, k);
    for (std::size_t ii = k; ii-- > 0;) {
      double s = 0.0;
      for (std::size_t j = ii + 1; j <= k; ++j) s += t(ii, j) * y(j, k);
      double denom = t(ii, ii) - lambda;
      if (std::abs(denom) < small) denom = small;
      y(ii, k) = -s / denom;
    }
  }
  return y;
}

bool symmetric(const Matrix& a) {
  const double scale = std::max(1.0, max_abs(a.data()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale) return false;
  return true;
}

}  // namespace

EigResult eig(const Matrix& a) {
  require(!a.empty() && a.is_square(), ErrorCode::ShapeMismatch, "eig: matrix must be square");
  const std::size_t n = a.rows();
  Matrix h = a;
  Matrix z = Matrix::identity(n);
  hessenberg(h, z);
  schur(h, z);

  // For symmetric input the Schur vectors are already eigenvectors.
  Matrix vecs = symmetric(a) ? z : matmul(z, triangular_eigvecs(h));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return h(i, i) > h(j, j); });

  EigResult out{Vector(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = h(src, src);
    Vector v = vecs.col_vector(src);
    const double nv = norm(v);
    for (double& t : v) t /= nv;
    out.vectors.set_col(c, v);
  }
  return out;
}

SvdResult svd(const Matrix& a) {
  require(!a.empty(), ErrorCode::EmptyInput, "svd of empty matrix");
  const bool tall = a.rows() >= a.cols();
  // Work on the smaller Gram matrix; swap roles of U and V for wide inputs.
  const Matrix m = tall ? a : transpose(a);
  const std::size_t rows = m.rows();
  const std::size_t k = m.cols();

  Matrix gram = matmul(transpose(m), m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) gram(i, j) = gram(j, i) = 0.5 * (gram(i, j) + gram(j, i));
  const EigResult e = eig(gram);

  Vector sigma(k);
  for (std::size_t i = 0; i < k; ++i) sigma[i] = std::sqrt(std::max(e.values[i], 0.0));
  const double cutoff = 1e-12 * sigma[0];

  Matrix u(rows, k);
  std::size_t filled = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (sigma[c] <= cutoff || sigma[c] == 0.0) {
      sigma[c] = 0.0;
      continue;
    }
    const Vector av = matvec(m, e.vectors.col_vector(c));
    u.set_col(c, scale(av, 1.0 / sigma[c]));
    ++filled;
  }
  // Complete the left basis for zero singular values by Gram-Schmidt over unit vectors.
  std::size_t candidate = 0;
  for (std::size_t c = filled; c < k; ++c) {
    while (candidate < rows) {
      Vector v(rows, 0.0);
      v[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < c; ++j) {
          const Vector uj = u.col_vector(j);
          v = axpy(-dot(uj, v), uj, v);
        }
      const double nv = norm(v);
      if (nv > 1e-8) {
        u.set_col(c, scale(v, 1.0 / nv));
        break;
      }
    }
  }

  if (tall) return {std::move(u), std::move(sigma), e.vectors};
  return {e.vectors, std::move(sigma), std::move(u)};
}

}  // namespace desknum
