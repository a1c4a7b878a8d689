#pragma once

#include <cstddef>
#include <vector>

#include "desknum/ndcore.hpp"

namespace desknum {

/// P*A = L*U with unit lower-triangular L. `perm[i]` is the row of A that
/// ended up in row i; `sign` is the parity of that permutation.
struct LuFactors {
  Matrix l;
  Matrix u;
  std::vector<std::size_t> perm;
  int sign = 1;
};

struct QrFactors {
  Matrix q;
  Matrix r;
};

/// Eigenvalues sorted descending; eigenvectors are the unit-norm columns of `vectors`.
struct EigResult {
  Vector values;
  Matrix vectors;
};

/// Thin SVD: A (m x n) = U (m x k) * diag(sigma) * V^T with k = min(m, n).
struct SvdResult {
  Matrix u;
  Vector sigma;
  Matrix v;
};

struct IterConfig {
  double tol = 1e-10;
  std::size_t max_iter = 100;
};

struct IterReport {
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

enum class DirectMethod { Gauss, Lu, Qr, Cholesky, Inverse };
enum class IterativeMethod { Jacobi, GaussSeidel, Cg };

/// Relative pivot threshold: |pivot| < kPivotTol * max|A| is treated as singular.
inline constexpr double kPivotTol = 1e-12;

Vector solve_direct(const Matrix& a, std::span<const double> b, DirectMethod method);

LuFactors lu(const Matrix& a);
QrFactors qr(const Matrix& a);
Matrix cholesky(const Matrix& a);

/// Forward/back substitution using existing factors.
Vector lu_solve(const LuFactors& f, std::span<const double> b);

double det(const Matrix& a);
Matrix inv(const Matrix& a);

struct IterativeSolution {
  Vector x;
  IterReport report;
};

IterativeSolution solve_iterative(const Matrix& a, std::span<const double> b, std::span<const double> x0,
                                  IterativeMethod method, const IterConfig& cfg = {});

EigResult eig(const Matrix& a);
SvdResult svd(const Matrix& a);

/// Projection of the mean-centred rows of `x` onto the top-k principal axes.
Matrix pca(const Matrix& x, std::size_t k);

/// Least-squares polynomial coefficients, highest degree first.
Vector polyfit(std::span<const double> xs, std::span<const double> ys, std::size_t degree);

/// Least-squares solution of an overdetermined full-column-rank system via Householder QR.
Vector lstsq(const Matrix& a, std::span<const double> b);

}  // namespace desknum
