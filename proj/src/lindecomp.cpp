#include "desknum/lindecomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace desknum {

namespace {

void require_square(const Matrix& a, const char* what) {
  require(!a.empty() && a.is_square(), ErrorCode::ShapeMismatch, what);
}

bool is_symmetric(const Matrix& a, double rel_tol = 1e-12) {
  if (!a.is_square()) return false;
  const double scale = std::max(1.0, max_abs(a.data()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
  return true;
}

Vector back_substitute(const Matrix& u, Vector y) {
  const std::size_t n = u.cols();
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= u(ii, j) * y[j];
    y[ii] = s / u(ii, ii);
  }
  y.resize(n);
  return y;
}

Vector gauss_solve(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  const double threshold = kPivotTol * max_abs(a.data());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= threshold) fail(ErrorCode::Singular, "gaussian elimination: pivot below threshold");
    if (p != k) {
      std::swap_ranges(a.row_span(k).begin(), a.row_span(k).end(), a.row_span(p).begin());
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / a(k, k);
      if (factor == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }
  return back_substitute(a, std::move(b));
}

// Householder vectors stored column by column; R overwrites the upper triangle.
struct Householder {
  Matrix r;                       // m x n, upper triangular after factorization
  std::vector<Vector> reflectors;  // reflector k acts on rows k..m-1
  std::vector<double> betas;
};

Householder householder(const Matrix& a) {
  Householder h{a, {}, {}};
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t steps = std::min(m - 1, n);
  for (std::size_t k = 0; k < steps; ++k) {
    Vector v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = h.r(i, k);
    const double alpha = norm(v);
    if (alpha == 0.0) {
      h.reflectors.emplace_back(m - k, 0.0);
      h.betas.push_back(0.0);
      continue;
    }
    const double s = v[0] >= 0.0 ? 1.0 : -1.0;
    v[0] += s * alpha;
    const double vtv = dot(v, v);
    const double beta = 2.0 / vtv;
    for (std::size_t j = k; j < n; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < m; ++i) proj += v[i - k] * h.r(i, j);
      proj *= beta;
      for (std::size_t i = k; i < m; ++i) h.r(i, j) -= proj * v[i - k];
    }
    for (std::size_t i = k + 1; i < m; ++i) h.r(i, k) = 0.0;
    h.reflectors.push_back(std::move(v));
    h.betas.push_back(beta);
  }
  return h;
}

// Applies Q^T to b in place.
void apply_qt(const Householder& h, Vector& b) {
  for (std::size_t k = 0; k < h.reflectors.size(); ++k) {
    const Vector& v = h.reflectors[k];
    double proj = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) proj += v[i] * b[k + i];
    proj *= h.betas[k];
    for (std::size_t i = 0; i < v.size(); ++i) b[k + i] -= proj * v[i];
  }
}

void check_r_diagonal(const Matrix& r, double scale, ErrorCode code) {
  const std::size_t n = std::min(r.rows(), r.cols());
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(r(i, i)) <= kPivotTol * scale) fail(code, "R has a negligible diagonal entry");
}

Vector cholesky_solve(const Matrix& a, std::span<const double> b) {
  const Matrix l = cholesky(a);
  const std::size_t n = a.rows();
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) y[i] -= l(i, j) * y[j];
    y[i] /= l(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= l(j, ii) * y[j];
    y[ii] /= l(ii, ii);
  }
  return y;
}

double residual_inf(const Matrix& a, std::span<const double> x, std::span<const double> b) {
  return norm_inf(sub(matvec(a, x), b));
}

}  // namespace

LuFactors lu(const Matrix& a) {
  require_square(a, "lu: matrix must be square");
  const std::size_t n = a.rows();
  const double threshold = kPivotTol * max_abs(a.data());
  Matrix u = a;
  Matrix l = Matrix::identity(n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(u(i, k)) > std::abs(u(p, k))) p = i;
    if (std::abs(u(p, k)) <= threshold) fail(ErrorCode::Singular, "lu: pivot below threshold");
    if (p != k) {
      std::swap_ranges(u.row_span(k).begin(), u.row_span(k).end(), u.row_span(p).begin());
      for (std::size_t j = 0; j < k; ++j) std::swap(l(k, j), l(p, j));
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = u(i, k) / u(k, k);
      l(i, k) = factor;
      for (std::size_t j = k; j < n; ++j) u(i, j) -= factor * u(k, j);
      u(i, k) = 0.0;
    }
  }
  return {std::move(l), std::move(u), std::move(perm), sign};
}

Vector lu_solve(const LuFactors& f, std::span<const double> b) {
  const std::size_t n = f.l.rows();
  require(b.size() == n, ErrorCode::ShapeMismatch, "lu_solve: rhs length mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.l(i, j) * y[j];
    y[i] = s;
  }
  return back_substitute(f.u, std::move(y));
}

QrFactors qr(const Matrix& a) {
  require(!a.empty(), ErrorCode::EmptyInput, "qr of empty matrix");
  const std::size_t m = a.rows();
  Householder h = householder(a);
  Matrix q = Matrix::identity(m);
  // Q = H_0 H_1 ... H_{k-1}; build by applying reflectors to the identity from the right.
  for (std::size_t i = 0; i < m; ++i) {
    Vector row(q.row_span(i).begin(), q.row_span(i).end());
    for (std::size_t k = 0; k < h.reflectors.size(); ++k) {
      const Vector& v = h.reflectors[k];
      double proj = 0.0;
      for (std::size_t t = 0; t < v.size(); ++t) proj += row[k + t] * v[t];
      proj *= h.betas[k];
      for (std::size_t t = 0; t < v.size(); ++t) row[k + t] -= proj * v[t];
    }
    std::copy(row.begin(), row.end(), q.row_span(i).begin());
  }
  return {std::move(q), std::move(h.r)};
}

Matrix cholesky(const Matrix& a) {
  require_square(a, "cholesky: matrix must be square");
  if (!is_symmetric(a)) fail(ErrorCode::NotSpd, "cholesky: matrix is not symmetric");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) fail(ErrorCode::NotSpd, "cholesky: non-positive pivot");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

double det(const Matrix& a) {
  require_square(a, "det: matrix must be square");
  LuFactors f;
  try {
    f = lu(a);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) return 0.0;
    throw;
  }
  double d = f.sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.u(i, i);
  return d;
}

Matrix inv(const Matrix& a) {
  const LuFactors f = lu(a);
  const std::size_t n = a.rows();
  Matrix out(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    out.set_col(j, lu_solve(f, e));
  }
  return out;
}

Vector solve_direct(const Matrix& a, std::span<const double> b, DirectMethod method) {
  require_square(a, "solve: matrix must be square");
  require(b.size() == a.rows(), ErrorCode::ShapeMismatch, "solve: rhs length mismatch");
  require(all_finite(b), ErrorCode::NonFinite, "solve: rhs must be finite");
  switch (method) {
    case DirectMethod::Gauss: return gauss_solve(a, Vector(b.begin(), b.end()));
    case DirectMethod::Lu: return lu_solve(lu(a), b);
    case DirectMethod::Qr: {
      const Householder h = householder(a);
      check_r_diagonal(h.r, max_abs(a.data()), ErrorCode::Singular);
      Vector y(b.begin(), b.end());
      apply_qt(h, y);
      return back_substitute(h.r, std::move(y));
    }
    case DirectMethod::Cholesky: return cholesky_solve(a, b);
    case DirectMethod::Inverse: return matvec(inv(a), b);
  }
  fail(ErrorCode::InvalidArgument, "unknown direct method");
}

Vector lstsq(const Matrix& a, std::span<const double> b) {
  require(a.rows() >= a.cols(), ErrorCode::ShapeMismatch, "lstsq needs rows >= cols");
  require(b.size() == a.rows(), ErrorCode::ShapeMismatch, "lstsq: rhs length mismatch");
  const Householder h = householder(a);
  check_r_diagonal(h.r, max_abs(a.data()), ErrorCode::RankDeficient);
  Vector y(b.begin(), b.end());
  apply_qt(h, y);
  return back_substitute(h.r, std::move(y));
}

IterativeSolution solve_iterative(const Matrix& a, std::span<const double> b, std::span<const double> x0,
                                  IterativeMethod method, const IterConfig& cfg) {
  require_square(a, "iterative solve: matrix must be square");
  const std::size_t n = a.rows();
  require(b.size() == n && x0.size() == n, ErrorCode::ShapeMismatch, "iterative solve: length mismatch");
  require(cfg.tol > 0.0 && cfg.max_iter > 0, ErrorCode::InvalidArgument, "iterative solve: bad config");

  Vector x(x0.begin(), x0.end());
  IterReport report;

  if (method == IterativeMethod::Cg) {
    if (!is_symmetric(a)) fail(ErrorCode::NotSpd, "cg: matrix is not symmetric");
    Vector r = sub(b, matvec(a, x));
    Vector p = r;
    double rr = dot(r, r);
    if (norm_inf(r) < cfg.tol) return {x, {0, norm_inf(r), true}};
    for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
      const Vector ap = matvec(a, p);
      const double curvature = dot(p, ap);
      if (curvature <= 0.0) fail(ErrorCode::NotSpd, "cg: non-positive curvature p^T A p");
      const double alpha = rr / curvature;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      report.iterations = k;
      const double step = std::abs(alpha) * norm_inf(p);
      const double rr_new = dot(r, r);
      if (norm_inf(r) < cfg.tol || step < cfg.tol) {
        report.converged = true;
        break;
      }
      const double beta = rr_new / rr;
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
      rr = rr_new;
    }
    report.residual = residual_inf(a, x, b);
    return {x, report};
  }

  for (std::size_t i = 0; i < n; ++i)
    if (a(i, i) == 0.0) fail(ErrorCode::ZeroDiagonal, "jacobi/gauss-seidel: zero diagonal entry");

  Vector next(n);
  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    if (method == IterativeMethod::Jacobi) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) s -= a(i, j) * x[j];
        next[i] = s / a(i, i);
      }
    } else {
      next = x;
      for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) s -= a(i, j) * next[j];
        next[i] = s / a(i, i);
      }
    }
    report.iterations = k;
    const double step = norm_inf(sub(next, x));
    x.swap(next);
    if (!all_finite(x)) break;
    // An exact fixed point (e.g. diagonal systems) is accepted without a confirming sweep.
    if (step < cfg.tol || residual_inf(a, x, b) == 0.0) {
      report.converged = true;
      break;
    }
  }
  report.residual = all_finite(x) ? residual_inf(a, x, b) : std::numeric_limits<double>::infinity();
  return {x, report};
}

Vector polyfit(std::span<const double> xs, std::span<const double> ys, std::size_t degree) {
  require(xs.size() == ys.size(), ErrorCode::ShapeMismatch, "polyfit: length mismatch");
  require(xs.size() >= degree + 1, ErrorCode::RankDeficient, "polyfit: too few points for degree");
  require(all_finite(xs) && all_finite(ys), ErrorCode::NonFinite, "polyfit: inputs must be finite");
  const std::size_t m = xs.size();
  const std::size_t n = degree + 1;
  Matrix v(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    double p = 1.0;
    for (std::size_t j = n; j-- > 0;) {
      v(i, j) = p;
      p *= xs[i];
    }
  }
  return lstsq(v, ys);
}

Matrix pca(const Matrix& x, std::size_t k) {
  require(!x.empty(), ErrorCode::EmptyInput, "pca of empty data");
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  require(n >= 2 && k >= 1 && k <= std::min(n - 1, d), ErrorCode::BadRank, "pca: need 1 <= k <= min(rows-1, cols)");

  Matrix centered = x;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) centered(i, j) -= mean;
  }
  Matrix cov = matmul(transpose(centered), centered);
  for (double& c : cov.data()) c /= static_cast<double>(n - 1);
  // Symmetrize rounding noise so eig takes the orthogonal path.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) cov(i, j) = cov(j, i) = 0.5 * (cov(i, j) + cov(j, i));

  const EigResult e = eig(cov);
  Matrix axes(d, k);
  for (std::size_t c = 0; c < k; ++c) {
    Vector v = e.vectors.col_vector(c);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < d; ++i)
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (v[arg] < 0.0)
      for (double& t : v) t = -t;
    axes.set_col(c, v);
  }
  return matmul(centered, axes);
}

}  // namespace desknum
