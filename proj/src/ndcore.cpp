#include "desknum/ndcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace desknum {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  require(rows > 0 && cols > 0, ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require(rows > 0 && cols > 0, ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
  require(data_.size() == rows * cols, ErrorCode::SizeMismatch, "data length must equal rows*cols");
  require(all_finite(data_), ErrorCode::NonFinite, "matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  require(rows.size() > 0, ErrorCode::ShapeMismatch, "matrix needs at least one row");
  rows_ = rows.size();
  cols_ = rows.begin()->size();
  require(cols_ > 0, ErrorCode::ShapeMismatch, "matrix needs at least one column");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, ErrorCode::ShapeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require(all_finite(data_), ErrorCode::NonFinite, "matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  require(all_finite(d), ErrorCode::NonFinite, "matrix entries must be finite");
  return m;
}

Matrix Matrix::column(std::span<const double> v) { return Matrix(v.size(), 1, Vector(v.begin(), v.end())); }

Matrix Matrix::row(std::span<const double> v) { return Matrix(1, v.size(), Vector(v.begin(), v.end())); }

Vector Matrix::col_vector(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_col(std::size_t j, std::span<const double> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

namespace {

double apply(double x, double y, BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return x + y;
    case BinaryOp::Sub: return x - y;
    case BinaryOp::Mul: return x * y;
    case BinaryOp::Div: return x / y;
  }
  return 0.0;
}

void check_result(const Matrix& m) {
  require(all_finite(m.data()), ErrorCode::NonFinite, "element-wise result overflowed");
}

}  // namespace

Matrix ew_binary(const Matrix& a, const Matrix& b, BinaryOp op) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::ShapeMismatch,
          "element-wise operands must have equal shapes");
  if (op == BinaryOp::Div) {
    require(std::none_of(b.data().begin(), b.data().end(), [](double v) { return v == 0.0; }),
            ErrorCode::DivisionByZero, "zero divisor entry");
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) out.data()[k] = apply(a.data()[k], b.data()[k], op);
  check_result(out);
  return out;
}

Matrix ew_binary(const Matrix& a, double b, BinaryOp op) {
  require(std::isfinite(b), ErrorCode::NonFinite, "scalar operand must be finite");
  require(!(op == BinaryOp::Div && b == 0.0), ErrorCode::DivisionByZero, "zero scalar divisor");
  Matrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) out.data()[k] = apply(a.data()[k], b, op);
  check_result(out);
  return out;
}

double reduce(std::span<const double> v, Reduction kind) {
  require(!v.empty(), ErrorCode::EmptyInput, "reduction over empty input");
  switch (kind) {
    case Reduction::Sum: return std::accumulate(v.begin(), v.end(), 0.0);
    case Reduction::Mean: return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    case Reduction::Max: return *std::max_element(v.begin(), v.end());
    case Reduction::Min: return *std::min_element(v.begin(), v.end());
  }
  return 0.0;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), ErrorCode::ShapeMismatch, "matvec: a.cols != len(x)");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row_span(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return a;
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix reshape(const Matrix& a, std::size_t rows, std::size_t cols) {
  require(rows * cols == a.size(), ErrorCode::SizeMismatch, "reshape must preserve element count");
  return Matrix(rows, cols, Vector(a.data().begin(), a.data().end()));
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::ShapeMismatch, "dot: length mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

Vector cross3(std::span<const double> a, std::span<const double> b) {
  require(a.size() == 3 && b.size() == 3, ErrorCode::ShapeMismatch, "cross product needs 3-vectors");
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(std::span<const double> x, NormKind kind) {
  require(!x.empty(), ErrorCode::EmptyInput, "norm of empty input");
  if (kind == NormKind::L1) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // L2 and Frobenius coincide on the flat entry sequence.
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double norm(const Matrix& m, NormKind kind) { return norm(m.data(), kind); }

double norm_inf(std::span<const double> x) { return max_abs(x); }

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::ShapeMismatch, "cosine: length mismatch");
  const double na = norm(a);
  const double nb = norm(b);
  require(na > 0.0 && nb > 0.0, ErrorCode::ZeroNorm, "cosine similarity of a zero vector");
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::ShapeMismatch, "distance: length mismatch");
  return norm(sub(a, b));
}

ErrorPair error_metrics(double exact, double approx) {
  require(exact != 0.0, ErrorCode::RelativeUndefined, "relative error undefined for exact == 0");
  const double abs_err = std::abs(exact - approx);
  return {abs_err, abs_err / std::abs(exact)};
}

double max_abs(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), ErrorCode::ShapeMismatch, "axpy: length mismatch");
  Vector out(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
  return out;
}

Vector sub(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::ShapeMismatch, "sub: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(std::span<const double> x, double s) {
  Vector out(x.begin(), x.end());
  for (double& v : out) v *= s;
  return out;
}

bool all_finite(std::span<const double> x) noexcept {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace desknum
