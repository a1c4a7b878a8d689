#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "desknum/error.hpp"

namespace desknum {

using Vector = std::vector<double>;

/// Dense row-major matrix of finite doubles. Shape is fixed at construction.
class Matrix {
 public:
  Matrix() = default;
  /// Zero-filled rows x cols matrix.
  Matrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major data; rejects size mismatch and non-finite entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix column(std::span<const double> v);
  static Matrix row(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row_span(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row_span(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  Vector col_vector(std::size_t j) const;
  void set_col(std::size_t j, std::span<const double> v);

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class BinaryOp { Add, Sub, Mul, Div };
enum class Reduction { Sum, Mean, Max, Min };
enum class MatmulAlgo { Naive, Strassen };
enum class NormKind { L1, L2, Frobenius };

struct ErrorPair {
  double absolute = 0.0;
  double relative = 0.0;
};

Matrix ew_binary(const Matrix& a, const Matrix& b, BinaryOp op);
Matrix ew_binary(const Matrix& a, double b, BinaryOp op);

double reduce(std::span<const double> v, Reduction kind);

Matrix matmul(const Matrix& a, const Matrix& b, MatmulAlgo algo = MatmulAlgo::Naive);
/// Matrix-vector product.
Vector matvec(const Matrix& a, std::span<const double> x);
Matrix transpose(const Matrix& a);
Matrix reshape(const Matrix& a, std::size_t rows, std::size_t cols);

double dot(std::span<const double> a, std::span<const double> b);
Vector cross3(std::span<const double> a, std::span<const double> b);

double norm(std::span<const double> x, NormKind kind = NormKind::L2);
double norm(const Matrix& m, NormKind kind = NormKind::Frobenius);
double norm_inf(std::span<const double> x);

double cosine_similarity(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

ErrorPair error_metrics(double exact, double approx);

/// Largest absolute entry; 0 for an empty span.
double max_abs(std::span<const double> x) noexcept;

// Small vector helpers shared across modules.
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);  // alpha*x + y
Vector sub(std::span<const double> a, std::span<const double> b);
Vector scale(std::span<const double> x, double s);
bool all_finite(std::span<const double> x) noexcept;

}  // namespace desknum
