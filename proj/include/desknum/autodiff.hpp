#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "desknum/ndcore.hpp"

namespace desknum::ad {

enum class Op { Input, Const, Add, Sub, Mul, Div, PowConst, Exp, Log, Sin, Cos, Tanh, Sigmoid, Neg };

struct Node {
  Op op = Op::Input;
  std::array<std::size_t, 2> parents{};
  std::array<double, 2> partials{};  // d(node)/d(parent)
  std::size_t arity = 0;
  double value = 0.0;
};

class Tape;

/// Handle to a node on a tape. Arithmetic on vars records new nodes.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::size_t index) : tape_(tape), index_(index) {}

  double value() const;
  std::size_t index() const noexcept { return index_; }
  Tape* tape() const noexcept { return tape_; }

 private:
  Tape* tape_ = nullptr;
  std::size_t index_ = 0;
};

/// Reverse-mode record of a scalar computation. Nodes are appended in
/// evaluation order, so every parent index is smaller than its child's.
class Tape {
 public:
  Var input(double value);
  Var constant(double value);

  Var unary(Op op, Var x, double partial, double value);
  Var binary(Op op, Var x, Var y, double dx, double dy, double value);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<std::size_t>& inputs() const noexcept { return inputs_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Adjoints of `output` with respect to every recorded input, in input order.
  Vector gradient(std::size_t output) const;

 private:
  std::size_t push(Node n);

  std::vector<Node> nodes_;
  std::vector<std::size_t> inputs_;
};

Var operator+(Var a, Var b);
Var operator-(Var a, Var b);
Var operator*(Var a, Var b);
Var operator/(Var a, Var b);
Var operator-(Var a);
Var operator+(Var a, double b);
Var operator+(double a, Var b);
Var operator-(Var a, double b);
Var operator-(double a, Var b);
Var operator*(Var a, double b);
Var operator*(double a, Var b);
Var operator/(Var a, double b);
Var operator/(double a, Var b);

Var pow(Var x, double exponent);
Var exp(Var x);
Var log(Var x);
Var sin(Var x);
Var cos(Var x);
Var tanh(Var x);
Var sigmoid(Var x);

using ScalarExpr = std::function<Var(std::span<const Var>)>;
using VectorExpr = std::function<std::vector<Var>(std::span<const Var>)>;

struct Recording {
  double value = 0.0;
  Tape tape;
  std::size_t output = 0;
};

/// Evaluates `expr` at `inputs`, recording every elementary operation.
Recording record(const ScalarExpr& expr, std::span<const double> inputs);

/// Gradient of the recorded output with respect to the inputs.
Vector gradient(const Recording& rec);

/// Convenience: value-and-gradient in one call.
Vector gradient(const ScalarExpr& expr, std::span<const double> x);

/// m x n Jacobian, one reverse sweep per output.
Matrix jacobian(const VectorExpr& f, std::span<const double> x);

/// Central finite difference of the reverse-mode gradient, symmetrized.
Matrix hessian_fd(const ScalarExpr& f, std::span<const double> x, double h = 1e-5);

}  // namespace desknum::ad
