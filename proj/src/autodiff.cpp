#include "desknum/autodiff.hpp"

#include <cmath>

namespace desknum::ad {

namespace {

Tape* same_tape(Var a, Var b) {
  require(a.tape() != nullptr && a.tape() == b.tape(), ErrorCode::InvalidArgument,
          "autodiff: operands belong to different tapes");
  return a.tape();
}

Tape* tape_of(Var a) {
  require(a.tape() != nullptr, ErrorCode::InvalidArgument, "autodiff: detached variable");
  return a.tape();
}

double checked(double v) {
  require(std::isfinite(v), ErrorCode::NonFinite, "autodiff: non-finite intermediate value");
  return v;
}

}  // namespace

double Var::value() const { return tape_->nodes()[index_].value; }

std::size_t Tape::push(Node n) {
  checked(n.value);
  nodes_.push_back(n);
  return nodes_.size() - 1;
}

Var Tape::input(double value) {
  require(std::isfinite(value), ErrorCode::NonFinite, "autodiff: non-finite input");
  Node n;
  n.op = Op::Input;
  n.value = value;
  const std::size_t i = push(n);
  inputs_.push_back(i);
  return {this, i};
}

Var Tape::constant(double value) {
  Node n;
  n.op = Op::Const;
  n.value = value;
  return {this, push(n)};
}

Var Tape::unary(Op op, Var x, double partial, double value) {
  Node n;
  n.op = op;
  n.arity = 1;
  n.parents = {x.index(), 0};
  n.partials = {partial, 0.0};
  n.value = value;
  return {this, push(n)};
}

Var Tape::binary(Op op, Var x, Var y, double dx, double dy, double value) {
  Node n;
  n.op = op;
  n.arity = 2;
  n.parents = {x.index(), y.index()};
  n.partials = {dx, dy};
  n.value = value;
  return {this, push(n)};
}

Vector Tape::gradient(std::size_t output) const {
  require(output < nodes_.size(), ErrorCode::InvalidArgument, "autodiff: output index out of range");
  std::vector<double> adj(output + 1, 0.0);
  adj[output] = 1.0;
  for (std::size_t i = output + 1; i-- > 0;) {
    const double a = adj[i];
    if (a == 0.0) continue;
    const Node& n = nodes_[i];
    for (std::size_t p = 0; p < n.arity; ++p) adj[n.parents[p]] += a * n.partials[p];
  }
  Vector g(inputs_.size(), 0.0);
  for (std::size_t k = 0; k < inputs_.size(); ++k)
    if (inputs_[k] <= output) g[k] = adj[inputs_[k]];
  return g;
}

Var operator+(Var a, Var b) { return same_tape(a, b)->binary(Op::Add, a, b, 1.0, 1.0, a.value() + b.value()); }
Var operator-(Var a, Var b) { return same_tape(a, b)->binary(Op::Sub, a, b, 1.0, -1.0, a.value() - b.value()); }
Var operator*(Var a, Var b) {
  return same_tape(a, b)->binary(Op::Mul, a, b, b.value(), a.value(), a.value() * b.value());
}
Var operator/(Var a, Var b) {
  Tape* t = same_tape(a, b);
  const double d = b.value();
  require(d != 0.0, ErrorCode::DomainError, "autodiff: division by zero");
  return t->binary(Op::Div, a, b, 1.0 / d, -a.value() / (d * d), a.value() / d);
}
Var operator-(Var a) { return tape_of(a)->unary(Op::Neg, a, -1.0, -a.value()); }

Var operator+(Var a, double b) { return a + tape_of(a)->constant(b); }
Var operator+(double a, Var b) { return tape_of(b)->constant(a) + b; }
Var operator-(Var a, double b) { return a - tape_of(a)->constant(b); }
Var operator-(double a, Var b) { return tape_of(b)->constant(a) - b; }
Var operator*(Var a, double b) { return a * tape_of(a)->constant(b); }
Var operator*(double a, Var b) { return tape_of(b)->constant(a) * b; }
Var operator/(Var a, double b) { return a / tape_of(a)->constant(b); }
Var operator/(double a, Var b) { return tape_of(b)->constant(a) / b; }

Var pow(Var x, double exponent) {
  const double v = x.value();
  const double value = std::pow(v, exponent);
  const double partial = exponent == 0.0 ? 0.0 : exponent * std::pow(v, exponent - 1.0);
  require(std::isfinite(value) && std::isfinite(partial), ErrorCode::DomainError, "autodiff: pow outside its domain");
  return tape_of(x)->unary(Op::PowConst, x, partial, value);
}

Var exp(Var x) {
  const double e = std::exp(x.value());
  return tape_of(x)->unary(Op::Exp, x, e, e);
}

Var log(Var x) {
  const double v = x.value();
  require(v > 0.0, ErrorCode::DomainError, "autodiff: log of non-positive value");
  return tape_of(x)->unary(Op::Log, x, 1.0 / v, std::log(v));
}

Var sin(Var x) { return tape_of(x)->unary(Op::Sin, x, std::cos(x.value()), std::sin(x.value())); }
Var cos(Var x) { return tape_of(x)->unary(Op::Cos, x, -std::sin(x.value()), std::cos(x.value())); }

Var tanh(Var x) {
  const double t = std::tanh(x.value());
  return tape_of(x)->unary(Op::Tanh, x, 1.0 - t * t, t);
}

Var sigmoid(Var x) {
  const double v = x.value();
  const double s = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  return tape_of(x)->unary(Op::Sigmoid, x, s * (1.0 - s), s);
}

Recording record(const ScalarExpr& expr, std::span<const double> inputs) {
  Recording rec;
  std::vector<Var> vars;
  vars.reserve(inputs.size());
  for (double v : inputs) vars.push_back(rec.tape.input(v));
  const Var out = expr(vars);
  require(out.tape() == &rec.tape, ErrorCode::InvalidArgument, "autodiff: expression returned a foreign variable");
  rec.output = out.index();
  rec.value = out.value();
  return rec;
}

Vector gradient(const Recording& rec) { return rec.tape.gradient(rec.output); }

Vector gradient(const ScalarExpr& expr, std::span<const double> x) { return gradient(record(expr, x)); }

Matrix jacobian(const VectorExpr& f, std::span<const double> x) {
  require(!x.empty(), ErrorCode::EmptyInput, "jacobian: no inputs");
  Tape tape;
  std::vector<Var> vars;
  for (double v : x) vars.push_back(tape.input(v));
  const std::vector<Var> outs = f(vars);
  require(!outs.empty(), ErrorCode::EmptyInput, "jacobian: no outputs");
  Matrix j(outs.size(), x.size());
  for (std::size_t i = 0; i < outs.size(); ++i) {
    require(outs[i].tape() == &tape, ErrorCode::InvalidArgument, "jacobian: foreign output variable");
    const Vector g = tape.gradient(outs[i].index());
    std::copy(g.begin(), g.end(), j.row_span(i).begin());
  }
  return j;
}

Matrix hessian_fd(const ScalarExpr& f, std::span<const double> x, double h) {
  require(h > 0.0, ErrorCode::InvalidArgument, "hessian_fd: step must be positive");
  const std::size_t n = x.size();
  require(n > 0, ErrorCode::EmptyInput, "hessian_fd: no inputs");
  Matrix hess(n, n);
  Vector xp(x.begin(), x.end());
  for (std::size_t j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    const Vector gp = gradient(f, xp);
    xp[j] = x[j] - h;
    const Vector gm = gradient(f, xp);
    xp[j] = x[j];
    for (std::size_t i = 0; i < n; ++i) hess(i, j) = (gp[i] - gm[i]) / (2.0 * h);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) hess(i, j) = hess(j, i) = 0.5 * (hess(i, j) + hess(j, i));
  return hess;
}

}  // namespace desknum::ad
