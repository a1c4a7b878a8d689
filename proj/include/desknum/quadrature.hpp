#pragma once

#include <functional>
#include <span>

#include "desknum/ndcore.hpp"

namespace desknum::quad {

using Fn = std::function<double(double)>;

enum class DiffScheme { Forward, Backward, Central };

inline constexpr double kDefaultStep = 1e-5;
inline constexpr int kMaxGaussOrder = 64;

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  int n = 0;
  Vector nodes;
  Vector weights;
};

double finite_diff(const Fn& f, double x, double h = kDefaultStep, DiffScheme scheme = DiffScheme::Central);

double trapezoid(const Fn& f, double a, double b, int n);
/// Trapezoidal area under sampled data (e.g. an ROC curve).
double trapezoid_samples(std::span<const double> xs, std::span<const double> ys);
double simpson(const Fn& f, double a, double b, int n);

/// Rules are computed once per order and shared; lookups are thread-safe.
const GaussRule& gauss_rule(int n);
double gauss_legendre(const Fn& f, double a, double b, int n);

}  // namespace desknum::quad
