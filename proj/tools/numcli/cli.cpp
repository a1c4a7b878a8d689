#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "desknum/desknum.h"
#include "io.hpp"

namespace numcli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  NumericError(dn_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  dn_status status;
};

void check(dn_status s) {
  if (s != DN_OK) throw NumericError(s, dn_last_error());
}

using Mat = std::unique_ptr<dn_matrix, void (*)(dn_matrix*)>;

Mat own(dn_matrix* m) { return Mat(m, dn_matrix_free); }

Mat make_matrix(std::size_t rows, std::size_t cols, const double* data) {
  dn_matrix* m = nullptr;
  check(dn_matrix_create(rows, cols, data, &m));
  return own(m);
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Mat load_matrix(const std::string& path) {
  const Table t = read_csv(read_file(path));
  std::vector<double> flat;
  for (const auto& r : t.rows) flat.insert(flat.end(), r.begin(), r.end());
  return make_matrix(t.rows.size(), t.headers.size(), flat.data());
}

// Every value in the file, row by row; suits one-column signals and right-hand sides.
std::vector<double> load_vector(const std::string& path) {
  const Table t = read_csv(read_file(path));
  std::vector<double> v;
  for (const auto& r : t.rows) v.insert(v.end(), r.begin(), r.end());
  return v;
}

Table matrix_table(const dn_matrix* m, const std::string& prefix = "c") {
  const std::size_t r = dn_matrix_rows(m), c = dn_matrix_cols(m);
  const double* d = dn_matrix_data(m);
  Table t{numbered(prefix, c), {}};
  for (std::size_t i = 0; i < r; ++i) t.rows.emplace_back(d + i * c, d + (i + 1) * c);
  return t;
}

Table column_table(const std::string& name, const std::vector<double>& v) {
  Table t{{name}, {}};
  for (double x : v) t.rows.push_back({x});
  return t;
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t pos = std::min(s.find(',', start), s.size());
    const std::string tok = s.substr(start, pos - start);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v))
      throw UsageError(std::string(flag) + ": expected comma-separated numbers, got '" + s + "'");
    out.push_back(v);
    start = pos + 1;
  }
  return out;
}

template <typename T>
const T& pick(const std::map<std::string, T>& table, const std::string& key, const char* what) {
  const auto it = table.find(key);
  if (it == table.end()) throw UsageError(std::string("unknown ") + what + " '" + key + "'");
  return it->second;
}

// ---- built-in function registry

struct ScalarEntry {
  dn_scalar_fn f;
  dn_scalar_fn df;
  dn_scalar_fn g;     // fixed-point form, may be null
  dn_scalar_fn prim;  // antiderivative, may be null
};

double x2m4(double x, void*) { return x * x - 4.0; }
double x2m4_d(double x, void*) { return 2.0 * x; }
double x2m4_g(double x, void*) { return 0.5 * (x + 4.0 / x); }
double x2m4_prim(double x, void*) { return x * x * x / 3.0 - 4.0 * x; }
double quad(double x, void*) { return x * x + 4.0 * x + 4.0; }
double quad_d(double x, void*) { return 2.0 * x + 4.0; }
double quad_prim(double x, void*) { return x * x * x / 3.0 + 2.0 * x * x + 4.0 * x; }
double sine(double x, void*) { return std::sin(x); }
double sine_d(double x, void*) { return std::cos(x); }
double sine_g(double x, void*) { return x + std::sin(x); }  // attracts to pi
double sine_prim(double x, void*) { return -std::cos(x); }
double cube(double x, void*) { return x * x * x; }
double cube_d(double x, void*) { return 3.0 * x * x; }
double cube_prim(double x, void*) { return x * x * x * x / 4.0; }

const std::map<std::string, ScalarEntry>& scalar_registry() {
  static const std::map<std::string, ScalarEntry> r{
      {"x2m4", {x2m4, x2m4_d, x2m4_g, x2m4_prim}},
      {"quad", {quad, quad_d, nullptr, quad_prim}},
      {"sin", {sine, sine_d, sine_g, sine_prim}},
      {"cube", {cube, cube_d, nullptr, cube_prim}},
  };
  return r;
}

void circlepara(const double* x, size_t, double* out, void*) {
  out[0] = x[0] * x[0] + x[1] * x[1] - 1.0;
  out[1] = x[0] * x[0] - x[1];
}

struct ObjectiveEntry {
  dn_objective_fn f;
  dn_gradient_fn grad;
  dn_hessian_fn hess;
  std::vector<double> x0;
};

double quadratic1d(const double* x, size_t, void*) { return x[0] * x[0] + 4.0 * x[0] + 4.0; }
void quadratic1d_g(const double* x, size_t, double* g, void*) { g[0] = 2.0 * x[0] + 4.0; }
void quadratic1d_h(const double*, size_t, double* h, void*) { h[0] = 2.0; }

double bowl2d(const double* x, size_t, void*) { return (x[0] - 3.0) * (x[0] - 3.0) + (x[1] - 2.0) * (x[1] - 2.0); }
void bowl2d_g(const double* x, size_t, double* g, void*) {
  g[0] = 2.0 * (x[0] - 3.0);
  g[1] = 2.0 * (x[1] - 2.0);
}
void bowl2d_h(const double*, size_t, double* h, void*) {
  h[0] = 2.0, h[1] = 0.0, h[2] = 0.0, h[3] = 2.0;
}

double rosen(const double* x, size_t, void*) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}
void rosen_g(const double* x, size_t, double* g, void*) {
  g[0] = -400.0 * x[0] * (x[1] - x[0] * x[0]) - 2.0 * (1.0 - x[0]);
  g[1] = 200.0 * (x[1] - x[0] * x[0]);
}
void rosen_h(const double* x, size_t, double* h, void*) {
  h[0] = 1200.0 * x[0] * x[0] - 400.0 * x[1] + 2.0;
  h[1] = h[2] = -400.0 * x[0];
  h[3] = 200.0;
}

const std::map<std::string, ObjectiveEntry>& objective_registry() {
  static const std::map<std::string, ObjectiveEntry> r{
      {"quadratic1d", {quadratic1d, quadratic1d_g, quadratic1d_h, {10.0}}},
      {"bowl2d", {bowl2d, bowl2d_g, bowl2d_h, {0.0, 0.0}}},
      {"rosenbrock", {rosen, rosen_g, rosen_h, {-1.2, 1.0}}},
  };
  return r;
}

// ---- subcommands

struct Common {
  std::string out;
  std::uint64_t seed = 0;
};

struct LinalgArgs {
  std::string op = "matmul", a, b, algo = "naive", part, kind = "frobenius";
  double scalar = 0.0;
  std::size_t k = 1;
};

Table cmd_linalg(const LinalgArgs& p) {
  if (p.a.empty()) throw UsageError("linalg: --a is required");
  const Mat a = load_matrix(p.a);
  auto need_b = [&] {
    if (p.b.empty()) throw UsageError("linalg " + p.op + ": --b is required");
    return load_matrix(p.b);
  };
  auto result = [](dn_matrix* m) { return matrix_table(own(m).get()); };
  dn_matrix* r = nullptr;
  static const std::map<std::string, dn_binary_op> ew{{"add", DN_ADD}, {"sub", DN_SUB}, {"mul", DN_MUL}, {"div", DN_DIV}};
  if (p.op == "matmul") {
    const dn_matmul_algo algo = pick<dn_matmul_algo>({{"naive", DN_MATMUL_NAIVE}, {"strassen", DN_MATMUL_STRASSEN}}, p.algo, "algorithm");
    const Mat b = need_b();
    check(dn_matmul(a.get(), b.get(), algo, &r));
    return result(r);
  }
  if (ew.count(p.op)) {
    if (p.b.empty()) {
      check(dn_elementwise_scalar(a.get(), p.scalar, ew.at(p.op), &r));
    } else {
      const Mat b = need_b();
      check(dn_elementwise(a.get(), b.get(), ew.at(p.op), &r));
    }
    return result(r);
  }
  if (p.op == "transpose") {
    check(dn_transpose(a.get(), &r));
    return result(r);
  }
  if (p.op == "inv") {
    check(dn_inv(a.get(), &r));
    return result(r);
  }
  if (p.op == "det") {
    double d = 0.0;
    check(dn_det(a.get(), &d));
    return column_table("det", {d});
  }
  if (p.op == "norm") {
    const dn_norm_kind kind = pick<dn_norm_kind>({{"l1", DN_NORM_L1}, {"l2", DN_NORM_L2}, {"frobenius", DN_NORM_FROBENIUS}}, p.kind, "norm");
    double v = 0.0;
    check(dn_matrix_norm(a.get(), kind, &v));
    return column_table("norm", {v});
  }
  if (p.op == "pca") {
    check(dn_pca(a.get(), p.k, &r));
    return result(r);
  }
  if (p.op == "cholesky") {
    check(dn_cholesky(a.get(), &r));
    return result(r);
  }
  if (p.op == "lu") {
    dn_matrix *l = nullptr, *u = nullptr;
    std::vector<size_t> perm(dn_matrix_rows(a.get()));
    check(dn_lu(a.get(), &l, &u, perm.data()));
    const Mat lm = own(l), um = own(u);
    const std::string part = p.part.empty() ? "l" : p.part;
    if (part == "l") return matrix_table(lm.get());
    if (part == "u") return matrix_table(um.get());
    if (part == "perm") return column_table("perm", std::vector<double>(perm.begin(), perm.end()));
    throw UsageError("linalg lu: --part must be l, u or perm");
  }
  if (p.op == "qr") {
    dn_matrix *q = nullptr, *rr = nullptr;
    check(dn_qr(a.get(), &q, &rr));
    const Mat qm = own(q), rm = own(rr);
    const std::string part = p.part.empty() ? "q" : p.part;
    if (part == "q") return matrix_table(qm.get());
    if (part == "r") return matrix_table(rm.get());
    throw UsageError("linalg qr: --part must be q or r");
  }
  if (p.op == "svd") {
    dn_matrix *u = nullptr, *v = nullptr;
    std::vector<double> sigma(std::min(dn_matrix_rows(a.get()), dn_matrix_cols(a.get())));
    check(dn_svd(a.get(), &u, sigma.data(), &v));
    const Mat um = own(u), vm = own(v);
    const std::string part = p.part.empty() ? "s" : p.part;
    if (part == "u") return matrix_table(um.get());
    if (part == "s") return column_table("sigma", sigma);
    if (part == "v") return matrix_table(vm.get());
    throw UsageError("linalg svd: --part must be u, s or v");
  }
  throw UsageError("linalg: unknown --op '" + p.op + "'");
}

struct SolveArgs {
  std::string a, b, method = "lu";
  double tol = 1e-10;
  std::size_t max_iter = 100;
};

Table cmd_solve(const SolveArgs& p) {
  if (p.a.empty() || p.b.empty()) throw UsageError("solve: --a and --b are required");
  const Mat a = load_matrix(p.a);
  const std::vector<double> b = load_vector(p.b);
  if (b.size() != dn_matrix_rows(a.get())) throw UsageError("solve: b must have one entry per row of A");
  std::vector<double> x(b.size());
  static const std::map<std::string, dn_direct_method> direct{
      {"gauss", DN_GAUSS}, {"lu", DN_LU}, {"qr", DN_QR}, {"cholesky", DN_CHOLESKY}, {"inverse", DN_INVERSE}};
  static const std::map<std::string, dn_iterative_method> iterative{
      {"jacobi", DN_JACOBI}, {"gauss-seidel", DN_GAUSS_SEIDEL}, {"cg", DN_CG}};
  if (direct.count(p.method)) {
    check(dn_solve(a.get(), b.data(), direct.at(p.method), x.data()));
  } else {
    dn_iter_report rep{};
    check(dn_solve_iterative(a.get(), b.data(), nullptr, pick(iterative, p.method, "method"), p.tol, p.max_iter,
                             x.data(), &rep));
  }
  return column_table("x", x);
}

Table cmd_eig(const std::string& path) {
  if (path.empty()) throw UsageError("eig: --a is required");
  const Mat a = load_matrix(path);
  const std::size_t n = dn_matrix_rows(a.get());
  std::vector<double> values(n);
  dn_matrix* v = nullptr;
  check(dn_eig(a.get(), values.data(), &v));
  const Mat vm = own(v);
  Table t{{"value"}, {}};
  for (const auto& h : numbered("v", n)) t.headers.push_back(h);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row{values[i]};
    for (std::size_t j = 0; j < n; ++j) row.push_back(dn_matrix_data(vm.get())[j * n + i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct RootsArgs {
  std::string fn = "x2m4", method = "bisection", x0 = "0.5,0.5";
  double a = 1.0, b = 3.0, x = 3.0, x1 = 2.5, tol = 1e-5;
  std::size_t max_iter = 100;
};

Table cmd_roots(const RootsArgs& p) {
  if (p.method == "newton-system" || p.method == "broyden") {
    if (p.fn != "circlepara") throw UsageError("roots: system methods need --fn circlepara");
    const std::vector<double> x0 = parse_list(p.x0, "--x0");
    if (x0.size() != 2) throw UsageError("roots: circlepara takes two starting values");
    std::vector<double> root(2);
    size_t it = 0;
    double res = 0.0;
    check(dn_solve_system(p.method == "broyden" ? DN_BROYDEN : DN_NEWTON_SYSTEM, circlepara, nullptr, x0.data(), 2,
                          p.tol, p.max_iter, root.data(), &it, &res));
    return {{"x0", "x1", "iterations", "residual"}, {{root[0], root[1], static_cast<double>(it), res}}};
  }
  const ScalarEntry& e = pick(scalar_registry(), p.fn, "scalar function");
  dn_root_report r{};
  if (p.method == "bisection") {
    check(dn_bisection(e.f, nullptr, p.a, p.b, p.tol, p.max_iter, &r));
  } else if (p.method == "newton") {
    check(dn_newton(e.f, e.df, nullptr, p.x, p.tol, p.max_iter, &r));
  } else if (p.method == "secant") {
    check(dn_secant(e.f, nullptr, p.x, p.x1, p.tol, p.max_iter, &r));
  } else if (p.method == "fixed-point") {
    if (!e.g) throw UsageError("roots: '" + p.fn + "' has no fixed-point form");
    check(dn_fixed_point(e.g, nullptr, p.x, p.tol, p.max_iter, &r));
  } else {
    throw UsageError("roots: unknown --method '" + p.method + "'");
  }
  return {{"root", "iterations", "residual"}, {{r.root, static_cast<double>(r.iterations), r.residual}}};
}

struct InterpArgs {
  std::string knots, method = "spline";
  std::optional<double> from, to;
  std::size_t samples = 101;
};

Table cmd_interp(const InterpArgs& p) {
  if (p.knots.empty()) throw UsageError("interp: --knots is required");
  const Table k = read_csv(read_file(p.knots));
  if (k.headers.size() != 2) throw UsageError("interp: knot file needs two columns (x, y)");
  if (p.samples < 2) throw UsageError("interp: --samples must be at least 2");
  std::vector<double> xs, ys;
  for (const auto& r : k.rows) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  if (xs.empty()) throw UsageError("interp: knot file has no rows");
  const dn_interp_method m = pick<dn_interp_method>(
      {{"lagrange", DN_INTERP_LAGRANGE}, {"newton", DN_INTERP_NEWTON}, {"spline", DN_INTERP_SPLINE}, {"linear", DN_INTERP_LINEAR}},
      p.method, "interpolation method");
  const double lo = p.from.value_or(*std::min_element(xs.begin(), xs.end()));
  const double hi = p.to.value_or(*std::max_element(xs.begin(), xs.end()));
  std::vector<double> q(p.samples), v(p.samples);
  for (std::size_t i = 0; i < p.samples; ++i) q[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(p.samples - 1);
  check(dn_interpolate(m, xs.data(), ys.data(), xs.size(), q.data(), q.size(), v.data()));
  Table t{{"x", "y"}, {}};
  for (std::size_t i = 0; i < q.size(); ++i) t.rows.push_back({q[i], v[i]});
  return t;
}

struct IntegrateArgs {
  std::string fn = "sin", method = "simpson";
  double a = 0.0, b = std::acos(-1.0);
  int n = 1000;
};

Table cmd_integrate(const IntegrateArgs& p) {
  const ScalarEntry& e = pick(scalar_registry(), p.fn, "integrand");
  const dn_quad_method m = pick<dn_quad_method>(
      {{"trapezoid", DN_TRAPEZOID}, {"simpson", DN_SIMPSON}, {"gauss", DN_GAUSS_LEGENDRE}}, p.method, "quadrature method");
  double v = 0.0;
  check(dn_integrate(m, e.f, nullptr, p.a, p.b, p.n, &v));
  if (!e.prim) return column_table("value", {v});
  const double exact = e.prim(p.b, nullptr) - e.prim(p.a, nullptr);
  return {{"value", "exact", "error"}, {{v, exact, std::abs(v - exact)}}};
}

struct FftArgs {
  std::string in;
  double spacing = 1.0;
};

Table cmd_fft(const FftArgs& p) {
  if (p.in.empty()) throw UsageError("fft: --in is required");
  const std::vector<double> x = load_vector(p.in);
  const std::size_t n = x.size();
  std::vector<double> re(n), im(n), freqs(n);
  check(dn_fft(x.data(), nullptr, n, re.data(), im.data()));
  check(dn_fft_freqs(n, p.spacing, freqs.data()));
  Table t{{"freq", "re", "im", "magnitude"}, {}};
  for (std::size_t i = 0; i < n; ++i) t.rows.push_back({freqs[i], re[i], im[i], std::hypot(re[i], im[i])});
  return t;
}

struct LowpassArgs {
  std::string in, spectrum;
  double cutoff = 0.1;
};

Gray to_gray(const dn_matrix* m, bool minmax) {
  Gray g{dn_matrix_rows(m), dn_matrix_cols(m), {}};
  const double* d = dn_matrix_data(m);
  g.data.assign(d, d + g.rows * g.cols);
  if (minmax) {
    const auto [lo, hi] = std::minmax_element(g.data.begin(), g.data.end());
    const double a = *lo, span = *hi - *lo;
    for (double& v : g.data) v = span > 0.0 ? 255.0 * (v - a) / span : 0.0;
  } else {
    for (double& v : g.data) v = std::clamp(v, 0.0, 255.0);
  }
  return g;
}

std::string cmd_image_lowpass(const LowpassArgs& p) {
  if (p.in.empty()) throw UsageError("image-lowpass: --in is required");
  const Gray img = read_pgm(read_file(p.in));
  if (img.data.empty()) throw UsageError("image-lowpass: empty image");
  const Mat m = make_matrix(img.rows, img.cols, img.data.data());
  dn_matrix* f = nullptr;
  check(dn_lowpass2d(m.get(), p.cutoff, &f));
  const Mat filtered = own(f);
  if (!p.spectrum.empty()) {
    dn_matrix* s = nullptr;
    check(dn_log_magnitude_spectrum(m.get(), &s));
    write_file(p.spectrum, write_pgm(to_gray(own(s).get(), true)));
  }
  return write_pgm(to_gray(filtered.get(), false));
}

struct OptimizeArgs {
  std::string fn = "quadratic1d", method = "gd", x0, schedule = "constant";
  double eta = 0.1, beta = 0.9, beta1 = 0.9, beta2 = 0.999, eps = 1e-8, weight_decay = 0.0;
  double drop = 0.5, lambda = 0.1, eta_min = 0.0;
  std::optional<double> clip, tol;
  std::size_t iters = 50, drop_epoch = 10, t0 = 10, t_mult = 2, max_iter = 500, memory = 10;
};

Table cmd_optimize(const OptimizeArgs& p) {
  const ObjectiveEntry& e = pick(objective_registry(), p.fn, "objective");
  std::vector<double> x = p.x0.empty() ? e.x0 : parse_list(p.x0, "--x0");
  if (x.size() != e.x0.size()) throw UsageError("optimize: --x0 has the wrong dimension for " + p.fn);
  const std::size_t n = x.size();
  Table t{{"step"}, {}};
  for (const auto& h : numbered("x", n)) t.headers.push_back(h);
  t.headers.push_back("f");
  t.headers.push_back("lr");
  auto row = [&](std::size_t step, const double* v, double lr) {
    std::vector<double> r{static_cast<double>(step)};
    r.insert(r.end(), v, v + n);
    r.push_back(e.f(v, n, nullptr));
    r.push_back(lr);
    t.rows.push_back(std::move(r));
  };

  static const std::map<std::string, dn_minimizer> searches{
      {"newton", DN_MIN_NEWTON}, {"bfgs", DN_MIN_BFGS}, {"lbfgs", DN_MIN_LBFGS}, {"nelder-mead", DN_MIN_NELDER_MEAD}};
  if (searches.count(p.method)) {
    // These methods choose their own steps; the lr column is 0.
    dn_matrix* traj = nullptr;
    dn_minimize_report rep{};
    std::vector<double> xs(n);
    const double tol = p.tol.value_or(p.method == "nelder-mead" ? 1e-10 : 1e-6);
    check(dn_minimize(searches.at(p.method), e.f, e.grad, e.hess, nullptr, x.data(), n, tol, p.max_iter, p.memory,
                      xs.data(), &rep, &traj));
    const Mat tm = own(traj);
    for (std::size_t i = 0; i < dn_matrix_rows(tm.get()); ++i) row(i, dn_matrix_data(tm.get()) + i * n, 0.0);
    return t;
  }

  const dn_step_kind kind = pick<dn_step_kind>({{"gd", DN_STEP_SGD},
                                                {"momentum", DN_STEP_MOMENTUM},
                                                {"adagrad", DN_STEP_ADAGRAD},
                                                {"rmsprop", DN_STEP_RMSPROP},
                                                {"adam", DN_STEP_ADAM},
                                                {"adamw", DN_STEP_ADAMW}},
                                               p.method, "method");
  dn_schedule sched = dn_schedule_default();
  sched.kind = pick<dn_schedule_kind>({{"constant", DN_SCHED_CONSTANT},
                                       {"step", DN_SCHED_STEP},
                                       {"exponential", DN_SCHED_EXPONENTIAL},
                                       {"cosine", DN_SCHED_COSINE_RESTARTS}},
                                      p.schedule, "schedule");
  sched.eta0 = sched.eta_max = p.eta;
  sched.drop_factor = p.drop;
  sched.drop_epoch = p.drop_epoch;
  sched.lambda = p.lambda;
  sched.eta_min = p.eta_min;
  sched.t0 = p.t0;
  sched.t_mult = p.t_mult;

  const dn_opt_config cfg{p.eta, p.beta, p.beta1, p.beta2, p.eps, p.weight_decay};
  dn_optimizer* raw = nullptr;
  check(dn_optimizer_create(kind, &cfg, n, &raw));
  const std::unique_ptr<dn_optimizer, void (*)(dn_optimizer*)> o(raw, dn_optimizer_free);
  double lr = 0.0;
  check(dn_lr_at(&sched, 0, &lr));
  row(0, x.data(), lr);
  std::vector<double> g(n);
  for (std::size_t k = 0; k < p.iters; ++k) {
    check(dn_lr_at(&sched, k, &lr));
    e.grad(x.data(), n, g.data(), nullptr);
    if (p.clip) check(dn_clip_by_norm(g.data(), n, *p.clip, g.data()));
    check(dn_optimizer_set_eta(o.get(), lr));
    check(dn_optimizer_step(o.get(), x.data(), g.data()));
    row(k + 1, x.data(), lr);
  }
  return t;
}

struct OdeArgs {
  std::string problem = "decay", method = "rk4", y0;
  std::optional<double> h, t_end;
  double tau = 10.0, v_rest = -65.0, r = 10.0, current = 20.0, k = 1.0;
};

void decay(double, const double* y, size_t, double* d, void*) { d[0] = -2.0 * y[0]; }
void stiff(double t, const double* y, size_t, double* d, void*) { d[0] = -1000.0 * y[0] + 3000.0 - 2000.0 * std::exp(-t); }

Table cmd_ode(const OdeArgs& p) {
  dn_matrix* out = nullptr;
  if (p.problem == "lif") {
    check(dn_lif_simulate(p.tau, p.v_rest, p.r, p.current, p.h.value_or(0.1), p.t_end.value_or(100.0), &out));
    const Mat m = own(out);
    Table t = matrix_table(m.get());
    t.headers = {"t", "v"};
    return t;
  }
  if (p.problem == "lti") {
    check(dn_lti_step_response(p.k, p.tau, p.h.value_or(0.1), p.t_end.value_or(50.0), &out));
    const Mat m = own(out);
    Table t = matrix_table(m.get());
    t.headers = {"t", "y"};
    return t;
  }
  struct Ivp {
    dn_rhs_fn f;
    double y0, h, t_end;
  };
  const Ivp ivp = pick<Ivp>({{"decay", {decay, 1.0, 0.1, 1.0}}, {"stiff", {stiff, 0.0, 0.01, 5.0}}}, p.problem, "problem");
  const dn_ode_method m = pick<dn_ode_method>(
      {{"euler", DN_EULER}, {"rk4", DN_RK4}, {"backward-euler", DN_BACKWARD_EULER}}, p.method, "ODE method");
  std::vector<double> y0{ivp.y0};
  if (!p.y0.empty()) y0 = parse_list(p.y0, "--y0");
  if (y0.size() != 1) throw UsageError("ode: the built-in problems are scalar");
  check(dn_ode_solve(m, ivp.f, nullptr, 0.0, y0.data(), 1, p.h.value_or(ivp.h), p.t_end.value_or(ivp.t_end), &out));
  const Mat traj = own(out);
  Table t = matrix_table(traj.get());
  t.headers = {"t", "y"};
  return t;
}

struct HeatArgs {
  double alpha = 0.01, length = 10.0, t_total = 1.0;
  std::size_t nx = 100, nt = 500;
};

Table cmd_heat(const HeatArgs& p) {
  dn_matrix* out = nullptr;
  check(dn_heat1d(p.alpha, p.length, p.nx, p.nt, p.t_total, nullptr, nullptr, &out));
  const Mat m = own(out);
  Table t = matrix_table(m.get());
  t.headers = {"x", "u"};
  return t;
}

struct XorArgs {
  double eta = 0.5;
  std::size_t epochs = 10000, hidden = 4, every = 1;
};

Table cmd_xor(const XorArgs& p, std::uint64_t seed) {
  if (p.every == 0) throw UsageError("xor: --every must be positive");
  const double xs[] = {0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1};
  const double ys[] = {0, 1, 1, 0};
  const Mat x = make_matrix(4, 3, xs);
  const Mat y = make_matrix(4, 1, ys);
  const size_t sizes[] = {3, p.hidden, 1};
  dn_mlp* raw = nullptr;
  check(dn_mlp_create(sizes, 3, seed, &raw));
  const std::unique_ptr<dn_mlp, void (*)(dn_mlp*)> net(raw, dn_mlp_free);
  std::vector<double> history(p.epochs);
  check(dn_mlp_train(net.get(), x.get(), y.get(), p.eta, p.epochs, history.data()));
  double final_loss = 0.0;
  check(dn_mlp_loss(net.get(), x.get(), y.get(), &final_loss));
  Table t{{"epoch", "loss"}, {}};
  for (std::size_t i = 0; i < history.size(); i += p.every) t.rows.push_back({static_cast<double>(i), history[i]});
  t.rows.push_back({static_cast<double>(p.epochs), final_loss});
  return t;
}

struct QlearnArgs {
  double alpha = 0.1, gamma = 0.9, epsilon = 0.1;
  std::size_t episodes = 1000;
};

Table cmd_qlearn(const QlearnArgs& p, std::uint64_t seed) {
  dn_matrix* q = nullptr;
  check(dn_qlearn(p.alpha, p.gamma, p.epsilon, p.episodes, seed, &q));
  const Mat m = own(q);
  Table t{{"state"}, {}};
  for (const auto& h : numbered("a", dn_matrix_cols(m.get()))) t.headers.push_back(h);
  const Table body = matrix_table(m.get());
  for (std::size_t s = 0; s < body.rows.size(); ++s) {
    std::vector<double> r{static_cast<double>(s)};
    r.insert(r.end(), body.rows[s].begin(), body.rows[s].end());
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic front end to the desknum numerical library."};
  app.name("numcli");
  app.set_help_flag("--help", "Print help");  // flags are long-form only; frees --h for the ODE step
  app.require_subcommand(1, 1);
  Common common;
  app.add_option("--out", common.out, "Output file (default: standard output)");
  app.add_option("--seed", common.seed, "Seed for randomized subcommands");
  app.fallthrough();

  std::function<std::string()> action;
  auto table_action = [&](std::function<Table()> f) { return [f] { return write_csv(f()); }; };

  LinalgArgs la;
  auto* linalg = app.add_subcommand("linalg", "Matrix operations on CSV matrices");
  linalg->add_option("--op", la.op, "matmul, add, sub, mul, div, transpose, inv, det, norm, lu, qr, cholesky, svd, pca");
  linalg->add_option("--a", la.a, "Matrix CSV");
  linalg->add_option("--b", la.b, "Second matrix CSV");
  linalg->add_option("--scalar", la.scalar, "Scalar operand when --b is absent");
  linalg->add_option("--algo", la.algo, "naive or strassen");
  linalg->add_option("--part", la.part, "Factor to print (l/u/perm, q/r, u/s/v)");
  linalg->add_option("--kind", la.kind, "l1, l2 or frobenius");
  linalg->add_option("--k", la.k, "PCA components");
  linalg->callback([&] { action = table_action([&] { return cmd_linalg(la); }); });

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve A x = b");
  solve->add_option("--a", sa.a, "Matrix CSV");
  solve->add_option("--b", sa.b, "Right-hand side CSV");
  solve->add_option("--method", sa.method, "gauss, lu, qr, cholesky, inverse, jacobi, gauss-seidel, cg");
  solve->add_option("--tol", sa.tol);
  solve->add_option("--max-iter", sa.max_iter);
  solve->callback([&] { action = table_action([&] { return cmd_solve(sa); }); });

  std::string eig_path;
  auto* eigc = app.add_subcommand("eig", "Eigenvalues and eigenvectors");
  eigc->add_option("--a", eig_path, "Matrix CSV");
  eigc->callback([&] { action = table_action([&] { return cmd_eig(eig_path); }); });

  RootsArgs ra;
  auto* rootsc = app.add_subcommand("roots", "Root finding on built-in functions");
  rootsc->add_option("--fn", ra.fn, "x2m4, quad, sin, cube, circlepara");
  rootsc->add_option("--method", ra.method, "bisection, newton, secant, fixed-point, newton-system, broyden");
  rootsc->add_option("--a", ra.a, "Bracket start");
  rootsc->add_option("--b", ra.b, "Bracket end");
  rootsc->add_option("--x", ra.x, "Starting point");
  rootsc->add_option("--x1", ra.x1, "Second secant point");
  rootsc->add_option("--x0", ra.x0, "System start, comma separated");
  rootsc->add_option("--tol", ra.tol);
  rootsc->add_option("--max-iter", ra.max_iter);
  rootsc->callback([&] { action = table_action([&] { return cmd_roots(ra); }); });

  InterpArgs ia;
  auto* interpc = app.add_subcommand("interp", "Sample an interpolant through CSV knots");
  interpc->add_option("--knots", ia.knots, "CSV with columns x, y");
  interpc->add_option("--method", ia.method, "lagrange, newton, spline, linear");
  interpc->add_option("--from", ia.from);
  interpc->add_option("--to", ia.to);
  interpc->add_option("--samples", ia.samples);
  interpc->callback([&] { action = table_action([&] { return cmd_interp(ia); }); });

  IntegrateArgs qa;
  auto* integ = app.add_subcommand("integrate", "Quadrature of a built-in integrand");
  integ->add_option("--fn", qa.fn, "x2m4, quad, sin, cube");
  integ->add_option("--method", qa.method, "trapezoid, simpson, gauss");
  integ->add_option("--a", qa.a);
  integ->add_option("--b", qa.b);
  integ->add_option("--n", qa.n, "Panels, or nodes for gauss");
  integ->callback([&] { action = table_action([&] { return cmd_integrate(qa); }); });

  FftArgs fa;
  auto* fftc = app.add_subcommand("fft", "Spectrum of a one-column CSV signal");
  fftc->add_option("--in", fa.in);
  fftc->add_option("--spacing", fa.spacing, "Sample spacing");
  fftc->callback([&] { action = table_action([&] { return cmd_fft(fa); }); });

  LowpassArgs lp;
  auto* lowc = app.add_subcommand("image-lowpass", "Radial low-pass filter on a P2 image");
  lowc->add_option("--in", lp.in);
  lowc->add_option("--cutoff", lp.cutoff, "Cycles per pixel");
  lowc->add_option("--spectrum", lp.spectrum, "Also write the log-magnitude spectrum here");
  lowc->callback([&] { action = [&] { return cmd_image_lowpass(lp); }; });

  OptimizeArgs oa;
  auto* optc = app.add_subcommand("optimize", "Minimize a built-in objective");
  optc->add_option("--fn", oa.fn, "quadratic1d, bowl2d, rosenbrock");
  optc->add_option("--method", oa.method, "gd, momentum, adagrad, rmsprop, adam, adamw, newton, bfgs, lbfgs, nelder-mead");
  optc->add_option("--x0", oa.x0, "Start, comma separated");
  optc->add_option("--eta", oa.eta);
  optc->add_option("--iters", oa.iters);
  optc->add_option("--beta", oa.beta);
  optc->add_option("--beta1", oa.beta1);
  optc->add_option("--beta2", oa.beta2);
  optc->add_option("--eps", oa.eps);
  optc->add_option("--weight-decay", oa.weight_decay);
  optc->add_option("--clip", oa.clip, "Clip gradients to this norm");
  optc->add_option("--schedule", oa.schedule, "constant, step, exponential, cosine");
  optc->add_option("--drop", oa.drop);
  optc->add_option("--drop-epoch", oa.drop_epoch);
  optc->add_option("--lambda", oa.lambda);
  optc->add_option("--eta-min", oa.eta_min);
  optc->add_option("--t0", oa.t0);
  optc->add_option("--t-mult", oa.t_mult);
  optc->add_option("--tol", oa.tol, "Default 1e-10 for nelder-mead, 1e-6 otherwise");
  optc->add_option("--max-iter", oa.max_iter);
  optc->add_option("--memory", oa.memory);
  optc->callback([&] { action = table_action([&] { return cmd_optimize(oa); }); });

  OdeArgs oda;
  auto* odec = app.add_subcommand("ode", "Integrate a built-in initial value problem");
  odec->add_option("--problem", oda.problem, "decay, stiff, lif, lti");
  odec->add_option("--method", oda.method, "euler, rk4, backward-euler (lif and lti always use rk4)");
  odec->add_option("--h", oda.h);
  odec->add_option("--t-end", oda.t_end);
  odec->add_option("--y0", oda.y0);
  odec->add_option("--tau", oda.tau);
  odec->add_option("--v-rest", oda.v_rest);
  odec->add_option("--r", oda.r);
  odec->add_option("--current", oda.current);
  odec->add_option("--k", oda.k);
  odec->callback([&] { action = table_action([&] { return cmd_ode(oda); }); });

  HeatArgs ha;
  auto* heatc = app.add_subcommand("heat", "Explicit 1D heat equation with a sine initial state");
  heatc->add_option("--alpha", ha.alpha);
  heatc->add_option("--L", ha.length);
  heatc->add_option("--nx", ha.nx);
  heatc->add_option("--nt", ha.nt);
  heatc->add_option("--t", ha.t_total);
  heatc->callback([&] { action = table_action([&] { return cmd_heat(ha); }); });

  XorArgs xa;
  auto* xorc = app.add_subcommand("xor", "Train the XOR network, print the loss history");
  xorc->add_option("--eta", xa.eta);
  xorc->add_option("--epochs", xa.epochs);
  xorc->add_option("--hidden", xa.hidden);
  xorc->add_option("--every", xa.every, "Print every n-th epoch");
  xorc->callback([&] { action = table_action([&] { return cmd_xor(xa, common.seed); }); });

  QlearnArgs qla;
  auto* qc = app.add_subcommand("qlearn", "Q-learning on the ring world, print the Q-table");
  qc->add_option("--alpha", qla.alpha);
  qc->add_option("--gamma", qla.gamma);
  qc->add_option("--epsilon", qla.epsilon);
  qc->add_option("--episodes", qla.episodes);
  qc->callback([&] { action = table_action([&] { return cmd_qlearn(qla, common.seed); }); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "numcli: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const std::string bytes = action();
    if (common.out.empty()) {
      out << bytes;
    } else {
      write_file(common.out, bytes);
    }
    return kExitOk;
  } catch (const NumericError& e) {
    err << "numcli: " << e.what() << "\n";
    return e.status == DN_INVALID_ARGUMENT ? kExitUsage : kExitNumeric;
  } catch (const IoError& e) {
    err << "numcli: " << e.what() << "\n";
    return e.kind() == IoErrorKind::NonFinite ? kExitNumeric : kExitUsage;
  } catch (const UsageError& e) {
    err << "numcli: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numcli: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace numcli
