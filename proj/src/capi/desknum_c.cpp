// extern "C" wrappers. Every entry point funnels exceptions through guarded()
// so nothing escapes across the C boundary.

#include "desknum/desknum.h"

#include <algorithm>
#include <cmath>
#include <new>
#include <numbers>
#include <string>

#include "desknum/dynamics.hpp"
#include "desknum/interp.hpp"
#include "desknum/lindecomp.hpp"
#include "desknum/microlearn.hpp"
#include "desknum/optimize.hpp"
#include "desknum/quadrature.hpp"
#include "desknum/roots.hpp"
#include "desknum/spectral.hpp"

using namespace desknum;

struct dn_matrix {
  Matrix m;
};

struct dn_optimizer {
  dn_step_kind kind;
  opt::OptConfig cfg;
  opt::OptState state;
  std::size_t n;
};

struct dn_mlp {
  ml::MlpParams params;
};

namespace {

thread_local std::string last_error;

template <typename F>
dn_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return DN_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<dn_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown exception";
  }
  return DN_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

const Matrix& mat(const dn_matrix* h) {
  need(h, "matrix handle");
  return h->m;
}

dn_matrix* wrap(Matrix m) { return new dn_matrix{std::move(m)}; }

// Assigns only if the caller asked for the output.
void emit(dn_matrix** out, Matrix m) {
  if (out) *out = wrap(std::move(m));
}

std::span<const double> view(const double* p, std::size_t n) {
  if (n > 0) need(p, "input array");
  return {p, n};
}

void copy_out(std::span<const double> v, double* out) {
  if (!v.empty()) need(out, "output array");
  std::copy(v.begin(), v.end(), out);
}

Matrix trajectory_matrix(const dyn::Trajectory& tr) {
  const std::size_t n = tr.ys.cols();
  Matrix out(tr.ts.size(), n + 1);
  for (std::size_t i = 0; i < tr.ts.size(); ++i) {
    out(i, 0) = tr.ts[i];
    for (std::size_t j = 0; j < n; ++j) out(i, j + 1) = tr.ys(i, j);
  }
  return out;
}

spectral::Image2D to_image(const Matrix& m) {
  return {m.rows(), m.cols(), Vector(m.data().begin(), m.data().end())};
}

Matrix from_image(const spectral::Image2D& img) { return Matrix(img.rows, img.cols, img.data); }

roots::ScalarFn scalar(dn_scalar_fn f, void* ctx) {
  need(reinterpret_cast<const void*>(f), "callback");
  return [f, ctx](double x) { return f(x, ctx); };
}

void fill_report(const roots::RootReport& r, dn_root_report* out) {
  need(out, "report");
  *out = {r.root, r.iterations, r.residual, r.converged ? 1 : 0};
}

}  // namespace

extern "C" {

const char* dn_status_name(dn_status status) {
  if (status == DN_OK) return "Ok";
  if (status == DN_INTERNAL) return "Internal";
  const auto name = error_name(static_cast<ErrorCode>(status));
  return name.data();  // names are string literals
}

const char* dn_last_error(void) { return last_error.c_str(); }

// ---- matrices

dn_status dn_matrix_create(size_t rows, size_t cols, const double* data, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    if (data == nullptr) {
      *out = wrap(Matrix(rows, cols));
      return;
    }
    *out = wrap(Matrix(rows, cols, std::vector<double>(data, data + rows * cols)));
  });
}

dn_status dn_matrix_identity(size_t n, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(Matrix::identity(n));
  });
}

dn_status dn_matrix_copy(const dn_matrix* m, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(mat(m));
  });
}

void dn_matrix_free(dn_matrix* m) { delete m; }
size_t dn_matrix_rows(const dn_matrix* m) { return m ? m->m.rows() : 0; }
size_t dn_matrix_cols(const dn_matrix* m) { return m ? m->m.cols() : 0; }
const double* dn_matrix_data(const dn_matrix* m) { return m ? m->m.data().data() : nullptr; }

dn_status dn_matrix_get(const dn_matrix* m, size_t i, size_t j, double* out) {
  return guarded([&] {
    const Matrix& a = mat(m);
    need(out, "out");
    if (i >= a.rows() || j >= a.cols()) fail(ErrorCode::InvalidArgument, "matrix index out of range");
    *out = a(i, j);
  });
}

dn_status dn_elementwise(const dn_matrix* a, const dn_matrix* b, dn_binary_op op, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(ew_binary(mat(a), mat(b), static_cast<BinaryOp>(op)));
  });
}

dn_status dn_elementwise_scalar(const dn_matrix* a, double b, dn_binary_op op, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(ew_binary(mat(a), b, static_cast<BinaryOp>(op)));
  });
}

dn_status dn_matmul(const dn_matrix* a, const dn_matrix* b, dn_matmul_algo algo, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(matmul(mat(a), mat(b), static_cast<MatmulAlgo>(algo)));
  });
}

dn_status dn_transpose(const dn_matrix* a, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(transpose(mat(a)));
  });
}

dn_status dn_reshape(const dn_matrix* a, size_t rows, size_t cols, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(reshape(mat(a), rows, cols));
  });
}

dn_status dn_matrix_norm(const dn_matrix* a, dn_norm_kind kind, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = norm(mat(a), static_cast<NormKind>(kind));
  });
}

dn_status dn_vector_norm(const double* x, size_t n, dn_norm_kind kind, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = norm(view(x, n), static_cast<NormKind>(kind));
  });
}

dn_status dn_dot(const double* a, const double* b, size_t n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = dot(view(a, n), view(b, n));
  });
}

dn_status dn_cross3(const double* a, const double* b, double* out3) {
  return guarded([&] { copy_out(cross3(view(a, 3), view(b, 3)), out3); });
}

dn_status dn_cosine_similarity(const double* a, const double* b, size_t n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = cosine_similarity(view(a, n), view(b, n));
  });
}

dn_status dn_euclidean_distance(const double* a, const double* b, size_t n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = euclidean_distance(view(a, n), view(b, n));
  });
}

dn_status dn_error_metrics(double exact, double approx, double* absolute, double* relative) {
  return guarded([&] {
    const ErrorPair e = error_metrics(exact, approx);
    if (absolute) *absolute = e.absolute;
    if (relative) *relative = e.relative;
  });
}

// ---- linear algebra

dn_status dn_solve(const dn_matrix* a, const double* b, dn_direct_method method, double* x) {
  return guarded([&] {
    const Matrix& m = mat(a);
    copy_out(solve_direct(m, view(b, m.rows()), static_cast<DirectMethod>(method)), x);
  });
}

dn_status dn_solve_iterative(const dn_matrix* a, const double* b, const double* x0, dn_iterative_method method,
                             double tol, size_t max_iter, double* x, dn_iter_report* report) {
  return guarded([&] {
    const Matrix& m = mat(a);
    const Vector zero(m.rows(), 0.0);
    const std::span<const double> start = x0 ? view(x0, m.rows()) : std::span<const double>(zero);
    const IterativeSolution s =
        solve_iterative(m, view(b, m.rows()), start, static_cast<IterativeMethod>(method), {tol, max_iter});
    copy_out(s.x, x);
    if (report) *report = {s.report.iterations, s.report.residual, s.report.converged ? 1 : 0};
  });
}

dn_status dn_det(const dn_matrix* a, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = det(mat(a));
  });
}

dn_status dn_inv(const dn_matrix* a, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(inv(mat(a)));
  });
}

dn_status dn_lu(const dn_matrix* a, dn_matrix** l, dn_matrix** u, size_t* perm) {
  return guarded([&] {
    LuFactors f = lu(mat(a));
    if (perm) std::copy(f.perm.begin(), f.perm.end(), perm);
    emit(l, std::move(f.l));
    emit(u, std::move(f.u));
  });
}

dn_status dn_qr(const dn_matrix* a, dn_matrix** q, dn_matrix** r) {
  return guarded([&] {
    QrFactors f = qr(mat(a));
    emit(q, std::move(f.q));
    emit(r, std::move(f.r));
  });
}

dn_status dn_cholesky(const dn_matrix* a, dn_matrix** l) {
  return guarded([&] {
    need(l, "out");
    *l = wrap(cholesky(mat(a)));
  });
}

dn_status dn_eig(const dn_matrix* a, double* values, dn_matrix** vectors) {
  return guarded([&] {
    EigResult e = eig(mat(a));
    copy_out(e.values, values);
    emit(vectors, std::move(e.vectors));
  });
}

dn_status dn_svd(const dn_matrix* a, dn_matrix** u, double* sigma, dn_matrix** v) {
  return guarded([&] {
    SvdResult s = svd(mat(a));
    copy_out(s.sigma, sigma);
    emit(u, std::move(s.u));
    emit(v, std::move(s.v));
  });
}

dn_status dn_pca(const dn_matrix* x, size_t k, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(pca(mat(x), k));
  });
}

dn_status dn_polyfit(const double* xs, const double* ys, size_t n, size_t degree, double* coeffs) {
  return guarded([&] { copy_out(polyfit(view(xs, n), view(ys, n), degree), coeffs); });
}

dn_status dn_lstsq(const dn_matrix* a, const double* b, double* x) {
  return guarded([&] {
    const Matrix& m = mat(a);
    copy_out(lstsq(m, view(b, m.rows())), x);
  });
}

// ---- roots

dn_status dn_bisection(dn_scalar_fn f, void* ctx, double a, double b, double tol, size_t max_iter,
                       dn_root_report* out) {
  return guarded([&] { fill_report(roots::bisection(scalar(f, ctx), a, b, tol, max_iter), out); });
}

dn_status dn_newton(dn_scalar_fn f, dn_scalar_fn df, void* ctx, double x0, double tol, size_t max_iter,
                    dn_root_report* out) {
  return guarded([&] {
    std::optional<roots::ScalarFn> d;
    if (df) d = scalar(df, ctx);
    fill_report(roots::newton(scalar(f, ctx), d, x0, tol, max_iter), out);
  });
}

dn_status dn_secant(dn_scalar_fn f, void* ctx, double x0, double x1, double tol, size_t max_iter,
                    dn_root_report* out) {
  return guarded([&] { fill_report(roots::secant(scalar(f, ctx), x0, x1, tol, max_iter), out); });
}

dn_status dn_fixed_point(dn_scalar_fn g, void* ctx, double x0, double tol, size_t max_iter, dn_root_report* out) {
  return guarded([&] { fill_report(roots::fixed_point(scalar(g, ctx), x0, tol, max_iter), out); });
}

dn_status dn_solve_system(dn_system_method method, dn_vector_fn f, void* ctx, const double* x0, size_t n, double tol,
                          size_t max_iter, double* root, size_t* iterations, double* residual) {
  return guarded([&] {
    need(reinterpret_cast<const void*>(f), "callback");
    const roots::VectorFn fn = [f, ctx](std::span<const double> x) {
      Vector out(x.size());
      f(x.data(), x.size(), out.data(), ctx);
      return out;
    };
    const roots::SystemReport r = method == DN_BROYDEN ? roots::broyden(fn, view(x0, n), {}, tol, max_iter)
                                                       : roots::newton_system(fn, std::nullopt, view(x0, n), tol, max_iter);
    copy_out(r.root, root);
    if (iterations) *iterations = r.iterations;
    if (residual) *residual = r.residual;
  });
}

// ---- interpolation

dn_status dn_interpolate(dn_interp_method method, const double* xs, const double* ys, size_t n, const double* queries,
                         size_t m, double* out) {
  return guarded([&] {
    const auto kx = view(xs, n);
    const auto ky = view(ys, n);
    const auto q = view(queries, m);
    Vector vals(m);
    switch (method) {
      case DN_INTERP_LAGRANGE:
        for (std::size_t i = 0; i < m; ++i) vals[i] = interp::lagrange_eval(kx, ky, q[i]);
        break;
      case DN_INTERP_NEWTON: {
        const interp::DividedDiffPoly p(kx, ky);
        for (std::size_t i = 0; i < m; ++i) vals[i] = p(q[i]);
        break;
      }
      case DN_INTERP_SPLINE: {
        const interp::CubicSpline s(kx, ky);
        for (std::size_t i = 0; i < m; ++i) vals[i] = s(q[i]);
        break;
      }
      case DN_INTERP_LINEAR:
        for (std::size_t i = 0; i < m; ++i) vals[i] = interp::linear_interp(kx, ky, q[i]);
        break;
      default:
        fail(ErrorCode::InvalidArgument, "unknown interpolation method");
    }
    copy_out(vals, out);
  });
}

// ---- quadrature

dn_status dn_integrate(dn_quad_method method, dn_scalar_fn f, void* ctx, double a, double b, int n, double* out) {
  return guarded([&] {
    need(out, "out");
    const quad::Fn fn = scalar(f, ctx);
    switch (method) {
      case DN_TRAPEZOID: *out = quad::trapezoid(fn, a, b, n); return;
      case DN_SIMPSON: *out = quad::simpson(fn, a, b, n); return;
      case DN_GAUSS_LEGENDRE: *out = quad::gauss_legendre(fn, a, b, n); return;
    }
    fail(ErrorCode::InvalidArgument, "unknown quadrature method");
  });
}

dn_status dn_trapezoid_samples(const double* xs, const double* ys, size_t n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = quad::trapezoid_samples(view(xs, n), view(ys, n));
  });
}

dn_status dn_finite_diff(dn_scalar_fn f, void* ctx, double x, double h, dn_diff_scheme scheme, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = quad::finite_diff(scalar(f, ctx), x, h, static_cast<quad::DiffScheme>(scheme));
  });
}

// ---- spectral

namespace {

dn_status transform(const double* re, const double* im, size_t n, double* out_re, double* out_im, bool inverse) {
  return guarded([&] {
    const auto r = view(re, n);
    spectral::ComplexVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = {r[i], im ? im[i] : 0.0};
    const spectral::ComplexVec y = inverse ? spectral::ifft(x) : spectral::fft(x);
    if (n > 0) {
      need(out_re, "output array");
      need(out_im, "output array");
    }
    for (std::size_t i = 0; i < n; ++i) {
      out_re[i] = y[i].real();
      out_im[i] = y[i].imag();
    }
  });
}

}  // namespace

dn_status dn_fft(const double* re, const double* im, size_t n, double* out_re, double* out_im) {
  return transform(re, im, n, out_re, out_im, false);
}

dn_status dn_ifft(const double* re, const double* im, size_t n, double* out_re, double* out_im) {
  return transform(re, im, n, out_re, out_im, true);
}

dn_status dn_fft_freqs(size_t n, double spacing, double* out) {
  return guarded([&] { copy_out(spectral::fft_freqs(n, spacing), out); });
}

dn_status dn_convolve(const double* f, size_t nf, const double* g, size_t ng, dn_convolve_method method, double* out) {
  return guarded([&] {
    const auto a = view(f, nf);
    const auto b = view(g, ng);
    copy_out(method == DN_CONVOLVE_FFT ? spectral::convolve_fft(a, b) : spectral::convolve_direct(a, b), out);
  });
}

dn_status dn_lowpass1d(const double* signal, size_t n, double sample_rate, double cutoff, double* out) {
  return guarded([&] { copy_out(spectral::lowpass1d(view(signal, n), sample_rate, cutoff), out); });
}

dn_status dn_peak_frequency(const double* signal, size_t n, double sample_rate, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = spectral::peak_frequency(view(signal, n), sample_rate);
  });
}

dn_status dn_lowpass2d(const dn_matrix* img, double cutoff, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(from_image(spectral::lowpass2d(to_image(mat(img)), cutoff)));
  });
}

dn_status dn_log_magnitude_spectrum(const dn_matrix* img, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(from_image(spectral::log_magnitude_spectrum(to_image(mat(img)))));
  });
}

dn_status dn_spectral_pool2d(const dn_matrix* img, size_t keep, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(from_image(spectral::spectral_pool2d(to_image(mat(img)), keep)));
  });
}

// ---- optimization

dn_status dn_minimize(dn_minimizer method, dn_objective_fn f, dn_gradient_fn grad, dn_hessian_fn hess, void* ctx,
                      const double* x0, size_t n, double tol, size_t max_iter, size_t memory, double* x,
                      dn_minimize_report* report, dn_matrix** trajectory) {
  return guarded([&] {
    const opt::Objective fn = [f, ctx](std::span<const double> p) { return f(p.data(), p.size(), ctx); };
    const opt::Gradient gn = [grad, ctx](std::span<const double> p) {
      Vector g(p.size());
      grad(p.data(), p.size(), g.data(), ctx);
      return g;
    };
    const opt::Hessian hn = [hess, ctx](std::span<const double> p) {
      Matrix h(p.size(), p.size());
      hess(p.data(), p.size(), h.data().data(), ctx);
      return h;
    };
    const auto start = view(x0, n);
    opt::MinimizeResult r;
    switch (method) {
      case DN_MIN_NEWTON:
        need(reinterpret_cast<const void*>(grad), "gradient callback");
        need(reinterpret_cast<const void*>(hess), "hessian callback");
        r = opt::newton_minimize(gn, hn, start, tol, max_iter);
        break;
      case DN_MIN_BFGS:
      case DN_MIN_LBFGS:
        need(reinterpret_cast<const void*>(f), "objective callback");
        need(reinterpret_cast<const void*>(grad), "gradient callback");
        r = method == DN_MIN_BFGS ? opt::bfgs_minimize(fn, gn, start, tol, max_iter)
                                  : opt::lbfgs_minimize(fn, gn, start, memory, tol, max_iter);
        break;
      case DN_MIN_NELDER_MEAD:
        need(reinterpret_cast<const void*>(f), "objective callback");
        r = opt::nelder_mead(fn, start, tol, max_iter);
        break;
      default:
        fail(ErrorCode::InvalidArgument, "unknown minimizer");
    }
    if (method == DN_MIN_NEWTON && f) r.f = fn(r.x);
    copy_out(r.x, x);
    if (report) *report = {r.f, r.iterations, r.converged ? 1 : 0};
    if (trajectory) {
      Matrix t(r.trajectory.size(), n);
      for (std::size_t i = 0; i < r.trajectory.size(); ++i) std::copy(r.trajectory[i].begin(), r.trajectory[i].end(), t.row_span(i).begin());
      *trajectory = wrap(std::move(t));
    }
  });
}

dn_opt_config dn_opt_config_default(void) {
  const opt::OptConfig c;
  return {c.eta, c.beta, c.beta1, c.beta2, c.eps, c.weight_decay};
}

dn_status dn_optimizer_create(dn_step_kind kind, const dn_opt_config* cfg, size_t n, dn_optimizer** out) {
  return guarded([&] {
    need(out, "out");
    if (kind < DN_STEP_SGD || kind > DN_STEP_ADAMW) fail(ErrorCode::InvalidArgument, "unknown optimizer kind");
    const dn_opt_config c = cfg ? *cfg : dn_opt_config_default();
    *out = new dn_optimizer{kind, {c.eta, c.beta, c.beta1, c.beta2, c.eps, c.weight_decay}, opt::OptState::zeros(n), n};
  });
}

void dn_optimizer_free(dn_optimizer* o) { delete o; }

dn_status dn_optimizer_set_eta(dn_optimizer* o, double eta) {
  return guarded([&] {
    need(o, "optimizer");
    if (!(eta > 0.0) || !std::isfinite(eta)) fail(ErrorCode::InvalidArgument, "eta must be positive");
    o->cfg.eta = eta;
  });
}

dn_status dn_optimizer_step(dn_optimizer* o, double* theta, const double* g) {
  return guarded([&] {
    need(o, "optimizer");
    const auto th = view(theta, o->n);
    const auto gr = view(g, o->n);
    Vector next;
    if (o->kind == DN_STEP_SGD) {
      next = axpy(-o->cfg.eta, gr, th);
      if (!all_finite(next)) fail(ErrorCode::NonFinite, "sgd: update produced a non-finite value");
      ++o->state.t;
    } else {
      // StepKind starts at Momentum, one after the plain step.
      next = opt::optimizer_step(static_cast<opt::StepKind>(o->kind - 1), th, gr, o->state, o->cfg);
    }
    std::copy(next.begin(), next.end(), theta);
  });
}

dn_schedule dn_schedule_default(void) {
  const opt::Schedule s;
  return {static_cast<dn_schedule_kind>(s.kind), s.eta0, s.drop_factor, s.drop_epoch, s.lambda,
          s.eta_min, s.eta_max, s.t0, s.t_mult};
}

dn_status dn_lr_at(const dn_schedule* sched, size_t t, double* out) {
  return guarded([&] {
    need(sched, "schedule");
    need(out, "out");
    const opt::Schedule s{static_cast<opt::ScheduleKind>(sched->kind), sched->eta0, sched->drop_factor,
                          sched->drop_epoch, sched->lambda, sched->eta_min, sched->eta_max, sched->t0, sched->t_mult};
    *out = opt::lr_at(s, t);
  });
}

dn_status dn_clip_by_norm(const double* g, size_t n, double threshold, double* out) {
  return guarded([&] { copy_out(opt::clip_by_norm(view(g, n), threshold), out); });
}

dn_status dn_sgd_linreg(const double* xs, const double* ys, size_t n, size_t batch, double eta, size_t iters,
                        uint64_t seed, double* theta) {
  return guarded([&] { copy_out(opt::sgd_linreg(view(xs, n), view(ys, n), batch, eta, iters, seed), theta); });
}

// ---- dynamics

dn_status dn_ode_solve(dn_ode_method method, dn_rhs_fn f, void* ctx, double t0, const double* y0, size_t n, double h,
                       double t_end, dn_matrix** out) {
  return guarded([&] {
    need(reinterpret_cast<const void*>(f), "callback");
    need(out, "out");
    const auto y = view(y0, n);
    dyn::IvpProblem p{[f, ctx](double t, std::span<const double> s) {
                        Vector d(s.size());
                        f(t, s.data(), s.size(), d.data(), ctx);
                        return d;
                      },
                      t0, Vector(y.begin(), y.end()), h, t_end};
    dyn::Trajectory tr;
    switch (method) {
      case DN_EULER: tr = dyn::euler_solve(p); break;
      case DN_RK4: tr = dyn::rk4_solve(p); break;
      case DN_BACKWARD_EULER: tr = dyn::backward_euler_solve(p); break;
      default: fail(ErrorCode::InvalidArgument, "unknown ODE method");
    }
    *out = wrap(trajectory_matrix(tr));
  });
}

dn_status dn_lif_simulate(double tau_m, double v_rest, double r_m, double current, double h, double t_end,
                          dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(trajectory_matrix(dyn::lif_simulate({tau_m, v_rest, r_m, current}, h, t_end)));
  });
}

dn_status dn_lti_step_response(double k, double tau, double h, double t_end, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(trajectory_matrix(dyn::lti_step_response(k, tau, h, t_end)));
  });
}

dn_status dn_heat_stability_factor(double alpha, double length, size_t nx, size_t nt, double t_total, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = dyn::heat_stability_factor({alpha, length, nx, nt, t_total, {}});
  });
}

dn_status dn_heat1d(double alpha, double length, size_t nx, size_t nt, double t_total, dn_scalar_fn u0, void* ctx,
                    dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    dyn::HeatProblem p{alpha, length, nx, nt, t_total, {}};
    if (u0) {
      p.u0 = scalar(u0, ctx);
    } else {
      p.u0 = [length](double x) { return std::sin(std::numbers::pi * x / length); };
    }
    const dyn::HeatResult r = dyn::heat1d_explicit(p);
    Matrix m(r.x.size(), 2);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      m(i, 0) = r.x[i];
      m(i, 1) = r.u[i];
    }
    *out = wrap(std::move(m));
  });
}

// ---- micro-learning

dn_status dn_mlp_create(const size_t* sizes, size_t layers, uint64_t seed, dn_mlp** out) {
  return guarded([&] {
    need(out, "out");
    if (layers > 0) need(sizes, "sizes");
    *out = new dn_mlp{ml::mlp_init(std::vector<std::size_t>(sizes, sizes + layers), seed)};
  });
}

void dn_mlp_free(dn_mlp* mlp) { delete mlp; }

dn_status dn_mlp_forward(const dn_mlp* mlp, const dn_matrix* x, dn_matrix** out) {
  return guarded([&] {
    need(mlp, "mlp");
    need(out, "out");
    *out = wrap(ml::mlp_forward(mlp->params, mat(x)).output());
  });
}

dn_status dn_mlp_loss(const dn_mlp* mlp, const dn_matrix* x, const dn_matrix* y, double* out) {
  return guarded([&] {
    need(mlp, "mlp");
    need(out, "out");
    *out = ml::mlp_loss(mlp->params, mat(x), mat(y));
  });
}

dn_status dn_mlp_train(dn_mlp* mlp, const dn_matrix* x, const dn_matrix* y, double eta, size_t epochs,
                       double* loss_history) {
  return guarded([&] {
    need(mlp, "mlp");
    ml::TrainResult r = ml::mlp_train(mlp->params, mat(x), mat(y), eta, epochs);
    if (loss_history) std::copy(r.loss_history.begin(), r.loss_history.end(), loss_history);
    mlp->params = std::move(r.params);
  });
}

dn_status dn_batchnorm(const dn_matrix* x, const double* gamma, const double* beta, double eps, dn_matrix** out) {
  return guarded([&] {
    need(out, "out");
    const Matrix& m = mat(x);
    const auto g = view(gamma, m.cols());
    const auto b = view(beta, m.cols());
    *out = wrap(ml::batchnorm_forward(m, {Vector(g.begin(), g.end()), Vector(b.begin(), b.end()), eps}));
  });
}

dn_status dn_qlearn(double alpha, double gamma, double epsilon, size_t episodes, uint64_t seed, dn_matrix** q) {
  return guarded([&] {
    need(q, "out");
    *q = wrap(ml::q_learn(ml::GridEnv{}, alpha, gamma, epsilon, episodes, seed));
  });
}

dn_status dn_greedy_rollout(const dn_matrix* q, size_t start, size_t max_steps, size_t* states, size_t* count) {
  return guarded([&] {
    need(states, "states");
    need(count, "count");
    const auto path = ml::greedy_rollout(ml::GridEnv{}, mat(q), start, max_steps);
    std::copy(path.begin(), path.end(), states);
    *count = path.size();
  });
}

}  // extern "C"
