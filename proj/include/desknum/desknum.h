/* C interface to the desknum numerical library.
 *
 * Every function returns a dn_status; DN_OK is zero. On failure the message of
 * the last error on the calling thread is available from dn_last_error().
 * Outputs are written only on success. Handles are opaque and must be released
 * with the matching *_free function; passing NULL to a free function is a no-op.
 */
#ifndef DESKNUM_H
#define DESKNUM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DN_API __declspec(dllexport)
#else
#define DN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the library's error categories one to one. */
typedef enum dn_status {
  DN_OK = 0,
  DN_INVALID_ARGUMENT,
  DN_SHAPE_MISMATCH,
  DN_SIZE_MISMATCH,
  DN_DIVISION_BY_ZERO,
  DN_EMPTY_INPUT,
  DN_ZERO_NORM,
  DN_RELATIVE_UNDEFINED,
  DN_NON_FINITE,
  DN_SINGULAR,
  DN_NOT_SPD,
  DN_ZERO_DIAGONAL,
  DN_NO_CONVERGENCE,
  DN_BAD_RANK,
  DN_RANK_DEFICIENT,
  DN_DOMAIN_ERROR,
  DN_NO_SIGN_CHANGE,
  DN_MAX_ITERATIONS,
  DN_ZERO_DERIVATIVE,
  DN_FLAT_SECANT,
  DN_SINGULAR_JACOBIAN,
  DN_SINGULAR_APPROXIMATION,
  DN_DUPLICATE_KNOTS,
  DN_UNSORTED_KNOTS,
  DN_TOO_FEW_POINTS,
  DN_BAD_PARTITION,
  DN_ODD_PARTITION,
  DN_BAD_ORDER,
  DN_NOT_POWER_OF_TWO,
  DN_BAD_CUTOFF,
  DN_BAD_KEEP,
  DN_NO_PEAK,
  DN_SINGULAR_HESSIAN,
  DN_LINE_SEARCH_FAILURE,
  DN_NEWTON_FAILURE,
  DN_UNSTABLE,
  DN_BAD_ARCHITECTURE,
  DN_TOO_SMALL_BATCH,
  DN_INTERNAL = 100 /* unexpected exception, e.g. allocation failure */
} dn_status;

/* Error name such as "Singular"; "Ok" for DN_OK. Static storage. */
DN_API const char* dn_status_name(dn_status status);
/* Message of the last failure on this thread, "" if none. Valid until the next call. */
DN_API const char* dn_last_error(void);

/* ---- matrices ---- */

typedef struct dn_matrix dn_matrix;

/* Row-major copy of `data`; NULL data gives a zero matrix. */
DN_API dn_status dn_matrix_create(size_t rows, size_t cols, const double* data, dn_matrix** out);
DN_API dn_status dn_matrix_identity(size_t n, dn_matrix** out);
DN_API dn_status dn_matrix_copy(const dn_matrix* m, dn_matrix** out);
DN_API void dn_matrix_free(dn_matrix* m);
DN_API size_t dn_matrix_rows(const dn_matrix* m);
DN_API size_t dn_matrix_cols(const dn_matrix* m);
/* Borrowed row-major storage, valid while the handle lives. */
DN_API const double* dn_matrix_data(const dn_matrix* m);
DN_API dn_status dn_matrix_get(const dn_matrix* m, size_t i, size_t j, double* out);

typedef enum dn_binary_op { DN_ADD, DN_SUB, DN_MUL, DN_DIV } dn_binary_op;
typedef enum dn_matmul_algo { DN_MATMUL_NAIVE, DN_MATMUL_STRASSEN } dn_matmul_algo;
typedef enum dn_norm_kind { DN_NORM_L1, DN_NORM_L2, DN_NORM_FROBENIUS } dn_norm_kind;

DN_API dn_status dn_elementwise(const dn_matrix* a, const dn_matrix* b, dn_binary_op op, dn_matrix** out);
DN_API dn_status dn_elementwise_scalar(const dn_matrix* a, double b, dn_binary_op op, dn_matrix** out);
DN_API dn_status dn_matmul(const dn_matrix* a, const dn_matrix* b, dn_matmul_algo algo, dn_matrix** out);
DN_API dn_status dn_transpose(const dn_matrix* a, dn_matrix** out);
DN_API dn_status dn_reshape(const dn_matrix* a, size_t rows, size_t cols, dn_matrix** out);
DN_API dn_status dn_matrix_norm(const dn_matrix* a, dn_norm_kind kind, double* out);

DN_API dn_status dn_vector_norm(const double* x, size_t n, dn_norm_kind kind, double* out);
DN_API dn_status dn_dot(const double* a, const double* b, size_t n, double* out);
DN_API dn_status dn_cross3(const double* a, const double* b, double* out3);
DN_API dn_status dn_cosine_similarity(const double* a, const double* b, size_t n, double* out);
DN_API dn_status dn_euclidean_distance(const double* a, const double* b, size_t n, double* out);
DN_API dn_status dn_error_metrics(double exact, double approx, double* absolute, double* relative);

/* ---- linear systems and decompositions ---- */

typedef enum dn_direct_method { DN_GAUSS, DN_LU, DN_QR, DN_CHOLESKY, DN_INVERSE } dn_direct_method;
typedef enum dn_iterative_method { DN_JACOBI, DN_GAUSS_SEIDEL, DN_CG } dn_iterative_method;

typedef struct dn_iter_report {
  size_t iterations;
  double residual;
  int converged;
} dn_iter_report;

/* x has a->rows entries. */
DN_API dn_status dn_solve(const dn_matrix* a, const double* b, dn_direct_method method, double* x);
/* x0 may be NULL for a zero start; report may be NULL. */
DN_API dn_status dn_solve_iterative(const dn_matrix* a, const double* b, const double* x0, dn_iterative_method method,
                                    double tol, size_t max_iter, double* x, dn_iter_report* report);
DN_API dn_status dn_det(const dn_matrix* a, double* out);
DN_API dn_status dn_inv(const dn_matrix* a, dn_matrix** out);
/* perm (n entries, may be NULL) lists the source row of each row of P*A. */
DN_API dn_status dn_lu(const dn_matrix* a, dn_matrix** l, dn_matrix** u, size_t* perm);
DN_API dn_status dn_qr(const dn_matrix* a, dn_matrix** q, dn_matrix** r);
DN_API dn_status dn_cholesky(const dn_matrix* a, dn_matrix** l);
/* Eigenvalues descending into `values` (n entries); vectors may be NULL. */
DN_API dn_status dn_eig(const dn_matrix* a, double* values, dn_matrix** vectors);
/* Thin SVD; sigma has min(m, n) entries; u and v may be NULL. */
DN_API dn_status dn_svd(const dn_matrix* a, dn_matrix** u, double* sigma, dn_matrix** v);
DN_API dn_status dn_pca(const dn_matrix* x, size_t k, dn_matrix** out);
/* coeffs has degree + 1 entries, highest degree first. */
DN_API dn_status dn_polyfit(const double* xs, const double* ys, size_t n, size_t degree, double* coeffs);
DN_API dn_status dn_lstsq(const dn_matrix* a, const double* b, double* x);

/* ---- root finding ---- */

typedef double (*dn_scalar_fn)(double x, void* ctx);
/* Writes F(x) into out (n entries). */
typedef void (*dn_vector_fn)(const double* x, size_t n, double* out, void* ctx);

typedef struct dn_root_report {
  double root;
  size_t iterations;
  double residual;
  int converged;
} dn_root_report;

DN_API dn_status dn_bisection(dn_scalar_fn f, void* ctx, double a, double b, double tol, size_t max_iter,
                              dn_root_report* out);
/* df may be NULL for a central-difference derivative. */
DN_API dn_status dn_newton(dn_scalar_fn f, dn_scalar_fn df, void* ctx, double x0, double tol, size_t max_iter,
                           dn_root_report* out);
DN_API dn_status dn_secant(dn_scalar_fn f, void* ctx, double x0, double x1, double tol, size_t max_iter,
                           dn_root_report* out);
DN_API dn_status dn_fixed_point(dn_scalar_fn g, void* ctx, double x0, double tol, size_t max_iter,
                                dn_root_report* out);

typedef enum dn_system_method { DN_NEWTON_SYSTEM, DN_BROYDEN } dn_system_method;

/* root has n entries; iterations and residual may be NULL. */
DN_API dn_status dn_solve_system(dn_system_method method, dn_vector_fn f, void* ctx, const double* x0, size_t n,
                                 double tol, size_t max_iter, double* root, size_t* iterations, double* residual);

/* ---- interpolation ---- */

typedef enum dn_interp_method { DN_INTERP_LAGRANGE, DN_INTERP_NEWTON, DN_INTERP_SPLINE, DN_INTERP_LINEAR } dn_interp_method;

/* Evaluates the interpolant through (xs, ys) at each of the m queries. */
DN_API dn_status dn_interpolate(dn_interp_method method, const double* xs, const double* ys, size_t n,
                                const double* queries, size_t m, double* out);

/* ---- quadrature and differentiation ---- */

typedef enum dn_quad_method { DN_TRAPEZOID, DN_SIMPSON, DN_GAUSS_LEGENDRE } dn_quad_method;
typedef enum dn_diff_scheme { DN_FORWARD, DN_BACKWARD, DN_CENTRAL } dn_diff_scheme;

/* n is the panel count for Newton-Cotes rules and the node count for Gauss-Legendre. */
DN_API dn_status dn_integrate(dn_quad_method method, dn_scalar_fn f, void* ctx, double a, double b, int n, double* out);
DN_API dn_status dn_trapezoid_samples(const double* xs, const double* ys, size_t n, double* out);
DN_API dn_status dn_finite_diff(dn_scalar_fn f, void* ctx, double x, double h, dn_diff_scheme scheme, double* out);

/* ---- spectral ---- */

/* Radix-2 transforms; n must be a power of two. Forward is unscaled, inverse scales by 1/n. */
DN_API dn_status dn_fft(const double* re, const double* im, size_t n, double* out_re, double* out_im);
DN_API dn_status dn_ifft(const double* re, const double* im, size_t n, double* out_re, double* out_im);
DN_API dn_status dn_fft_freqs(size_t n, double spacing, double* out);

typedef enum dn_convolve_method { DN_CONVOLVE_DIRECT, DN_CONVOLVE_FFT } dn_convolve_method;

/* Full linear convolution; out has nf + ng - 1 entries. */
DN_API dn_status dn_convolve(const double* f, size_t nf, const double* g, size_t ng, dn_convolve_method method,
                             double* out);
DN_API dn_status dn_lowpass1d(const double* signal, size_t n, double sample_rate, double cutoff, double* out);
DN_API dn_status dn_peak_frequency(const double* signal, size_t n, double sample_rate, double* out);
/* Images are matrices with one row per pixel row. */
DN_API dn_status dn_lowpass2d(const dn_matrix* img, double cutoff, dn_matrix** out);
DN_API dn_status dn_log_magnitude_spectrum(const dn_matrix* img, dn_matrix** out);
DN_API dn_status dn_spectral_pool2d(const dn_matrix* img, size_t keep, dn_matrix** out);

/* ---- optimization ---- */

typedef double (*dn_objective_fn)(const double* x, size_t n, void* ctx);
/* Writes the gradient (n entries). */
typedef void (*dn_gradient_fn)(const double* x, size_t n, double* grad, void* ctx);
/* Writes the row-major Hessian (n * n entries). */
typedef void (*dn_hessian_fn)(const double* x, size_t n, double* hess, void* ctx);

typedef enum dn_minimizer { DN_MIN_NEWTON, DN_MIN_BFGS, DN_MIN_LBFGS, DN_MIN_NELDER_MEAD } dn_minimizer;

typedef struct dn_minimize_report {
  double f;
  size_t iterations;
  int converged;
} dn_minimize_report;

/* Callbacks not needed by the method may be NULL (Newton needs grad and hess,
 * the quasi-Newton methods f and grad, Nelder-Mead only f). memory is used by
 * L-BFGS only. trajectory may be NULL; otherwise it receives the accepted
 * iterates, one per row, x0 first. */
DN_API dn_status dn_minimize(dn_minimizer method, dn_objective_fn f, dn_gradient_fn grad, dn_hessian_fn hess,
                             void* ctx, const double* x0, size_t n, double tol, size_t max_iter, size_t memory,
                             double* x, dn_minimize_report* report, dn_matrix** trajectory);

typedef enum dn_step_kind { DN_STEP_SGD, DN_STEP_MOMENTUM, DN_STEP_ADAGRAD, DN_STEP_RMSPROP, DN_STEP_ADAM, DN_STEP_ADAMW } dn_step_kind;

typedef struct dn_opt_config {
  double eta;
  double beta;
  double beta1;
  double beta2;
  double eps;
  double weight_decay;
} dn_opt_config;

/* The library defaults: eta 0.01, beta 0.9, beta1 0.9, beta2 0.999, eps 1e-8, no decay. */
DN_API dn_opt_config dn_opt_config_default(void);

typedef struct dn_optimizer dn_optimizer;

DN_API dn_status dn_optimizer_create(dn_step_kind kind, const dn_opt_config* cfg, size_t n, dn_optimizer** out);
DN_API void dn_optimizer_free(dn_optimizer* opt);
/* Overrides the step size for subsequent steps (learning-rate schedules). */
DN_API dn_status dn_optimizer_set_eta(dn_optimizer* opt, double eta);
/* Updates theta (n entries) in place from gradient g. */
DN_API dn_status dn_optimizer_step(dn_optimizer* opt, double* theta, const double* g);

typedef enum dn_schedule_kind { DN_SCHED_CONSTANT, DN_SCHED_STEP, DN_SCHED_EXPONENTIAL, DN_SCHED_COSINE_RESTARTS } dn_schedule_kind;

typedef struct dn_schedule {
  dn_schedule_kind kind;
  double eta0;
  double drop_factor;
  size_t drop_epoch;
  double lambda;
  double eta_min;
  double eta_max;
  size_t t0;
  size_t t_mult;
} dn_schedule;

DN_API dn_schedule dn_schedule_default(void);
DN_API dn_status dn_lr_at(const dn_schedule* sched, size_t t, double* out);
DN_API dn_status dn_clip_by_norm(const double* g, size_t n, double threshold, double* out);
/* theta = (intercept, slope). */
DN_API dn_status dn_sgd_linreg(const double* xs, const double* ys, size_t n, size_t batch, double eta, size_t iters,
                               uint64_t seed, double* theta);

/* ---- dynamics ---- */

/* Writes dy/dt (n entries). */
typedef void (*dn_rhs_fn)(double t, const double* y, size_t n, double* dydt, void* ctx);

typedef enum dn_ode_method { DN_EULER, DN_RK4, DN_BACKWARD_EULER } dn_ode_method;

/* Trajectory rows are (t, y...). */
DN_API dn_status dn_ode_solve(dn_ode_method method, dn_rhs_fn f, void* ctx, double t0, const double* y0, size_t n,
                              double h, double t_end, dn_matrix** out);
/* Membrane potential from rest, rows (t, V). */
DN_API dn_status dn_lif_simulate(double tau_m, double v_rest, double r_m, double current, double h, double t_end,
                                 dn_matrix** out);
/* tau y' + y = K from zero, rows (t, y). */
DN_API dn_status dn_lti_step_response(double k, double tau, double h, double t_end, dn_matrix** out);
DN_API dn_status dn_heat_stability_factor(double alpha, double length, size_t nx, size_t nt, double t_total,
                                          double* out);
/* Explicit FTCS; u0 NULL means sin(pi x / L). Rows (x, u) at the final time. */
DN_API dn_status dn_heat1d(double alpha, double length, size_t nx, size_t nt, double t_total, dn_scalar_fn u0,
                           void* ctx, dn_matrix** out);

/* ---- micro-learning ---- */

typedef struct dn_mlp dn_mlp;

/* sizes has `layers` entries, input width first. */
DN_API dn_status dn_mlp_create(const size_t* sizes, size_t layers, uint64_t seed, dn_mlp** out);
DN_API void dn_mlp_free(dn_mlp* mlp);
DN_API dn_status dn_mlp_forward(const dn_mlp* mlp, const dn_matrix* x, dn_matrix** out);
DN_API dn_status dn_mlp_loss(const dn_mlp* mlp, const dn_matrix* x, const dn_matrix* y, double* out);
/* Full-batch training in place; loss_history (epochs entries, may be NULL) holds the loss before each update. */
DN_API dn_status dn_mlp_train(dn_mlp* mlp, const dn_matrix* x, const dn_matrix* y, double eta, size_t epochs,
                              double* loss_history);
DN_API dn_status dn_batchnorm(const dn_matrix* x, const double* gamma, const double* beta, double eps,
                              dn_matrix** out);
/* Q-table on the built-in five-state ring world. */
DN_API dn_status dn_qlearn(double alpha, double gamma, double epsilon, size_t episodes, uint64_t seed, dn_matrix** q);
/* Writes up to max_steps + 1 visited states; *count receives the number written. */
DN_API dn_status dn_greedy_rollout(const dn_matrix* q, size_t start, size_t max_steps, size_t* states, size_t* count);

#ifdef __cplusplus
}
#endif

#endif
