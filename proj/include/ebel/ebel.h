#ifndef EBEL_H
#define EBEL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
typedef enum {
    EBEL_OK = 0,
    EBEL_ERR_INVALID = 1,    /* bad argument or configuration */
    EBEL_ERR_HULL = 2,       /* origin outside the interior of the point hull */
    EBEL_ERR_DEGENERATE = 3, /* degenerate sample (e.g. constant series) */
    EBEL_ERR_NONCAUSAL = 4,  /* AR polynomial root on or inside the unit circle */
    EBEL_ERR_PROFILE = 5,    /* profile search failed to converge */
    EBEL_ERR_NUMERIC = 6     /* other numerical failure */
} ebel_status;

const char* ebel_status_message(ebel_status status);

typedef enum { EBEL_SCHEME_EBEL1 = 1, EBEL_SCHEME_EBEL2 = 2 } ebel_scheme;

typedef enum {
    EBEL_WEIGHT_CONSTANT = 1,
    EBEL_WEIGHT_LINEAR = 2,
    EBEL_WEIGHT_COSINE_BELL = 3,
    EBEL_WEIGHT_TABULATED = 4
} ebel_weight_kind;

/* ---- weight functions (opaque) ---- */

typedef struct ebel_weight ebel_weight;

ebel_status ebel_weight_create(ebel_weight_kind kind, double scale, ebel_weight** out);
/* knots_t must start at 0, end at 1, strictly increasing; values >= 0. */
ebel_status ebel_weight_create_tabulated(const double* knots_t, const double* knots_w,
                                         int n_knots, double scale, ebel_weight** out);
ebel_status ebel_weight_eval(const ebel_weight* w, double t, double* out);
void ebel_weight_free(ebel_weight* w);

/* ---- empirical likelihood core ---- */

/* Solves the EL dual for m points in R^d (row-major). lambda_out has d slots,
 * probs_out (optional) m slots. Returns EBEL_ERR_HULL when 0 is not interior
 * to the convex hull of the points. tol <= 0 selects the default. */
ebel_status ebel_solve_el(const double* pts, int m, int d, double tol, int max_iter,
                          double* lambda_out, double* log_ratio_out, double* probs_out,
                          int* iterations_out, int* converged_out);

/* log EL ratio; -infinity (status EBEL_OK) when the hull condition fails. */
ebel_status ebel_log_el_ratio(const double* pts, int m, int d, double* out);

/* ---- quantile tables for the simulated limit law (opaque) ---- */

typedef struct ebel_table ebel_table;

/* Simulates the limit law on an m-point grid with per-replicate RNG streams
 * derived from (seed, replicate index); thread count never changes results.
 * Hull-violating draws enter the sample as +infinity and are counted. */
ebel_status ebel_estimate_quantiles(ebel_scheme scheme, const ebel_weight* w, int d,
                                    const double* levels, int n_levels, long replicates,
                                    int grid_m, uint64_t seed, int threads,
                                    ebel_table** out);
ebel_status ebel_table_quantile(const ebel_table* t, double level, double* quantile_out,
                                double* stderr_out);
ebel_status ebel_table_hull_violations(const ebel_table* t, long* out);
/* CSV with columns scheme,weight,d,level,quantile,stderr,replicates,grid,seed.
 * Free the returned string with ebel_string_free. */
ebel_status ebel_table_csv(const ebel_table* t, char** out);
void ebel_table_free(ebel_table* t);
void ebel_string_free(char* s);

/* One draw of the discretized limit variable using stream (seed, stream).
 * Returns EBEL_ERR_HULL on a hull-violating path. */
ebel_status ebel_limit_draw(ebel_scheme scheme, const ebel_weight* w, int d, int m,
                            uint64_t seed, uint64_t stream, double* out);

/* ---- statistics and confidence sets ---- */

/* -(1/n) log EL ratio of the scheme's block sums; +infinity (EBEL_OK) when
 * the hull fails. x is n rows of dimension d, mu has d entries. */
ebel_status ebel_statistic(const double* x, int n, int d, const double* mu,
                           ebel_scheme scheme, const ebel_weight* w, double* out);

/* -(2/b) log EL ratio of overlapping block sums; +infinity on hull failure. */
ebel_status ebel_bel_statistic(const double* x, int n, int d, const double* mu, int b,
                               double* out);

/* Interval {mu: statistic <= table quantile at level} for a scalar series.
 * degenerate_out is 1 for a constant series (zero-width interval). */
ebel_status ebel_ci_mean(const double* x, int n, ebel_scheme scheme, const ebel_weight* w,
                         const ebel_table* calibration, double level, double* lo_out,
                         double* hi_out, int* degenerate_out);

/* Same region with an explicit threshold instead of a table. */
ebel_status ebel_ci_mean_threshold(const double* x, int n, ebel_scheme scheme,
                                   const ebel_weight* w, double threshold, double* lo_out,
                                   double* hi_out, int* degenerate_out);

ebel_status ebel_bel_ci_mean(const double* x, int n, int b, double level, double* lo_out,
                             double* hi_out, int* degenerate_out);

ebel_status ebel_region_member(const double* x, int n, int d, const double* mu,
                               ebel_scheme scheme, const ebel_weight* w,
                               const ebel_table* calibration, double level,
                               int* member_out);

/* ---- smooth-function and estimating-function statistics ---- */

/* H maps R^d to R^p (p <= d); jac (optional, may be NULL) writes the row-major
 * p x d Jacobian. Profile statistic minimized over {H(mu) = theta}. */
typedef void (*ebel_map_fn)(const double* mu, double* out, void* ctx);
typedef void (*ebel_jacobian_fn)(const double* mu, double* out, void* ctx);

ebel_status ebel_statistic_smooth(const double* x, int n, int d, int p, ebel_map_fn H,
                                  ebel_jacobian_fn jac, void* ctx, const double* theta,
                                  ebel_scheme scheme, const ebel_weight* w, double* out);

/* G maps (observation row, parameter) to R^p; block sums use G in place of
 * centered observations. */
typedef void (*ebel_ef_fn)(const double* x_row, const double* theta, double* out,
                           void* ctx);

ebel_status ebel_statistic_ef(const double* x, int n, int d, int p, ebel_ef_fn G,
                              void* ctx, const double* theta, ebel_scheme scheme,
                              const ebel_weight* w, double* out);

/* ---- block-length selection ---- */

typedef enum { EBEL_BLOCK_FTK = 0, EBEL_BLOCK_AAR = 1 } ebel_block_rule;

typedef struct {
    int chosen_b;
    double rho1;      /* AAR: lag-1 autocorrelation */
    double alpha1;    /* AAR: AR(1) curvature coefficient */
    double bandwidth; /* FTK: flat-top truncation lag */
    double g_hat;     /* FTK: derivative-spectrum estimate */
    double d_hat;     /* FTK: denominator (4/3) g^2 */
    double c_hat;     /* FTK: plug-in coefficient of n^(1/3) */
} ebel_block_selection;

ebel_status ebel_select_block(const double* x, int n, ebel_block_rule rule,
                              ebel_block_selection* out);

/* ---- process generators ---- */

typedef enum {
    EBEL_INNOV_CHISQ1 = 0,
    EBEL_INNOV_NORMAL = 1,
    EBEL_INNOV_BERNOULLI = 2,
    EBEL_INNOV_PARETO = 3
} ebel_innovation;

typedef struct {
    int is_ma1star; /* nonzero selects the fixed-form MA(1)* process */
    const double* phi;
    int n_phi;
    const double* theta;
    int n_theta;
    ebel_innovation innovation;
    int burn_in; /* < 0 selects the default (1000) */
} ebel_process;

ebel_status ebel_simulate(const ebel_process* p, int n, uint64_t seed, uint64_t stream,
                          double* out);
ebel_status ebel_long_run_variance(const ebel_process* p, double* out);

/* ---- Monte Carlo experiments ---- */

typedef struct {
    int family;     /* 0 ebel1, 1 ebel2, 2 bel */
    int weight;     /* ebel_weight_kind for EBEL families */
    int block_rule; /* 0 fixed, 1 ftk, 2 aar (BEL family) */
    int fixed_b;
} ebel_method;

/* Coverage of the true mean (0) for each method over shared replicate series.
 * calibrations[k] supplies method k's quantile table (NULL for BEL methods).
 * coverage_out and stderr_out have n_methods slots (percent). csv_out
 * (optional) receives the report body; free with ebel_string_free. */
ebel_status ebel_coverage(const ebel_process* p, int n, const ebel_method* methods,
                          int n_methods, double level, long replicates, uint64_t seed,
                          int threads, const ebel_table* const* calibrations,
                          double* coverage_out, double* stderr_out, char** csv_out);

/* Rejection rates along local alternatives mu_c = n^{-1/2} sqrt(LRV) c.
 * raw_out/adjusted_out have n_c slots (percent). */
ebel_status ebel_power(const ebel_process* p, int n, const double* c_grid, int n_c,
                       const ebel_method* method, double level, long replicates,
                       uint64_t seed, int threads, const ebel_table* calibration,
                       double* raw_out, double* adjusted_out, char** csv_out);

/* ---- utilities ---- */

ebel_status ebel_chisq_quantile(double p, int dof, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EBEL_H */
