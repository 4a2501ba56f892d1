/*
 * C interface to the qpsum library: decompositions of Hermitian operators
 * into sums of products Q_i P_i of orthogonal projections, together with
 * the bound calculators and verifiers that go with them.
 *
 * Every function returns a qps_status. On failure a message describing the
 * error is available from qps_last_error() on the calling thread until the
 * next call into the library from that thread.
 *
 * Variable-length text is returned through (buf, cap, needed): `needed`
 * receives the size including the terminating NUL. When cap is too small the
 * call returns QPS_ERR_BUFFER_TOO_SMALL and leaves buf untouched, so callers
 * can query with buf = NULL, cap = 0 first.
 */
#ifndef QPSUM_QPSUM_H
#define QPSUM_QPSUM_H

#include <stddef.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef QPSUM_BUILDING
#    define QPSUM_API __declspec(dllexport)
#  else
#    define QPSUM_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define QPSUM_API __attribute__((visibility("default")))
#else
#  define QPSUM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qps_status {
  QPS_OK = 0,
  QPS_ERR_DOMAIN = 1,
  QPS_ERR_REGION = 2,
  QPS_ERR_NUMERIC = 3,
  QPS_ERR_INFEASIBLE = 4,
  QPS_ERR_FORMAT = 5,
  QPS_ERR_IO = 6,
  QPS_ERR_MALFORMED = 7,
  QPS_ERR_DIMENSION = 8,
  QPS_ERR_INVALID_ARGUMENT = 9,
  QPS_ERR_BUFFER_TOO_SMALL = 10,
  QPS_ERR_INTERNAL = 11
} qps_status;

QPSUM_API const char *qps_status_string(qps_status status);
QPSUM_API const char *qps_last_error(void);
QPSUM_API const char *qps_version(void);

/* ---- attainable region A = {(x, y) : (x - y)^2 <= x + y <= 1} ---------- */

QPSUM_API qps_status qps_in_region(double x, double y, double tol, int *inside);
QPSUM_API qps_status qps_region_x_range(double *low, double *high);
/* Points of the parabolic boundary x + y = (x - y)^2, d = x - y sampled
 * uniformly on [-1, 1]; x and y must hold `samples` values (>= 2). */
QPSUM_API qps_status qps_region_boundary(size_t samples, double *x, double *y);
QPSUM_API qps_status qps_inf_linear_functional(int n, double *value);
QPSUM_API qps_status qps_inf_linear_functional_bruteforce(int n, int grid,
                                                          double *value);

/* ---- bounds ------------------------------------------------------------ */

typedef struct qps_bound_table {
  int n;
  double norm_low;            /* -n/8 */
  double norm_high;           /* n */
  double extremal_threshold;  /* -(n-2)^2/(8n) */
  int has_corridor;           /* n even and >= 4 */
  int m;
  double corridor_low;        /* -(n-4)^2/(8n) */
  double corridor_high;       /* n-2 */
  double a;
  double b;
} qps_bound_table;

QPSUM_API qps_status qps_bound_table_get(int n, qps_bound_table *out);

typedef enum qps_check { QPS_CHECK_FAIL = 0, QPS_CHECK_PASS = 1, QPS_CHECK_NA = 2 } qps_check;

typedef struct qps_verdict {
  int n;
  qps_check necessary_norm;
  qps_check necessary_extremal;
  qps_check sufficient_corridor;
} qps_verdict;

/* `messages` receives newline-separated reasons (may be NULL with cap 0). */
QPSUM_API qps_status qps_check_feasibility(double lambda_min, double lambda_max,
                                           int n, qps_verdict *out,
                                           char *messages, size_t cap,
                                           size_t *needed);
QPSUM_API qps_status qps_min_sufficient_n(double lambda_min, double lambda_max,
                                          int *n);
QPSUM_API qps_status qps_min_necessary_n(double lambda_min, double lambda_max,
                                         int *n);
QPSUM_API qps_status qps_nc_bounds(double c, double *lower, long long *upper);
/* positive[2] brackets C(n), negative[2] brackets c(n). */
QPSUM_API qps_status qps_representability_intervals(int n, double positive[2],
                                                    double negative[2]);

/* ---- 2x2 projection factory (matrices are row-major double[4]) --------- */

QPSUM_API qps_status qps_make_pq(double x, double y, double tol, double p[4],
                                 double q[4]);
QPSUM_API qps_status qps_conjugate_by_sign(const double m[4], double out[4]);
/* q and p receive 4n values each (pair i at offset 4i); sum receives the
 * sum of the products Q_i P_i. */
QPSUM_API qps_status qps_sharpness_family(int n, double *q, double *p,
                                          double sum[4]);
QPSUM_API qps_status qps_verify_rank1_projection(const double m[4], double tol,
                                                 int *ok);

/* ---- decompositions ---------------------------------------------------- */

typedef struct qps_decomposition qps_decomposition;

/* n = 0 selects the smallest even n whose corridor contains the spectrum. */
QPSUM_API qps_status qps_decompose_spectrum(const double *eigenvalues,
                                            size_t count, int n,
                                            qps_decomposition **out);
/* Row-major dim x dim matrix; imag may be NULL for real input. */
QPSUM_API qps_status qps_decompose_matrix(const double *real, const double *imag,
                                          size_t dim, int n,
                                          qps_decomposition **out);
QPSUM_API qps_status qps_decompose_file(const char *input_path, int n,
                                        qps_decomposition **out);

/* Distinct eigenvalues of a matrix or spectrum input file, ascending. */
QPSUM_API qps_status qps_input_spectrum(const char *input_path, double *values,
                                        size_t cap, size_t *count);

QPSUM_API qps_status qps_decomposition_load(const char *path,
                                            qps_decomposition **out);
QPSUM_API qps_status qps_decomposition_save(const qps_decomposition *d,
                                            const char *path);
QPSUM_API qps_status qps_decomposition_to_json(const qps_decomposition *d,
                                               char *buf, size_t cap,
                                               size_t *needed);
QPSUM_API int qps_decomposition_n(const qps_decomposition *d);
QPSUM_API int qps_decomposition_m(const qps_decomposition *d);
QPSUM_API size_t qps_decomposition_rule_count(const qps_decomposition *d);
QPSUM_API qps_status qps_decomposition_spectrum(const qps_decomposition *d,
                                                double *values, size_t cap,
                                                size_t *count);
QPSUM_API void qps_decomposition_free(qps_decomposition *d);

typedef struct qps_verify_summary {
  int passed;
  double max_entry_defect;
  size_t projection_failures;
  size_t coverage_failures;
  size_t sector_failures;
  double group_offdiag_defect;
} qps_verify_summary;

/* `window` copies of every label; must be at least 2m. threads > 1 splits
 * the entry scan; the outcome equals the serial one. */
QPSUM_API qps_status qps_decomposition_verify(const qps_decomposition *d,
                                              long long window, double tol,
                                              unsigned threads,
                                              qps_verify_summary *summary,
                                              char *report, size_t cap,
                                              size_t *needed);

#ifdef __cplusplus
}
#endif

#endif
