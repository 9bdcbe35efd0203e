/* zerodist C API: fractional parts of GL(2) L-function zeros, zero races,
 * Sato-Tate statistics and mollifier coefficients.
 *
 * Every function returns a zd_status. On failure the thread-local message
 * from zd_last_error() describes the problem. Objects are opaque handles
 * released with the matching *_free function; strings returned through
 * char** are released with zd_string_free. */
#ifndef ZERODIST_ZERODIST_H
#define ZERODIST_ZERODIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZD_API __declspec(dllexport)
#else
#define ZD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zd_status {
  ZD_OK = 0,
  ZD_ERR_INVALID_ARGUMENT = 1,
  ZD_ERR_PARSE = 2,
  ZD_ERR_VALIDATION = 3,
  ZD_ERR_RANGE = 4,
  ZD_ERR_DATA = 5,
  ZD_ERR_IO = 6,
  ZD_ERR_BUDGET = 7,
  ZD_ERR_NUMERIC = 8,
  ZD_ERR_INTEGRITY = 9,
  ZD_ERR_INTERNAL = 10
} zd_status;

typedef struct zd_form zd_form;
typedef struct zd_alpha zd_alpha;
typedef struct zd_fourier zd_fourier;
typedef struct zd_density zd_density;
typedef struct zd_mollifier zd_mollifier;

ZD_API const char* zd_version(void);
/* Stable snake_case name, e.g. "parse_error". */
ZD_API const char* zd_status_string(zd_status status);
ZD_API const char* zd_last_error(void);
ZD_API void zd_string_free(char* s);

/* ---- L-function data ---- */

typedef struct zd_form_info {
  const char* label; /* owned by the handle */
  uint64_t level;
  int weight;
  double theta;
  uint64_t coefficient_limit;
  size_t zero_count;
  double t_max;
} zd_form_info;

ZD_API zd_status zd_form_load(const char* manifest_path, size_t min_coefficients, zd_form** out);
/* Exact q-expansion "delta" or "delta_e4" with `count` coefficients and no zeros. */
ZD_API zd_status zd_form_from_series(const char* name, size_t count, zd_form** out);
ZD_API void zd_form_free(zd_form* form);
ZD_API zd_status zd_form_info_get(const zd_form* form, zd_form_info* out);
ZD_API zd_status zd_form_lambda(const zd_form* form, uint64_t n, double* out);
ZD_API zd_status zd_form_zeros(const zd_form* form, const double** ordinates, size_t* count);
/* out receives s_1..s_{m_max}. */
ZD_API zd_status zd_satake_power_sums(const zd_form* form, uint64_t p, int m_max, double* out);
ZD_API zd_status zd_von_mangoldt(const zd_form* form, uint64_t p, int m, double* out);
ZD_API zd_status zd_von_mangoldt_at(const zd_form* form, uint64_t n, double* out);
/* JSON array of decimal strings a(1..count). */
ZD_API zd_status zd_series_json(const char* name, size_t count, char** json);

/* ---- alpha and its certificate ---- */

ZD_API zd_status zd_alpha_load(const char* path, zd_alpha** out);
ZD_API zd_status zd_alpha_parse(const char* json, zd_alpha** out);
/* M is r x n row-major; free_components has n - r entries (may be NULL when r = n). */
ZD_API zd_status zd_alpha_solve(size_t r, size_t n, const int64_t* M, const int64_t* a, const int64_t* q,
                                const uint64_t* primes, const double* free_components, double c_alpha,
                                zd_alpha** out);
ZD_API void zd_alpha_free(zd_alpha* alpha);
ZD_API zd_status zd_alpha_values(const zd_alpha* alpha, const double** values, size_t* n);
ZD_API zd_status zd_alpha_residual(const zd_alpha* alpha, double* out);
ZD_API zd_status zd_alpha_to_json(const zd_alpha* alpha, char** json);
/* {"min_ratio", "argmin", "plausible", "modes_checked"} */
ZD_API zd_status zd_alpha_verify_condition(const zd_alpha* alpha, int bound, char** json);
/* {"witnessed": [{"m", "x", "row", "l"}], "ambiguous": [...], "unresolved": [...], ...} */
ZD_API zd_status zd_alpha_classify_modes(const zd_alpha* alpha, double J, char** json);

/* ---- test functions on the torus ---- */

ZD_API zd_status zd_fourier_parse(const char* json, zd_fourier** out);
ZD_API zd_status zd_fourier_load(const char* path, zd_fourier** out);
ZD_API zd_status zd_fourier_constant(int n, double value, zd_fourier** out);
ZD_API zd_status zd_fourier_cosine(int n, const int64_t* m, double amplitude, zd_fourier** out);
ZD_API zd_status zd_fourier_add(const zd_fourier* a, const zd_fourier* b, zd_fourier** out);
/* Fejer-smoothed indicator of prod [lo_k, hi_k); slack may be NULL. */
ZD_API zd_status zd_fourier_smoothed_box(int n, const double* lo, const double* hi, double eps, double J,
                                         zd_fourier** out, double* slack);
ZD_API void zd_fourier_free(zd_fourier* h);
ZD_API zd_status zd_fourier_eval(const zd_fourier* h, const double* t, double* out);
ZD_API zd_status zd_fourier_integral(const zd_fourier* h, double* out);
ZD_API zd_status zd_fourier_k_h(const zd_fourier* h, double* out);
ZD_API zd_status zd_fourier_to_json(const zd_fourier* h, char** json);

/* ---- density g ---- */

ZD_API zd_status zd_density_create(const zd_form* form, const zd_alpha* alpha, zd_density** out);
ZD_API void zd_density_free(zd_density* density);
ZD_API zd_status zd_density_eval(const zd_density* density, const double* t, double tol, double* value,
                                 double* tail);
ZD_API zd_status zd_density_tail_bound(const zd_density* density, int L, double* out);
ZD_API zd_status zd_density_integrate_box(const zd_density* density, const double* lo, const double* hi,
                                          double tol, double* out);
ZD_API zd_status zd_density_pair(const zd_density* density, const zd_fourier* h, double* out);
/* G^n cell-centre samples, first coordinate slowest; capacity counts doubles. */
ZD_API zd_status zd_density_grid(const zd_density* density, int G, double tol, double* out, size_t capacity);

/* ---- zero statistics ---- */

ZD_API zd_status zd_count_zeros(const zd_form* form, double T, uint64_t* out);
ZD_API zd_status zd_rvm_main(double q, double T, double* out);
/* {"c_fit", "t_worst", "points", "samples": [{"T", "n_emp", "n_main", "error"}]} */
ZD_API zd_status zd_zero_count_scan(const zd_form* form, size_t stride, char** json);
/* G^n counts of fractional parts for 0 < gamma <= T; total may be NULL. */
ZD_API zd_status zd_histogram(const zd_form* form, const zd_alpha* alpha, double T, int G, uint64_t* counts,
                              size_t capacity, uint64_t* total);
ZD_API zd_status zd_predicted_counts(const zd_density* density, double n_t, double T, int G, double tol,
                                     double* out, size_t capacity);

typedef struct zd_weighted_sum_result {
  double S;
  uint64_t n_emp;
  double pairing;
  double residual;
} zd_weighted_sum_result;

ZD_API zd_status zd_weighted_sum(const zd_density* density, const zd_fourier* h, double T,
                                 zd_weighted_sum_result* out);

typedef struct zd_landau_result {
  double S;
  uint64_t nearest;
  double prediction;
  double envelope;
} zd_landau_result;

ZD_API zd_status zd_landau_sum(const zd_form* form, double x, double T, zd_landau_result* out);
ZD_API zd_status zd_discrepancy(const zd_form* form, const zd_alpha* alpha, double T, int G, double* out);
ZD_API zd_status zd_discrepancy_lower_bound(const zd_density* density, double n_emp, double T, int G,
                                            double* out);
ZD_API zd_status zd_zero_density_count(const zd_form* form, double sigma, double T, double c, uint64_t* count,
                                       double* bound);

/* ---- Sato-Tate ---- */

ZD_API zd_status zd_mu_st(double lo, double hi, double* out);
ZD_API zd_status zd_nu(double lo, double hi, double tol, double* value, double* error);
ZD_API zd_status zd_st_quartiles(double out[3]);
ZD_API zd_status zd_empirical_joint(const zd_form* f1, const zd_form* f2, double X, double lo1, double hi1,
                                    double lo2, double hi2, double* fraction, uint64_t* primes);
ZD_API zd_status zd_effective_bound(double k1, double k2, double q1, double q2, double log_x, double c,
                                    double* out);
ZD_API zd_status zd_epsilon_from_log(double log_x, double* out);

/* ---- races ---- */

ZD_API zd_status zd_h_value(const zd_form* f1, const zd_form* f2, const zd_fourier* h, const zd_alpha* alpha,
                            double* out);
ZD_API zd_status zd_winner_criterion(const zd_form* f1, const zd_form* f2, const zd_fourier* h, uint64_t p,
                                     int* holds, double* lhs, double* rhs);
/* {"X", "primes", "f1_wins", "f2_wins", "undecided", fractions, optional "records"} */
ZD_API zd_status zd_race_census(const zd_form* f1, const zd_form* f2, const zd_fourier* h, uint64_t X,
                                int include_records, char** json);
ZD_API zd_status zd_finite_prime_bound(uint64_t q1, uint64_t q2, uint64_t* out);
/* {"holds", "margin", "g1", "g2", optional "sufficient": {"holds", "lhs", "rhs"}} */
ZD_API zd_status zd_local_race(const zd_form* f1, const zd_form* f2, const zd_alpha* alpha, double t0,
                               char** json);
/* *p = 0 when no prime in [Y, X) satisfies the sufficient inequality. */
ZD_API zd_status zd_local_race_search(const zd_form* f1, const zd_form* f2, double t0, uint64_t Y, uint64_t X,
                                      uint64_t* p);
/* Intervals for the scaled H values; count = 0 selects G = 8 equal bins. */
ZD_API zd_status zd_h_distribution(const zd_form* f1, const zd_form* f2, const zd_fourier* h, double X,
                                   size_t count, const double* lo, const double* hi, char** json);

/* ---- mollifier ---- */

ZD_API zd_status zd_mollifier_create(const zd_form* form, double T, double varpi, zd_mollifier** out);
ZD_API void zd_mollifier_free(zd_mollifier* m);
ZD_API zd_status zd_mollifier_length(const zd_mollifier* m, uint64_t* out);
ZD_API zd_status zd_mollifier_mu(const zd_mollifier* m, uint64_t n, double* out);
ZD_API zd_status zd_mollifier_value(const zd_mollifier* m, double re, double im, double* out_re, double* out_im);
ZD_API zd_status zd_mollifier_defect(const zd_mollifier* m, double* out);
ZD_API zd_status zd_taper(double t, double T, double varpi, double* out);

/* ---- output and fixtures ---- */

ZD_API zd_status zd_render_heatmap(const double* grid, size_t rows, size_t cols, const char* title, char** svg);
/* source may be NULL (bundled data) or a path / http(s) URL. */
ZD_API zd_status zd_fixture_fetch(const char* name, const char* source, char** path, int* cache_hit);
ZD_API zd_status zd_sha256_file(const char* path, char** hex);

#ifdef __cplusplus
}
#endif

#endif /* ZERODIST_ZERODIST_H */
