#ifndef TRINOMIA_H
#define TRINOMIA_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum TrinomiaStatus {
  TRINOMIA_STATUS_OK = 0,
  TRINOMIA_STATUS_NULL_POINTER = 1,
  TRINOMIA_STATUS_INVALID_ARGUMENT = 2,
  // Input outside the domain of the requested method.
  TRINOMIA_STATUS_DOMAIN = 3,
  TRINOMIA_STATUS_BUDGET_EXCEEDED = 4,
  TRINOMIA_STATUS_NO_CONVERGENCE = 5,
  TRINOMIA_STATUS_PANIC = 6,
} TrinomiaStatus;

// Which family a series belongs to.
typedef enum TrinomiaSeriesKind {
  // `x(t)^j`, requires `j >= 1`.
  TRINOMIA_SERIES_KIND_X = 0,
  // `x(t)^j x'(t)`.
  TRINOMIA_SERIES_KIND_Y = 1,
} TrinomiaSeriesKind;

// Solution path selection.
typedef enum TrinomiaMode {
  // Series inside 0.95 r_n, large-|t| iteration beyond 2 r_n, oracle between.
  TRINOMIA_MODE_AUTO = 0,
  TRINOMIA_MODE_SERIES = 1,
  TRINOMIA_MODE_ORACLE = 2,
  TRINOMIA_MODE_LARGE_T = 3,
} TrinomiaMode;

// Path that produced a root.
typedef enum TrinomiaMethod {
  TRINOMIA_METHOD_SERIES = 0,
  TRINOMIA_METHOD_LARGE_T_ITERATION = 1,
  TRINOMIA_METHOD_ORACLE = 2,
} TrinomiaMethod;

// Opaque set of all `n` roots.
typedef struct TrinomiaRoots TrinomiaRoots;

// Opaque exact power series in `t`, known through a fixed order.
typedef struct TrinomiaSeries TrinomiaSeries;

// Opaque solution handle.
typedef struct TrinomiaSolution TrinomiaSolution;

// One root `x` of `x^n - x + t` with the matching `y = 1/(1 - n x^(n-1))`.
typedef struct TrinomiaRoot {
  double x_re;
  double x_im;
  double y_re;
  double y_im;
  // `|x^n - x + t|`
  double f_residual;
  // `|G_n(y, t)|`
  double g_residual;
  double x_error_bound;
} TrinomiaRoot;

// Error bounds and residuals of a solution.
typedef struct TrinomiaBounds {
  double x_error_bound;
  double y_error_bound;
  // `|x^n - x + t|`
  double f_residual;
  // `|G_n(y, t)|`
  double g_residual;
  // Series terms summed, zero for iterative methods.
  size_t terms_used;
} TrinomiaBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the
// next failing call on the same thread; do not free.
const char *trinomia_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void trinomia_string_free(char *s);

// Library version, a static NUL-terminated string.
const char *trinomia_version(void);

// Prime factorization of a positive decimal integer in the form
// `2^2·3·11` (UTF-8), or `1` for one.
//
// # Safety
// `value` must be a NUL-terminated string; `out` must be writable.
enum TrinomiaStatus trinomia_factorize(const char *value, char **out);

// Runs a verification suite (`all`, `theorem1`, `powers`, `lemma3`,
// `lemma4`, `lemma5`, `appendix`, `branches`, `properties`) over degrees
// `n_min..=n_max` at truncation order `order`, reporting check counts.
//
// # Safety
// `suite` must be a NUL-terminated string; `passed` and `failed` writable.
enum TrinomiaStatus trinomia_verify(const char *suite,
                                    uint32_t n_min,
                                    uint32_t n_max,
                                    size_t order,
                                    size_t *passed,
                                    size_t *failed);

// Computes all `n` roots for the literal `t`. `eps <= 0` means `1e-30`.
//
// # Safety
// `t` must be a NUL-terminated string; `out` writable. Release the handle
// with `trinomia_roots_free`.
enum TrinomiaStatus trinomia_branches(uint32_t n,
                                      const char *t,
                                      double eps,
                                      uint64_t seed,
                                      struct TrinomiaRoots **out);

// Number of roots, 0 for a NULL handle.
//
// # Safety
// `h` must be a live handle or NULL.
size_t trinomia_roots_len(const struct TrinomiaRoots *h);

// Copies root `i` into `out`.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum TrinomiaStatus trinomia_roots_get(const struct TrinomiaRoots *h,
                                       size_t i,
                                       struct TrinomiaRoot *out);

// # Safety
// `h` must be NULL or a handle from `trinomia_branches` not yet freed.
void trinomia_roots_free(struct TrinomiaRoots *h);

// Builds the series of `kind` for degree `n` and power `j` through `t^order`.
//
// # Safety
// `out` must be writable. Release the handle with `trinomia_series_free`.
enum TrinomiaStatus trinomia_series_new(uint32_t n,
                                        enum TrinomiaSeriesKind kind,
                                        uint32_t j,
                                        size_t order,
                                        struct TrinomiaSeries **out);

// Highest known power of `t`, or `SIZE_MAX` for a NULL handle.
//
// # Safety
// `h` must be a live handle or NULL.
size_t trinomia_series_order(const struct TrinomiaSeries *h);

// Coefficient of `t^k` as an exact string `p` or `p/q`.
//
// # Safety
// `h` must be a live handle; `out` writable. Free the string with
// `trinomia_string_free`.
enum TrinomiaStatus trinomia_series_coeff(const struct TrinomiaSeries *h, size_t k, char **out);

// Coefficient of `t^k` rounded to the nearest double.
//
// # Safety
// `h` must be a live handle; `out` writable.
enum TrinomiaStatus trinomia_series_coeff_f64(const struct TrinomiaSeries *h,
                                              size_t k,
                                              double *out);

// # Safety
// `h` must be NULL or a handle from `trinomia_series_new` not yet freed.
void trinomia_series_free(struct TrinomiaSeries *h);

// Solves `x^n - x + t = 0` for the literal `t`. `digits == 0` means 40;
// `eps <= 0` means `10^-(digits-10)`.
//
// # Safety
// `t` must be a NUL-terminated string; `out` must be writable. The handle
// is released with `trinomia_solution_free`.
enum TrinomiaStatus trinomia_solve(uint32_t n,
                                   const char *t,
                                   double eps,
                                   uint32_t digits,
                                   enum TrinomiaMode mode,
                                   uint64_t seed,
                                   struct TrinomiaSolution **out);

// Real and imaginary parts of `x` rounded to double.
//
// # Safety
// `h` must be a live handle; `re` and `im` writable.
enum TrinomiaStatus trinomia_solution_x(const struct TrinomiaSolution *h, double *re, double *im);

// Real and imaginary parts of `y = x'(t)` rounded to double.
//
// # Safety
// `h` must be a live handle; `re` and `im` writable.
enum TrinomiaStatus trinomia_solution_y(const struct TrinomiaSolution *h, double *re, double *im);

// `x` at full working precision as `a+bi` with `digits` significant digits.
//
// # Safety
// `h` must be a live handle; `out` writable. Free the string with
// `trinomia_string_free`.
enum TrinomiaStatus trinomia_solution_x_string(const struct TrinomiaSolution *h,
                                               uint32_t digits,
                                               char **out);

// `y` at full working precision, as for `trinomia_solution_x_string`.
//
// # Safety
// As for `trinomia_solution_x_string`.
enum TrinomiaStatus trinomia_solution_y_string(const struct TrinomiaSolution *h,
                                               uint32_t digits,
                                               char **out);

// # Safety
// `h` must be a live handle; `out` writable.
enum TrinomiaStatus trinomia_solution_bounds(const struct TrinomiaSolution *h,
                                             struct TrinomiaBounds *out);

// # Safety
// `h` must be a live handle; `out` writable.
enum TrinomiaStatus trinomia_solution_method(const struct TrinomiaSolution *h,
                                             enum TrinomiaMethod *out);

// Number of warnings attached to the solution (for example, a `t` outside
// the disc of convergence in auto mode).
//
// # Safety
// `h` must be a live handle or NULL (which yields 0).
size_t trinomia_solution_warning_count(const struct TrinomiaSolution *h);

// # Safety
// `h` must be NULL or a handle from `trinomia_solve` not yet freed.
void trinomia_solution_free(struct TrinomiaSolution *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRINOMIA_H */
