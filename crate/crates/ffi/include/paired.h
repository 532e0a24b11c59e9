#ifndef PAIRED_H
#define PAIRED_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum PairedStatus {
  PAIRED_STATUS_OK = 0,
  PAIRED_STATUS_NULL_POINTER = 1,
  PAIRED_STATUS_INVALID_UTF8 = 2,
  PAIRED_STATUS_PARSE = 3,
  PAIRED_STATUS_DEGENERATE = 4,
  PAIRED_STATUS_AMBIGUOUS = 5,
  PAIRED_STATUS_MEMBERSHIP = 6,
  PAIRED_STATUS_PRECONDITION = 7,
  PAIRED_STATUS_NUMERICAL = 8,
  PAIRED_STATUS_OUT_OF_RANGE = 9,
  PAIRED_STATUS_PANIC = 10,
} PairedStatus;

/**
 * Orthonormal kernel basis on a band.
 */
typedef struct PairedKernel PairedKernel;

/**
 * Laurent polynomial (also used for coefficient vectors).
 */
typedef struct PairedPoly PairedPoly;

/**
 * The pair `(a, b)` defining `S_{a,b} = a P+ + b P-`.
 */
typedef struct PairedSpecHandle PairedSpecHandle;

/**
 * Kernel dimensions behind the Coburn-type dichotomy.
 */
typedef struct PairedCoburn {
  size_t band;
  size_t dim_ab;
  size_t dim_ba;
  size_t dim_conj;
  size_t dim_adjoint;
  bool dichotomy;
  bool j_dims_match;
  bool holds;
} PairedCoburn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library; valid until the next call on this thread.
 */
const char *paired_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *paired_version(void);

/**
 * Parses a symbol expression such as `"1 + 2z - 3z^-2"`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `out` must be writable.
 */
enum PairedStatus paired_poly_parse(const char *expr, struct PairedPoly **out);

/**
 * Builds `sum_j (re[j] + i im[j]) z^(kmin + j)`.
 *
 * # Safety
 * `re` and `im` must point to `len` doubles each (either may be null when `len` is 0).
 */
enum PairedStatus paired_poly_from_coeffs(int64_t kmin,
                                          const double *re,
                                          const double *im,
                                          size_t len,
                                          struct PairedPoly **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void paired_poly_free(struct PairedPoly *p);

/**
 * Number of stored coefficients (`kmax - kmin + 1`, or 0 for the zero polynomial).
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PairedStatus paired_poly_len(const struct PairedPoly *p, size_t *out);

/**
 * Writes `kmin` and the dense coefficients. Fails with `OutOfRange` if
 * `cap` is smaller than [`paired_poly_len`].
 *
 * # Safety
 * `p` must be a live handle; `kmin` writable; `re`, `im` writable for `cap` doubles.
 */
enum PairedStatus paired_poly_coeffs(const struct PairedPoly *p,
                                     int64_t *kmin,
                                     double *re,
                                     double *im,
                                     size_t cap);

/**
 * Coefficient of `z^k`.
 *
 * # Safety
 * `p` must be a live handle; `re` and `im` writable.
 */
enum PairedStatus paired_poly_coeff(const struct PairedPoly *p, int64_t k, double *re, double *im);

/**
 * The pair `(a, b)`. Degenerate pairs are accepted; operations that need a
 * nondegenerate pair report `Degenerate`.
 *
 * # Safety
 * `a`, `b` must be live handles (copied, not consumed); `out` writable.
 */
enum PairedStatus paired_spec_new(const struct PairedPoly *a,
                                  const struct PairedPoly *b,
                                  struct PairedSpecHandle **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void paired_spec_free(struct PairedSpecHandle *s);

/**
 * `S_{a,b} f`, or `Sigma_{a,b} f` when `sigma` is true.
 *
 * # Safety
 * `spec`, `f` must be live handles; `out` writable.
 */
enum PairedStatus paired_apply(const struct PairedSpecHandle *spec,
                               const struct PairedPoly *f,
                               bool sigma,
                               struct PairedPoly **out);

/**
 * Largest singular value of the `S` finite section on `[-n, n]`.
 *
 * # Safety
 * `spec` must be a live handle; `out` writable.
 */
enum PairedStatus paired_op_norm(const struct PairedSpecHandle *spec, size_t n, double *out);

/**
 * Kernel of `S_{a,b}` on `[-n, n]`, widening the band by 16 up to
 * `escalations` times when the null space is ambiguous.
 *
 * # Safety
 * `spec` must be a live handle; `out` writable.
 */
enum PairedStatus paired_kernel(const struct PairedSpecHandle *spec,
                                size_t n,
                                size_t escalations,
                                struct PairedKernel **out);

/**
 * # Safety
 * `k` must be null or a handle from this library, not yet freed.
 */
void paired_kernel_free(struct PairedKernel *k);

/**
 * # Safety
 * `k` must be a live handle; `dim` writable.
 */
enum PairedStatus paired_kernel_dim(const struct PairedKernel *k, size_t *dim);

/**
 * Band actually used (after escalation).
 *
 * # Safety
 * `k` must be a live handle; `band` writable.
 */
enum PairedStatus paired_kernel_band(const struct PairedKernel *k, size_t *band);

/**
 * Copy of basis vector `i` as a new polynomial handle.
 *
 * # Safety
 * `k` must be a live handle; `out` writable.
 */
enum PairedStatus paired_kernel_vector(const struct PairedKernel *k,
                                       size_t i,
                                       struct PairedPoly **out);

/**
 * Coburn-type dichotomy check on `[-n, n]`.
 *
 * # Safety
 * `spec` must be a live handle; `out` writable.
 */
enum PairedStatus paired_coburn(const struct PairedSpecHandle *spec,
                                size_t n,
                                size_t escalations,
                                struct PairedCoburn *out);

/**
 * Runs a property suite (or `"all"`) and returns its JSON report, runtime
 * fields zeroed. `trials < 0` uses the per-suite default. `exit_code`
 * receives 0 (pass), 1 (violations) or 2 (ambiguities only).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `json` and `exit_code` writable.
 * Free the string with [`paired_string_free`].
 */
enum PairedStatus paired_suite_json(const char *name,
                                    uint64_t seed,
                                    int64_t trials,
                                    char **json,
                                    int32_t *exit_code);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void paired_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PAIRED_H */
