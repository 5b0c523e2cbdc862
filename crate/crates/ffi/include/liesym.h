#ifndef LIESYM_H
#define LIESYM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum LiesymStatus {
  LIESYM_STATUS_OK = 0,
  LIESYM_STATUS_NULL_POINTER = 1,
  LIESYM_STATUS_INVALID_ARGUMENT = 2,
  LIESYM_STATUS_DIMENSION = 3,
  LIESYM_STATUS_DOMAIN = 4,
  LIESYM_STATUS_EVALUATION = 5,
  LIESYM_STATUS_UNSUPPORTED = 6,
  LIESYM_STATUS_BUFFER_TOO_SMALL = 7,
  LIESYM_STATUS_PANIC = 8,
} LiesymStatus;

/**
 * An eigenfunction with its claimed eigenvalues.
 */
typedef struct LiesymCandidate LiesymCandidate;

/**
 * A symmetric space from the catalog.
 */
typedef struct LiesymSpace LiesymSpace;

typedef struct LiesymComplex {
  double re;
  double im;
} LiesymComplex;

/**
 * Residuals of one verification run.
 */
typedef struct LiesymVerifyResult {
  double max_tau_residual;
  double max_kappa_residual;
  double max_cross_residual;
  bool passed;
} LiesymVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to fit) and returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t liesym_last_error_message(char *buf, size_t len);

/**
 * Creates a space by id (`complex-grassmannian`, `real-grassmannian`,
 * `quaternionic-grassmannian`, `su-so`, `so-u`, `sp-u`, `su-sp`). `m` is
 * ignored for the non-Grassmannian families.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LiesymStatus liesym_space_new(const char *id, size_t m, size_t n, struct LiesymSpace **out);

/**
 * # Safety
 * `space` must be null or a handle from [`liesym_space_new`] not yet freed.
 */
void liesym_space_free(struct LiesymSpace *space);

/**
 * Side length of the ambient matrices; 0 for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
size_t liesym_space_matrix_size(const struct LiesymSpace *space);

/**
 * Dimension of the space; 0 for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
size_t liesym_space_dim(const struct LiesymSpace *space);

/**
 * Writes a seeded ambient group element, row-major, into `out`.
 *
 * # Safety
 * `space` must be a live handle and `out` valid for `len` entries.
 */
enum LiesymStatus liesym_space_sample(const struct LiesymSpace *space,
                                      uint64_t seed,
                                      struct LiesymComplex *out,
                                      size_t len);

/**
 * `Φ(p) = p·σ(p)⁻¹`.
 *
 * # Safety
 * `p` and `out` must be valid for `len` entries.
 */
enum LiesymStatus liesym_space_cartan_map(const struct LiesymSpace *space,
                                          const struct LiesymComplex *p,
                                          struct LiesymComplex *out,
                                          size_t len);

/**
 * Looks up a catalog candidate by label; vector parameters are drawn from `seed`.
 *
 * # Safety
 * `space` must be a live handle, `label` a NUL-terminated string and `out` valid.
 */
enum LiesymStatus liesym_candidate_new(const struct LiesymSpace *space,
                                       const char *label,
                                       uint64_t seed,
                                       struct LiesymCandidate **out);

/**
 * # Safety
 * `candidate` must be null or a live handle.
 */
void liesym_candidate_free(struct LiesymCandidate *candidate);

/**
 * Claimed tension and conformality eigenvalues.
 *
 * # Safety
 * `candidate` must be a live handle; `lambda` and `mu` valid pointers.
 */
enum LiesymStatus liesym_candidate_eigenvalues(const struct LiesymCandidate *candidate,
                                               struct LiesymComplex *lambda,
                                               struct LiesymComplex *mu);

/**
 * Value of the candidate at a group element.
 *
 * # Safety
 * `point` must be valid for `len` entries and `out` a valid pointer.
 */
enum LiesymStatus liesym_candidate_eval(const struct LiesymCandidate *candidate,
                                        const struct LiesymComplex *point,
                                        size_t len,
                                        struct LiesymComplex *out);

/**
 * Tension `τ(ψ)` and conformality `κ(ψ, ψ)` at a group element.
 *
 * # Safety
 * `point` must be valid for `len` entries; `tau` and `kappa` valid pointers.
 */
enum LiesymStatus liesym_candidate_operators(const struct LiesymCandidate *candidate,
                                             const struct LiesymComplex *point,
                                             size_t len,
                                             struct LiesymComplex *tau,
                                             struct LiesymComplex *kappa);

/**
 * Checks the catalog (or one labelled candidate) of a space at `samples` seeded points.
 *
 * # Safety
 * `space` must be a live handle, `candidate` a NUL-terminated string
 * (`"all"` for the whole catalog) and `out` valid.
 */
enum LiesymStatus liesym_verify(const struct LiesymSpace *space,
                                const char *candidate,
                                size_t samples,
                                uint64_t seed,
                                double tolerance,
                                struct LiesymVerifyResult *out);

/**
 * Killing form `B(X, Y)` on `so`, `u`, `su` or `sp`; closed form, or the
 * trace of `ad_X∘ad_Y` when `brute_force` is set.
 *
 * # Safety
 * `group` must be a NUL-terminated string, `x` and `y` valid for `len` entries.
 */
enum LiesymStatus liesym_killing_form(const char *group,
                                      size_t n,
                                      const struct LiesymComplex *x,
                                      const struct LiesymComplex *y,
                                      size_t len,
                                      bool brute_force,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIESYM_H */
