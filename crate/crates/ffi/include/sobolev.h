#ifndef SOBOLEV_H
#define SOBOLEV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SobolevStatus {
  SOBOLEV_STATUS_OK = 0,
  SOBOLEV_STATUS_NULL_POINTER = 1,
  /**
   * Inadmissible parameters or arguments outside a function's domain.
   */
  SOBOLEV_STATUS_DOMAIN = 2,
  /**
   * A quadrature or minimization did not converge.
   */
  SOBOLEV_STATUS_CONVERGENCE = 3,
  /**
   * The requested quantity does not exist for this bracket.
   */
  SOBOLEV_STATUS_NOT_AVAILABLE = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  SOBOLEV_STATUS_PANIC = 5,
} SobolevStatus;

typedef enum SobolevBracketKind {
  SOBOLEV_BRACKET_KIND_SHARP = 0,
  SOBOLEV_BRACKET_KIND_ESTIMATED = 1,
  SOBOLEV_BRACKET_KIND_UPPER_ONLY = 2,
} SobolevBracketKind;

/**
 * Opaque bracket handle.
 */
typedef struct SobolevBracket SobolevBracket;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Computes the bracket for `(r, n, d)` and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be valid for a write of one pointer. The handle must be
 * released with [`sobolev_bracket_free`].
 */
enum SobolevStatus sobolev_bracket_new(double r, double n, uint32_t d, struct SobolevBracket **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must be null or a pointer from [`sobolev_bracket_new`] that has
 * not been freed.
 */
void sobolev_bracket_free(struct SobolevBracket *handle);

/**
 * # Safety
 * `handle` must be a live handle and `out` valid for one write.
 */
enum SobolevStatus sobolev_bracket_s_plus(const struct SobolevBracket *handle, double *out);

/**
 * `NOT_AVAILABLE` when only an upper bound exists.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for one write.
 */
enum SobolevStatus sobolev_bracket_s_minus(const struct SobolevBracket *handle, double *out);

/**
 * # Safety
 * `handle` must be a live handle and `out` valid for one write.
 */
enum SobolevStatus sobolev_bracket_rel_uncertainty(const struct SobolevBracket *handle,
                                                   double *out);

/**
 * The minimizing scale of the trial function; only for estimated brackets.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for one write.
 */
enum SobolevStatus sobolev_bracket_lambda_star(const struct SobolevBracket *handle, double *out);

/**
 * # Safety
 * `handle` must be a live handle and `out` valid for one write.
 */
enum SobolevStatus sobolev_bracket_kind(const struct SobolevBracket *handle,
                                        enum SobolevBracketKind *out);

/**
 * Upper bound `S⁺` for any admissible triple.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum SobolevStatus sobolev_upper_bound(double r, double n, uint32_t d, double *out);

/**
 * Trial-function lower bound `S⁻`; needs `n > d/2` and `2 < r < ∞`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum SobolevStatus sobolev_lower_bound(double r, double n, uint32_t d, double *out);

/**
 * Macdonald function `K_ν(ρ)` for `ν ≥ 0`, `ρ > 0`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum SobolevStatus sobolev_bessel_k(double nu, double rho, double *out);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`) and returns the full message length in bytes,
 * excluding the terminator. `buf` may be null to query the length.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes of writes.
 */
uintptr_t sobolev_last_error_message(char *buf, uintptr_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOBOLEV_H */
