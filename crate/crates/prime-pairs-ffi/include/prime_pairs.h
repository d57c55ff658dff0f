#ifndef PRIME_PAIRS_H
#define PRIME_PAIRS_H

/* Generated by cbindgen from prime-pairs-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum {
  /**
   * Success.
   */
  PP_STATUS_OK = 0,
  /**
   * A parameter is outside the supported range.
   */
  PP_STATUS_RANGE = 1,
  /**
   * A mathematically undefined request (e.g. singular series at k = 0).
   */
  PP_STATUS_DOMAIN = 2,
  /**
   * The request would exceed the configured memory budget.
   */
  PP_STATUS_CAPACITY = 3,
  /**
   * An I/O error.
   */
  PP_STATUS_IO = 4,
  /**
   * A cache or input file is malformed.
   */
  PP_STATUS_FORMAT = 5,
  /**
   * A verification check failed.
   */
  PP_STATUS_CHECK_FAILED = 6,
  /**
   * A required pointer argument was NULL.
   */
  PP_STATUS_NULL_POINTER = 7,
  /**
   * An internal panic was caught at the boundary.
   */
  PP_STATUS_PANIC = 8,
} PpStatus;

/**
 * Opaque handle over the analytic constants for a given prime cutoff.
 */
typedef struct PpConstants PpConstants;

/**
 * Opaque handle over the sieve tables (von Mangoldt, Möbius, totient).
 */
typedef struct PpTables PpTables;

/**
 * Analytic constants in one plain struct; see `pp_constants_get`.
 */
typedef struct {
  /**
   * Twin-prime constant C₂.
   */
  double c2;
  /**
   * Second-moment constant for the truncated singular series.
   */
  double lconst;
  /**
   * First-moment constant for the truncated singular series.
   */
  double mconst;
  /**
   * Zero-lag series constant (γ + Σ ln p / (p(p−1)) shifted form).
   */
  double dconst;
  /**
   * Rigorous bound on the truncation tail of the constant integrals.
   */
  double tail_bound;
} PpConstantValues;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * ABI version of this header; bumped on any breaking change.
 */
uint32_t pp_abi_version(void);

/**
 * Static, NUL-terminated description of a status code.
 */
const char *pp_status_message(PpStatus status);

/**
 * Build sieve tables covering 1..=limit and hand back an owned handle.
 *
 * # Safety
 * `out` must be valid for writing one pointer. On success it receives a
 * handle that must be released with `pp_tables_free`.
 */
PpStatus pp_tables_build(uint64_t limit, PpTables **out);

/**
 * Release a handle from `pp_tables_build`. NULL is a no-op.
 *
 * # Safety
 * `tables` must be NULL or a pointer previously returned by
 * `pp_tables_build` that has not been freed yet.
 */
void pp_tables_free(PpTables *tables);

/**
 * Upper limit the tables were built for, or 0 for a NULL handle.
 *
 * # Safety
 * `tables` must be NULL or a live handle.
 */
uint64_t pp_tables_limit(const PpTables *tables);

/**
 * von Mangoldt Λ(n): ln p when n is a prime power p^k, else 0.
 *
 * # Safety
 * `tables` must be a live handle; `out` must be valid for one f64 write.
 */
PpStatus pp_mangoldt(const PpTables *tables, uint64_t n, double *out);

/**
 * Chebyshev ψ(N) = Σ_{n≤N} Λ(n) with a deterministic summation order.
 *
 * `out_remainder` may be NULL; when given it receives ψ(N) − N.
 *
 * # Safety
 * `tables` must be a live handle; `out_psi` must be valid for one f64
 * write; `out_remainder` must be NULL or valid for one f64 write.
 */
PpStatus pp_psi(const PpTables *tables, uint64_t n, double *out_psi, double *out_remainder);

/**
 * Ramanujan sum c_q(n) via the Hölder closed form. Requires q ≥ 1.
 *
 * # Safety
 * `out` must be valid for one i64 write.
 */
PpStatus pp_ramanujan_sum(uint64_t q, int64_t n, int64_t *out);

/**
 * Compute the analytic constants with primes up to `prime_cutoff`.
 *
 * # Safety
 * `out` must be valid for writing one pointer. On success it receives a
 * handle that must be released with `pp_constants_free`.
 */
PpStatus pp_constants_compute(uint64_t prime_cutoff, PpConstants **out);

/**
 * Release a handle from `pp_constants_compute`. NULL is a no-op.
 *
 * # Safety
 * `constants` must be NULL or a pointer previously returned by
 * `pp_constants_compute` that has not been freed yet.
 */
void pp_constants_free(PpConstants *constants);

/**
 * Copy the constant values out of a handle.
 *
 * # Safety
 * `constants` must be a live handle; `out` must be valid for one
 * `PpConstantValues` write.
 */
PpStatus pp_constants_get(const PpConstants *constants, PpConstantValues *out);

/**
 * Hardy–Littlewood singular series 𝔖(k): 2C₂ ∏_{p|k, p>2} (p−1)/(p−2)
 * for even k ≠ 0, and 0 for odd k. k = 0 is a domain error.
 *
 * # Safety
 * `constants` must be a live handle; `out` must be valid for one f64 write.
 */
PpStatus pp_singular_series(const PpConstants *constants, int64_t k, double *out);

/**
 * Zero-lag truncated series 𝔖_y(0) = Σ_{q≤y} μ²(q)/φ(q) (≈ ln y).
 *
 * # Safety
 * `tables` must be a live handle; `out` must be valid for one f64 write.
 */
PpStatus pp_truncated_zero(const PpTables *tables, double y, double *out);

/**
 * Truncated singular series 𝔖_y(k) = Σ_{q≤y} μ²(q)/φ(q)² · c_q(−k).
 *
 * # Safety
 * `tables` must be a live handle; `out` must be valid for one f64 write.
 */
PpStatus pp_truncated_singular(const PpTables *tables, double y, uint64_t k, double *out);

/**
 * Prime-pair counts ψ₂(N, k) = Σ_{n≤N−k} Λ(n)Λ(n+k) for k = 0..=N.
 *
 * Writes N+1 values into `out_counts`; `len` must equal N+1. With
 * `use_fft` the autocorrelation is computed by a length-2^m transform,
 * otherwise by the quadratic direct sum (capped at N = 10000).
 *
 * # Safety
 * `tables` must be a live handle; `out_counts` must be valid for `len`
 * f64 writes.
 */
PpStatus pp_psi2(const PpTables *tables, uint64_t n, bool use_fft, double *out_counts, size_t len);

/**
 * Variance of the pair counts against the Hardy–Littlewood prediction:
 * E(N) = Σ_{1≤|k|≤N} (ψ₂(N,k) − 𝔖(k)(N−|k|))², and E(N)/(N ln N)².
 *
 * # Safety
 * `tables` and `constants` must be live handles; `out_e_value` and
 * `out_normalized` must each be NULL or valid for one f64 write.
 */
PpStatus pp_error_summary(const PpTables *tables,
                          const PpConstants *constants,
                          uint64_t n,
                          double *out_e_value,
                          double *out_normalized);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRIME_PAIRS_H */
