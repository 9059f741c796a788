#ifndef FABIUS_H
#define FABIUS_H

/* Generated by cbindgen from the fabius-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define FABIUS_OK 0

/**
 * A required pointer argument was null.
 */
#define FABIUS_ERR_NULL 1

/**
 * A string argument was not valid UTF-8.
 */
#define FABIUS_ERR_UTF8 2

/**
 * A string argument did not parse (point syntax, sequence or suite name).
 */
#define FABIUS_ERR_PARSE 3

/**
 * A domain violation: index out of range, negative tolerance, and the like.
 */
#define FABIUS_ERR_DOMAIN 4

/**
 * Exact evaluation (tolerance omitted or zero) of a non-dyadic point.
 */
#define FABIUS_ERR_EXACTNESS 5

/**
 * An internal consistency check failed; results must not be trusted.
 */
#define FABIUS_ERR_INTERNAL 6

/**
 * Opaque, thread-safe cache of sequence prefixes shared by every call
 * made through the same handle. Create with [`fabius_cache_new`],
 * release with [`fabius_cache_free`].
 */
typedef struct FabiusCache FabiusCache;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Allocate a fresh cache handle. Never returns null (allocation
 * failure aborts).
 */
struct FabiusCache *fabius_cache_new(void);

/**
 * Release a cache handle. Passing null is a no-op.
 *
 * # Safety
 * `cache` must be null or a pointer returned by [`fabius_cache_new`]
 * that has not been freed, with no other thread using it concurrently.
 */
void fabius_cache_free(struct FabiusCache *cache);

/**
 * Release a string returned by this library. Passing null is a no-op.
 *
 * # Safety
 * `s` must be null or a string pointer produced by a `fabius_*` call,
 * not yet freed.
 */
void fabius_string_free(char *s);

/**
 * Evaluate `F(x)` within tolerance `eps`.
 *
 * `eps` may be null, which demands exactness and is admitted only for
 * dyadic `x` (otherwise [`FABIUS_ERR_EXACTNESS`]). On success
 * `*out_value` and `*out_error_bound` receive canonical rationals
 * (bound `0` means exact); both must be freed with
 * [`fabius_string_free`]. On any error nothing is written.
 *
 * # Safety
 * `cache` must be a live handle from [`fabius_cache_new`]; `x` (and
 * `eps` when non-null) must be NUL-terminated strings; `out_value` and
 * `out_error_bound` must be valid for writes.
 */
int fabius_eval(const struct FabiusCache *cache,
                const char *x,
                const char *eps,
                char **out_value,
                char **out_error_bound);

/**
 * Write sequence values `name[0..=max]` (`name` one of `"c"`, `"d"`,
 * `"F"`, `"G"`, `"R"`; `R` starts at index 1 and requires `max >= 1`)
 * to `*out_json` as a JSON array of canonical value strings. Free with
 * [`fabius_string_free`].
 *
 * # Safety
 * `cache` must be a live handle; `name` a NUL-terminated string;
 * `out_json` valid for writes.
 */
int fabius_seq(const struct FabiusCache *cache, const char *name, uint32_t max, char **out_json);

/**
 * Compute the common denominator of the level-`n` dyadic values
 * (`n >= 1`) and write it to `*out_lcm` as a decimal integer string.
 * Free with [`fabius_string_free`].
 *
 * # Safety
 * `cache` must be a live handle; `out_lcm` valid for writes.
 */
int fabius_common_denominator(const struct FabiusCache *cache, uint32_t level, char **out_lcm);

/**
 * Run one verification suite (`"reshetnikov"`, `"valuation"`,
 * `"parity"`, `"cross"`, `"eval"`, `"denominators"`, or
 * `"conjecture"`) up to index `max`. Returns [`FABIUS_OK`] when the
 * suite ran, writing 1 to `*out_passed` if every check held and 0
 * otherwise; statuses other than `FABIUS_OK` mean the suite could not
 * run at all.
 *
 * # Safety
 * `cache` must be a live handle; `suite` a NUL-terminated string;
 * `out_passed` valid for writes.
 */
int fabius_verify(const struct FabiusCache *cache,
                  const char *suite,
                  uint32_t max,
                  int *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FABIUS_H */
