#ifndef COTYPE_ZETA_H
#define COTYPE_ZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. The first four values match the CLI exit codes.
 */
typedef enum CzStatus {
  CZ_STATUS_OK = 0,
  CZ_STATUS_MISMATCH = 1,
  CZ_STATUS_INVALID_INPUT = 2,
  CZ_STATUS_BUDGET = 3,
  CZ_STATUS_NO_FORMULA = 4,
  CZ_STATUS_DOMAIN = 5,
  CZ_STATUS_NULL_POINTER = 6,
  CZ_STATUS_INTERNAL = 7,
  CZ_STATUS_PANIC = 8,
} CzStatus;

/**
 * A rank-3 Lie ring given by structure constants.
 */
typedef struct CzAlgebra CzAlgebra;

/**
 * A local cotype zeta formula with its prime class.
 */
typedef struct CzFormula CzFormula;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next call.
 */
const char *cz_last_error(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` is null or was returned by a `cz_*_to_string` function and not yet freed.
 */
void cz_string_free(char *s);

/**
 * Looks up a catalog algebra: Z3, H, sl2, L1 or L2.
 *
 * # Safety
 * `name` is a NUL-terminated string and `out` is writable.
 */
enum CzStatus cz_algebra_catalog(const char *name, struct CzAlgebra **out);

/**
 * Builds an algebra from `[e1,e2]`, `[e1,e3]`, `[e2,e3]` as nine integers.
 *
 * # Safety
 * `constants` points to nine readable `int64_t` and `out` is writable.
 */
enum CzStatus cz_algebra_new(const int64_t *constants, struct CzAlgebra **out);

/**
 * Parses the `[i,j] = c1 c2 c3` definition format.
 *
 * # Safety
 * `text` is a NUL-terminated string and `out` is writable.
 */
enum CzStatus cz_algebra_parse(const char *text, struct CzAlgebra **out);

/**
 * # Safety
 * `a` is null or a handle from a `cz_algebra_*` constructor, freed once.
 */
void cz_algebra_free(struct CzAlgebra *a);

/**
 * The local formula for `a` at prime `p`, or symbolic in X when `p` is 0.
 * Returns `NoFormula` at primes that need the census.
 *
 * # Safety
 * `a` is a live algebra handle and `out` is writable.
 */
enum CzStatus cz_formula_for(const struct CzAlgebra *a, uint64_t p, struct CzFormula **out);

/**
 * Corank-at-most-`m` specialization of `f` as a new handle.
 *
 * # Safety
 * `f` is a live formula handle and `out` is writable.
 */
enum CzStatus cz_formula_corank(const struct CzFormula *f, uint32_t m, struct CzFormula **out);

/**
 * The formula in interchange format; free with [`cz_string_free`].
 *
 * # Safety
 * `f` is a live formula handle.
 */
char *cz_formula_to_string(const struct CzFormula *f);

/**
 * Functional-equation check in rank `d`: `Ok` when it holds, `Mismatch`
 * when it fails, `Domain` for prime-specific formulas.
 *
 * # Safety
 * `f` is a live formula handle.
 */
enum CzStatus cz_formula_fe_check(const struct CzFormula *f, uint32_t d);

/**
 * # Safety
 * `f` is null or a handle from a `cz_formula_*` function, freed once.
 */
void cz_formula_free(struct CzFormula *f);

/**
 * Number of subalgebras of index `p^(c1+c2+c3)` with cotype `(c1, c2, c3)`.
 *
 * # Safety
 * `a` is a live algebra handle and `out` is writable.
 */
enum CzStatus cz_census_count(const struct CzAlgebra *a,
                              uint64_t p,
                              uint32_t c1,
                              uint32_t c2,
                              uint32_t c3,
                              uint64_t *out);

/**
 * Census against the routed formula up to index `p^n_max`; `Ok` when every
 * cotype agrees, `Mismatch` otherwise. `mismatches` may be null.
 *
 * # Safety
 * `a` is a live algebra handle; `mismatches` is null or writable.
 */
enum CzStatus cz_verify(const struct CzAlgebra *a,
                        uint64_t p,
                        uint32_t n_max,
                        uint64_t *mismatches);

/**
 * Corank density `P^(m)` with an error estimate, using primes up to `bound`.
 *
 * # Safety
 * `a` is a live algebra handle; `value` and `error` are writable.
 */
enum CzStatus cz_density(const struct CzAlgebra *a,
                         uint32_t m,
                         uint64_t bound,
                         double *value,
                         double *error);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COTYPE_ZETA_H */
