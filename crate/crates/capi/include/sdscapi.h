/* C interface to the signed-difference-set library. */

#ifndef SDS_CAPI_H
#define SDS_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SdsStatus {
  SDS_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  SDS_STATUS_NULL_ARGUMENT = 1,
  /**
   * Arguments fail a precondition; details via sds_last_error_message.
   */
  SDS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Input text could not be parsed as a set.
   */
  SDS_STATUS_PARSE_ERROR = 3,
  /**
   * The set does not satisfy the defining equation.
   */
  SDS_STATUS_VERIFICATION_FAILED = 4,
  /**
   * A search completed without finding a set.
   */
  SDS_STATUS_NOT_FOUND = 5,
  /**
   * A search hit its node or time budget before completing.
   */
  SDS_STATUS_PARTIAL = 6,
  /**
   * An output buffer is too small; nothing was written.
   */
  SDS_STATUS_BUFFER_TOO_SMALL = 7,
} SdsStatus;

/**
 * Opaque group handle.
 */
typedef struct SdsGroup SdsGroup;

/**
 * Opaque set handle.
 */
typedef struct SdsSet SdsSet;

/**
 * Result of the feasibility derivation.
 */
typedef struct SdsFeasibility {
  bool feasible;
  /**
   * n = k - lambda; meaningful only when feasible.
   */
  int64_t n;
  /**
   * s = |P| - |N|; meaningful only when feasible.
   */
  int64_t s;
  int64_t p_size;
  int64_t n_size;
} SdsFeasibility;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns a copy of the last error message on this thread, or NULL when no
 * error has occurred. Free with `sds_string_free`.
 */
char *sds_last_error_message(void);

/**
 * Frees a string allocated by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library's string-
 * producing functions, not yet freed; NULL is accepted.
 */
void sds_string_free(char *s);

/**
 * Builds a finite abelian group `Z_orders[0] x ... x Z_orders[len-1]`.
 *
 * # Safety
 * `orders` must point to `len` readable u64 values and `out` must be a
 * valid location to store the handle.
 */
enum SdsStatus sds_group_new(const uint64_t *orders, uintptr_t len, struct SdsGroup **out);

/**
 * # Safety
 * `group` must be a live handle from this library or NULL.
 */
void sds_group_free(struct SdsGroup *group);

/**
 * Group order v, or 0 for NULL.
 *
 * # Safety
 * `group` must be a live handle or NULL.
 */
uint64_t sds_group_order(const struct SdsGroup *group);

/**
 * Group exponent (lcm of the factor orders), or 0 for NULL.
 *
 * # Safety
 * `group` must be a live handle or NULL.
 */
uint64_t sds_group_exponent(const struct SdsGroup *group);

/**
 * Parses a set from its JSON wire form:
 * `{"group":[19],"lambda":2,"P":[[1],...],"N":[[3],...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid store location.
 */
enum SdsStatus sds_set_from_json(const char *json, struct SdsSet **out);

/**
 * Serializes a set to its JSON wire form. Returns NULL on NULL input.
 *
 * # Safety
 * `set` must be a live handle or NULL.
 */
char *sds_set_to_json(const struct SdsSet *set);

/**
 * # Safety
 * `set` must be a live handle from this library or NULL.
 */
void sds_set_free(struct SdsSet *set);

/**
 * Group order of the set's group, or 0 for NULL.
 *
 * # Safety
 * `set` must be a live handle or NULL.
 */
uint64_t sds_set_v(const struct SdsSet *set);

/**
 * k = |P| + |N|, or -1 for NULL.
 *
 * # Safety
 * `set` must be a live handle or NULL.
 */
int64_t sds_set_k(const struct SdsSet *set);

/**
 * The claimed lambda, or 0 for NULL.
 *
 * # Safety
 * `set` must be a live handle or NULL.
 */
int64_t sds_set_lambda(const struct SdsSet *set);

/**
 * Runs the exact group-ring verification.
 *
 * # Safety
 * `set` must be a live handle.
 */
enum SdsStatus sds_set_verify(const struct SdsSet *set);

/**
 * Hex canonical key; equal keys mean the sets are equivalent under
 * translation, unit multipliers, and (for s = 0) negation.
 *
 * # Safety
 * `set` must be a live handle or NULL.
 */
char *sds_set_canonical_key_hex(const struct SdsSet *set);

/**
 * Writes the periodic autocorrelation into `out[0..v]`. Requires a cyclic
 * group and `len >= v`.
 *
 * # Safety
 * `set` must be a live handle; `out` must point to `len` writable i64.
 */
enum SdsStatus sds_set_autocorrelation(const struct SdsSet *set, int64_t *out, uintptr_t len);

/**
 * Derives (n, s, |P|, |N|) from (v, k, lambda); `out->feasible` is false
 * when the counting identity has no solution. Returns InvalidArgument for
 * v < 1 or k outside [0, v].
 *
 * # Safety
 * `out` must be a valid store location.
 */
enum SdsStatus sds_feasible(int64_t v, int64_t k, int64_t lambda, struct SdsFeasibility *out);

/**
 * Squares vs nonsquares mod an odd prime v: a (v, v-1, -1) set.
 *
 * # Safety
 * `out` must be a valid store location.
 */
enum SdsStatus sds_construct_qr(uint64_t v, struct SdsSet **out);

/**
 * Paley difference set over GF(q), q = 3 (mod 4): a (q, (q-1)/2, (q-3)/4)
 * difference set with N empty.
 *
 * # Safety
 * `out` must be a valid store location.
 */
enum SdsStatus sds_construct_paley_ds(uint64_t q, struct SdsSet **out);

/**
 * Paley set with N = {0}: a (4n-1, 2n, n-2) set for q = 4n-1 a prime power.
 *
 * # Safety
 * `out` must be a valid store location.
 */
enum SdsStatus sds_construct_paley_signed(uint64_t q, struct SdsSet **out);

/**
 * Fourth-power residues with N = {0} for primes v = 25 + 4y^2, v = 13
 * (mod 16): a (v, (v+3)/4, (v-13)/16) set.
 *
 * # Safety
 * `out` must be a valid store location.
 */
enum SdsStatus sds_construct_quartic(uint64_t v, struct SdsSet **out);

/**
 * The prime-pair family member for m (q = 2m-3, r = 2m+3 prime powers).
 *
 * # Safety
 * `out` must be a valid store location.
 */
enum SdsStatus sds_construct_prime_pair(uint64_t m, struct SdsSet **out);

/**
 * The sporadic (18, 13, 4) set in Z_2 x Z_3 x Z_3.
 *
 * # Safety
 * `out` must be a valid store location.
 */
enum SdsStatus sds_construct_noncyclic_18_13_4(struct SdsSet **out);

/**
 * Complement construction from a plain difference set (N empty): a
 * (v, v, v-4n) set.
 *
 * # Safety
 * `ds` must be a live handle; `out` must be a valid store location.
 */
enum SdsStatus sds_construct_complement(const struct SdsSet *ds, struct SdsSet **out);

/**
 * Runs the orbit search for (group, k, lambda) and returns the full report
 * as JSON (status, nodes, multiplier, scope, sets). `max_nodes` 0 means
 * unlimited; `threads` 0 means 1.
 *
 * Returns Ok when at least one set was found, NotFound for an exhaustive
 * empty search or infeasible parameters, Partial when a budget ran out.
 *
 * # Safety
 * `group` must be a live handle; `out_json` must be a valid store location.
 */
enum SdsStatus sds_search_json(const struct SdsGroup *group,
                               int64_t k,
                               int64_t lambda,
                               uint64_t max_nodes,
                               uint32_t threads,
                               char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SDS_CAPI_H */
