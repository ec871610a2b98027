#ifndef STEINER_LAB_H
#define STEINER_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_UTF8 = 2,
  SL_STATUS_INVALID_FIELD = 3,
  SL_STATUS_DIMENSION_MISMATCH = 4,
  SL_STATUS_INVALID_PARAMETERS = 5,
  SL_STATUS_FIELD_MISMATCH = 6,
  SL_STATUS_BAD_REDUCTION = 7,
  SL_STATUS_BUDGET_EXCEEDED = 8,
  SL_STATUS_DEGREE_OUT_OF_RANGE = 9,
  SL_STATUS_INVALID_JUMPING_PAIR = 10,
  SL_STATUS_INJECTIVITY_VIOLATION = 11,
  SL_STATUS_SCHEMA = 12,
  SL_STATUS_PARSE = 13,
  SL_STATUS_PANIC = 14,
} SlStatus;

/**
 * Opaque handle to a Steiner map over `Q` or `F_p`.
 */
typedef struct SlMap SlMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Free with
 * [`sl_string_free`].
 */
char *sl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sl_string_free(char *s);

/**
 * Parses a map from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SlStatus sl_map_from_json(const char *json, struct SlMap **out);

/**
 * # Safety
 * `map` must come from this library and not have been freed; `out` must be writable.
 */
enum SlStatus sl_map_to_json(const struct SlMap *map, char **out);

/**
 * Writes `k`, `n`, `s`, `t` into `shape[0..4]`.
 *
 * # Safety
 * `map` must be live; `shape` must point to four writable `size_t`.
 */
enum SlStatus sl_map_shape(const struct SlMap *map, size_t *shape);

/**
 * # Safety
 * `map` must be null or a live handle from this library.
 */
void sl_map_free(struct SlMap *map);

/**
 * Checks the bundle condition. `prime == 0` means the map's own field (a map
 * over `Q` then needs `trials > 0`). `trials == 0` runs the exhaustive check,
 * otherwise `trials` random points drawn from `seed`. `*valid` is 1 or 0. When
 * `witness` is non-null it receives the verdict JSON.
 *
 * # Safety
 * `map` must be live; `valid` must be writable; `witness` may be null.
 */
enum SlStatus sl_check_pk(const struct SlMap *map,
                          uint64_t prime,
                          size_t trials,
                          uint64_t seed,
                          int32_t *valid,
                          char **witness);

/**
 * Strips trivial summands. `trivial` may be null.
 *
 * # Safety
 * `map` must be live; `out` must be writable.
 */
enum SlStatus sl_reduce(const struct SlMap *map, struct SlMap **out, size_t *trivial);

/**
 * # Safety
 * `map` must be live; `out` must be writable.
 */
enum SlStatus sl_dualize(const struct SlMap *map, struct SlMap **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SlStatus sl_rank_bound(size_t k, size_t n, size_t s, size_t *out);

/**
 * The degeneracy class as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum SlStatus sl_porteous_json(size_t k, size_t n, size_t s, size_t t, char **out);

/**
 * Jumping-locus report over `F_prime` as JSON.
 *
 * # Safety
 * `map` must be live; `out` must be writable.
 */
enum SlStatus sl_jumping_report_json(const struct SlMap *map, uint64_t prime, char **out);

/**
 * Builds the Steiner map of a family spec over `Q`. When `prime` is nonzero
 * the map is first checked exhaustively over `F_prime`, which also reports a
 * non-injective multiplication map.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum SlStatus sl_family_map(const char *spec, uint64_t prime, struct SlMap **out);

/**
 * Runs the family pipeline on a spec such as `{"family":"rnc","d":2,"n":3}`
 * over `primes[0..count]`. `*pass` is 1 when every predicate holds.
 *
 * # Safety
 * `spec` must be a NUL-terminated string, `primes` must hold `count` values,
 * and `pass` and `out` must be writable.
 */
enum SlStatus sl_verify_family_json(const char *spec,
                                    const uint64_t *primes,
                                    size_t count,
                                    int32_t *pass,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEINER_LAB_H */
