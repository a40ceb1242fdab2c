#ifndef INFLATOR_FFI_H
#define INFLATOR_FFI_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum InflatorStatus {
  INFLATOR_STATUS_OK = 0,
  INFLATOR_STATUS_NULL_POINTER = 1,
  INFLATOR_STATUS_INVALID_UTF8 = 2,
  INFLATOR_STATUS_PARSE = 3,
  INFLATOR_STATUS_DOMAIN = 4,
  INFLATOR_STATUS_NOT_A_LATTICE = 5,
  INFLATOR_STATUS_NOT_MODULAR = 6,
  INFLATOR_STATUS_UNKNOWN = 7,
  INFLATOR_STATUS_INTERNAL = 8,
  INFLATOR_STATUS_PANIC = 9,
} InflatorStatus;

/**
 * An inflator.
 */
typedef struct Inflator Inflator;

/**
 * A finite lattice.
 */
typedef struct Lattice Lattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into the library.
 */
const char *inflator_last_error(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library, not yet freed.
 */
void inflator_string_free(char *s);

/**
 * Builds from a spec JSON document, or a catalog name such as "gerald".
 *
 * # Safety
 * `spec` is a NUL-terminated string; `out` is writable.
 */
enum InflatorStatus inflator_new(const char *spec, struct Inflator **out);

/**
 * # Safety
 * `h` is NULL or a handle from `inflator_new`/`inflator_mutate`, not yet freed.
 */
void inflator_free(struct Inflator *h);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
enum InflatorStatus inflator_degree(const struct Inflator *h, size_t *out);

/**
 * `ς_n(V)` for a subspace JSON document; writes the directory element JSON.
 *
 * # Safety
 * `h` is a live handle; `subspace` is a NUL-terminated string; `out` is writable.
 */
enum InflatorStatus inflator_evaluate(const struct Inflator *h, const char *subspace, char **out);

/**
 * Fundamental ring and ideal membership of an element literal.
 *
 * # Safety
 * `h` is a live handle; `element` is a NUL-terminated string; `out` is writable.
 */
enum InflatorStatus inflator_membership(const struct Inflator *h, const char *element, char **out);

/**
 * Mutation along a comma-separated line of literals; writes a new handle.
 *
 * # Safety
 * `h` is a live handle; `line` is a NUL-terminated string; `out` is writable.
 */
enum InflatorStatus inflator_mutate(const struct Inflator *h,
                                    const char *line,
                                    struct Inflator **out);

/**
 * Randomized axiom check; writes the report JSON and sets `passed`.
 *
 * # Safety
 * `h` is a live handle; `out` and `passed` are writable.
 */
enum InflatorStatus inflator_check_morphism(const struct Inflator *h,
                                            size_t trials,
                                            uint64_t seed,
                                            size_t max_level,
                                            char **out,
                                            bool *passed);

/**
 * # Safety
 * `json` is a NUL-terminated lattice document; `out` is writable.
 */
enum InflatorStatus inflator_lattice_new(const char *json, struct Lattice **out);

/**
 * # Safety
 * `h` is NULL or a handle from `inflator_lattice_new`, not yet freed.
 */
void inflator_lattice_free(struct Lattice *h);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
enum InflatorStatus inflator_lattice_is_modular(const struct Lattice *h, bool *out);

/**
 * Reduced rank and rank over the bottom.
 *
 * # Safety
 * `h` is a live handle; `rk0_out` and `rk_bot_out` are writable.
 */
enum InflatorStatus inflator_lattice_rank(const struct Lattice *h,
                                          size_t *rk0_out,
                                          size_t *rk_bot_out);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
enum InflatorStatus inflator_lattice_flatten(const struct Lattice *h, char **out);

/**
 * Runs a named suite; writes the report JSON and sets `passed`.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` and `passed` are writable.
 */
enum InflatorStatus inflator_suite(const char *name,
                                   uint64_t seed,
                                   size_t trials,
                                   char **out,
                                   bool *passed);

/**
 * Runs a reproduction by id; writes the report JSON and sets `passed`.
 *
 * # Safety
 * `id` is a NUL-terminated string; `out` and `passed` are writable.
 */
enum InflatorStatus inflator_repro(const char *id,
                                   uint64_t seed,
                                   size_t samples,
                                   char **out,
                                   bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INFLATOR_FFI_H */
