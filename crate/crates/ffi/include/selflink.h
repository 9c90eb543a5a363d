#ifndef SELFLINK_H
#define SELFLINK_H

/* Generated by cbindgen from selflink-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every fallible call.
 */
typedef enum SlStatus {
  /*
   Success.
   */
  SL_OK = 0,
  /*
   A required pointer argument was null.
   */
  SL_NULL_ARGUMENT = 1,
  /*
   A string argument was not valid UTF-8.
   */
  SL_INVALID_UTF8 = 2,
  /*
   Malformed input (bad JSON, bad ring spec, bad element text).
   */
  SL_INVALID_INPUT = 3,
  /*
   A mathematical precondition was violated (ring mismatch, bounds,
   degenerate projection, rejected wall event).
   */
  SL_PRECONDITION = 4,
  /*
   An internal invariant failed (e.g. a non-constant wall trace).
   */
  SL_INTERNAL = 5,
} SlStatus;

/*
 Opaque handle to a ring element.
 */
typedef struct SlElement SlElement;

/*
 Opaque handle to a coefficient ring.
 */
typedef struct SlRing SlRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Latest error message on this thread as a newly allocated string, or null
 when no error has occurred. Free with [`sl_string_free`].
 */
char *sl_last_error_message(void);

/*
 Release a string allocated by this library.

 # Safety
 `s` must be null or a pointer previously returned by this library and
 not yet freed.
 */
void sl_string_free(char *s);

/*
 Create a ring handle from its spec string: `integers`, `mod:<q>` or
 `poly:<v1,v2,...>`. Returns null on error. Free with [`sl_ring_free`].

 # Safety
 `spec` must be a valid NUL-terminated C string.
 */
struct SlRing *sl_ring_new(const char *spec);

/*
 # Safety
 `ring` must be null or a pointer from [`sl_ring_new`], not yet freed.
 */
void sl_ring_free(struct SlRing *ring);

/*
 # Safety
 `element` must be null or an element pointer from this library, not yet
 freed.
 */
void sl_element_free(struct SlElement *element);

/*
 The additive identity of the ring. Free with [`sl_element_free`].

 # Safety
 `ring` must be a valid ring handle.
 */
struct SlElement *sl_ring_zero(const struct SlRing *ring);

/*
 The multiplicative identity of the ring. Free with [`sl_element_free`].

 # Safety
 `ring` must be a valid ring handle.
 */
struct SlElement *sl_ring_one(const struct SlRing *ring);

/*
 Parse an element from its canonical text form. Returns null on error.

 # Safety
 `ring` must be a valid ring handle and `text` a valid C string.
 */
struct SlElement *sl_element_parse(const struct SlRing *ring, const char *text);

/*
 Canonical text form of an element. Free with [`sl_string_free`].

 # Safety
 `ring` and `element` must be valid handles, and the element must belong
 to the ring.
 */
char *sl_element_format(const struct SlRing *ring, const struct SlElement *element);

/*
 Canonical sum of two elements of the ring. Returns null on mismatch.

 # Safety
 All handles must be valid.
 */
struct SlElement *sl_element_add(const struct SlRing *ring,
                                 const struct SlElement *a,
                                 const struct SlElement *b);

/*
 Canonical product of two elements of the ring. Returns null on mismatch.

 # Safety
 All handles must be valid.
 */
struct SlElement *sl_element_mul(const struct SlRing *ring,
                                 const struct SlElement *a,
                                 const struct SlElement *b);

/*
 Equality of canonical forms: 1 equal, 0 different, -1 on null input.

 # Safety
 Handles must be valid or null.
 */
int sl_element_eq(const struct SlElement *a, const struct SlElement *b);

/*
 Number of spanning trees of the complete graph on `n` vertices, by
 exhaustive enumeration (`n <= 9`).

 # Safety
 `out_count` must point to writable memory for one u64.
 */
enum SlStatus sl_trees_count(uint32_t n, uint64_t *out_count);

/*
 Evaluate the forested form of an edge-vector JSON document. On success
 `out_value` receives the canonical element string.

 # Safety
 `input_json` must be a valid C string and `out_value` a writable slot.
 */
enum SlStatus sl_forested_eval_json(const char *input_json, int use_tree_sum, char **out_value);

/*
 Compute the linking matrix of a link JSON document over the given ring
 spec. On success `out_json` receives the canonical matrix document.

 # Safety
 Inputs must be valid C strings and `out_json` a writable slot.
 */
enum SlStatus sl_linking_matrix_json(const char *link_json, const char *ring_spec, char **out_json);

/*
 Self-linking weight of a matrix JSON document; `out_value` receives the
 canonical element string.

 # Safety
 `matrix_json` must be a valid C string and `out_value` a writable slot.
 */
enum SlStatus sl_self_linking_weight_json(const char *matrix_json, char **out_value);

/*
 Run a wall-crossing scenario document. `out_trace_json` receives the
 trace as a JSON array of `{time, weight}` points whenever the scenario
 executes; the call reports an internal-invariant failure when the trace
 is not constant.

 # Safety
 `scenario_json` must be a valid C string and `out_trace_json` a writable
 slot.
 */
enum SlStatus sl_wall_run_scenario_json(const char *scenario_json, char **out_trace_json);

/*
 Generate and run `count` seeded scenarios over the given ring spec with
 at most `events` events each. Returns an internal-invariant failure and
 stores the offending seed when any trace is non-constant.

 # Safety
 `ring_spec` must be a valid C string; `out_failed_seed` may be null.
 */
enum SlStatus sl_wall_fuzz(uint64_t seed,
                           uint64_t count,
                           const char *ring_spec,
                           uint32_t events,
                           uint64_t *out_failed_seed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SELFLINK_H */
