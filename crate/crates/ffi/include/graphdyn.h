#ifndef GRAPHDYN_H
#define GRAPHDYN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Result of every fallible call.
 */
typedef enum GraphdynStatus {
  GRAPHDYN_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  GRAPHDYN_STATUS_NULL_ARGUMENT = 1,
  /*
   A string argument was not valid UTF-8.
   */
  GRAPHDYN_STATUS_INVALID_UTF8 = 2,
  GRAPHDYN_STATUS_PARSE = 3,
  GRAPHDYN_STATUS_STRUCTURE = 4,
  GRAPHDYN_STATUS_DOMAIN = 5,
  /*
   A configured cap was exceeded.
   */
  GRAPHDYN_STATUS_RESOURCE = 6,
  GRAPHDYN_STATUS_NOT_MARKOV = 7,
  GRAPHDYN_STATUS_CONTRACT = 8,
  GRAPHDYN_STATUS_INTERNAL = 9,
  /*
   The library panicked; the handle involved should be discarded.
   */
  GRAPHDYN_STATUS_PANIC = 10,
} GraphdynStatus;

/*
 Opaque handle to a piecewise-linear graph map.
 */
typedef struct GraphdynMap GraphdynMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null if none.
 The pointer stays valid until the next failing call on the same thread.
 */
const char *graphdyn_last_error(void);

/*
 Library version as a static string.
 */
const char *graphdyn_version(void);

/*
 Creates a builtin map such as `"tent"` or `"cantor_bumps:3"`.

 # Safety
 `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GraphdynStatus graphdyn_map_builtin(const char *name, struct GraphdynMap **out);

/*
 Creates a map from its JSON specification.

 # Safety
 `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum GraphdynStatus graphdyn_map_from_json(const char *json, struct GraphdynMap **out);

/*
 Releases a map. Null is ignored.

 # Safety
 `map` must come from a `graphdyn_map_*` constructor and not be freed twice.
 */
void graphdyn_map_free(struct GraphdynMap *map);

/*
 Canonical JSON specification of the map.

 # Safety
 `map` must be a live handle and `out` a writable pointer.
 */
enum GraphdynStatus graphdyn_map_to_json(const struct GraphdynMap *map, char **out);

/*
 Image of a point given as `"edge:p/q"`.

 # Safety
 `map` must be a live handle, `point` a NUL-terminated string and `out` writable.
 */
enum GraphdynStatus graphdyn_evaluate(const struct GraphdynMap *map, const char *point, char **out);

/*
 All preimages of a point as a JSON array of `"edge:p/q"` strings.

 # Safety
 `map` must be a live handle, `point` a NUL-terminated string and `out` writable.
 */
enum GraphdynStatus graphdyn_preimages(const struct GraphdynMap *map,
                                       const char *point,
                                       char **out);

/*
 Topological entropy from the Markov partition found within `depth` steps.

 # Safety
 `map` must be a live handle and `out` writable.
 */
enum GraphdynStatus graphdyn_entropy(const struct GraphdynMap *map, size_t depth, double *out);

/*
 Backward branch of length `depth` from `start`, steered toward the
 periodic orbit through `target`, as the JSON branch export.

 # Safety
 `map` must be a live handle, `start` and `target` NUL-terminated strings
 and `out` writable.
 */
enum GraphdynStatus graphdyn_steer(const struct GraphdynMap *map,
                                   const char *start,
                                   const char *target,
                                   size_t depth,
                                   char **out);

/*
 Runs a verification suite (`"mixing"`, `"zero-entropy"`, `"figure2"`,
 `"chain"`) on the map and returns the suite report as JSON.

 # Safety
 `map` must be a live handle, `suite` a NUL-terminated string and `out` writable.
 */
enum GraphdynStatus graphdyn_verify(const struct GraphdynMap *map,
                                    const char *suite,
                                    uint64_t seed,
                                    char **out);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void graphdyn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHDYN_H */
