#ifndef EQUIBOUQUET_H
#define EQUIBOUQUET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every FFI call.
 */
typedef enum EqbStatus {
  EqbStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  EqbStatus_NullPointer = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  EqbStatus_Utf8 = 2,
  /**
   * Arguments outside the supported domain (bad genus, sizes, formats).
   */
  EqbStatus_InvalidArgument = 3,
  /**
   * Input parsed but is mathematically inconsistent.
   */
  EqbStatus_Inconsistent = 4,
  /**
   * JSON parse or serialization failure.
   */
  EqbStatus_Json = 5,
  EqbStatus_Io = 6,
  /**
   * A panic was caught at the boundary; state may be stale.
   */
  EqbStatus_Panic = 7,
} EqbStatus;

/**
 * Opaque embedding handle.
 */
typedef struct EqbBouquet EqbBouquet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null when the
 * last call succeeded. The pointer stays valid until the next failing
 * call on the same thread; do not free it.
 */
const char *eqb_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string pointer handed out by this library that
 * has not been freed yet.
 */
void eqb_string_free(char *s);

/**
 * Frees a bouquet handle. Null is ignored.
 *
 * # Safety
 * `b` must be null or a handle from this library, not yet freed.
 */
void eqb_bouquet_free(struct EqbBouquet *b);

/**
 * Builds the flat simplex-frame family at the given genus (≥ 2), with an
 * optional lift onto the unit sphere one dimension up.
 *
 * # Safety
 * `out` must be a valid pointer to receive the handle.
 */
enum EqbStatus eqb_construction_a(size_t genus, bool compactified, struct EqbBouquet **out);

/**
 * Builds the unit-sphere family at the given genus (≥ 2).
 *
 * # Safety
 * `out` must be a valid pointer to receive the handle.
 */
enum EqbStatus eqb_construction_b(size_t genus, struct EqbBouquet **out);

/**
 * Builds the hand-made two-circle demo in three-space.
 *
 * # Safety
 * `out` must be a valid pointer to receive the handle.
 */
enum EqbStatus eqb_b2_demo(struct EqbBouquet **out);

/**
 * Parses a bouquet document (the same JSON schema the CLI writes).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid.
 */
enum EqbStatus eqb_bouquet_from_json(const char *json, struct EqbBouquet **out);

/**
 * Serializes the bouquet as a JSON document with full-precision floats.
 *
 * # Safety
 * `b` must be a live handle; `out` must be valid. Free the string with
 * [`eqb_string_free`].
 */
enum EqbStatus eqb_bouquet_to_json(const struct EqbBouquet *b, char **out);

/**
 * # Safety
 * `b` must be a live handle; `out` must be valid.
 */
enum EqbStatus eqb_bouquet_genus(const struct EqbBouquet *b, size_t *out);

/**
 * # Safety
 * `b` must be a live handle; `out` must be valid.
 */
enum EqbStatus eqb_bouquet_ambient_dim(const struct EqbBouquet *b, size_t *out);

/**
 * Evaluates one circle point. `angle` is in radians; angle 0 is the
 * shared vertex. Writes exactly `ambient_dim` coordinates, so `out_len`
 * must equal the handle's ambient dimension.
 *
 * # Safety
 * `b` must be a live handle; `out` must point to `out_len` writable
 * doubles.
 */
enum EqbStatus eqb_bouquet_eval(const struct EqbBouquet *b,
                                size_t circle,
                                double angle,
                                double *out,
                                size_t out_len);

/**
 * Lifts a flat bouquet onto the unit sphere one dimension up.
 *
 * # Safety
 * `b` must be a live handle; `out` must be valid.
 */
enum EqbStatus eqb_bouquet_compactify(const struct EqbBouquet *b, struct EqbBouquet **out);

/**
 * Runs the full checker suite. `samples` of 0 selects the default
 * sampling density, `seed` is used verbatim. On `Ok`, `report_json`
 * receives the serialized check list and `all_checks_pass` the verdict.
 *
 * # Safety
 * `b` must be a live handle; `report_json` and `all_checks_pass` must be
 * valid. Free the string with [`eqb_string_free`].
 */
enum EqbStatus eqb_verify(const struct EqbBouquet *b,
                          size_t samples,
                          uint64_t seed,
                          char **report_json,
                          bool *all_checks_pass);

/**
 * Runs the dimension-bound certificate. On `Ok`, `report_json` receives
 * the serialized report and `bound_holds` its verdict.
 *
 * # Safety
 * `b` must be a live handle; `report_json` and `bound_holds` must be
 * valid. Free the string with [`eqb_string_free`].
 */
enum EqbStatus eqb_certify(const struct EqbBouquet *b, char **report_json, bool *bound_holds);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EQUIBOUQUET_H */
