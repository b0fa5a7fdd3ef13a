#ifndef GKZ_H
#define GKZ_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every FFI entry point.
 */
typedef enum {
  Ok = 0,
  NullPointer = 1,
  InvalidUtf8 = 2,
  SchemaError = 3,
  MathError = 4,
  InternalError = 5,
} GkzStatus;

/**
 * Opaque handle to a loaded configuration or model.
 */
typedef struct GkzModel GkzModel;

/**
 * Parse a JSON configuration/model document into a handle.
 *
 * # Safety
 * `json` must be a valid NUL-terminated C string and `out` a valid pointer.
 */
GkzStatus gkz_model_load_json(const char *json, GkzModel **out);

/**
 * Release a model handle.
 *
 * # Safety
 * `model` must be null or a pointer previously returned by
 * [`gkz_model_load_json`], not yet freed.
 */
void gkz_model_free(GkzModel *model);

/**
 * Release a string returned by any analysis call.
 *
 * # Safety
 * `s` must be null or a string pointer returned by this library, not yet
 * freed.
 */
void gkz_string_free(char *s);

/**
 * Summary of the configuration: lattice data, volume, chamber and ring.
 *
 * # Safety
 * `model` must be a live handle; `out` a valid pointer.
 */
GkzStatus gkz_analyze_json(const GkzModel *model, char **out);

/**
 * All chambers of the secondary fan as triangulation records.
 *
 * # Safety
 * `model` must be a live handle; `out` a valid pointer.
 */
GkzStatus gkz_fan_json(const GkzModel *model, char **out);

/**
 * The graded ring of the distinguished chamber.
 *
 * # Safety
 * `model` must be a live handle; `out` a valid pointer.
 */
GkzStatus gkz_ring_json(const GkzModel *model, char **out);

/**
 * Instanton numbers of a mirror model at the given truncation order.
 *
 * # Safety
 * `model` must be a live handle; `out` a valid pointer.
 */
GkzStatus gkz_mirror_json(const GkzModel *model, uint32_t order, char **out);

#endif  /* GKZ_H */
