#ifndef ORBIFOLD_VOA_H
#define ORBIFOLD_VOA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum OvStatus {
  OV_STATUS_OK = 0,
  OV_STATUS_NULL_POINTER = 1,
  OV_STATUS_BAD_LABEL = 2,
  OV_STATUS_INVALID_ARGUMENT = 3,
  OV_STATUS_INCONSISTENT = 4,
  OV_STATUS_UNSUPPORTED = 5,
  OV_STATUS_INTERNAL = 6,
} OvStatus;

/**
 * Generators whose top-level actions [`ov_top_action`] reports.
 */
typedef enum OvZhuGen {
  OV_ZHU_GEN_OMEGA = 0,
  OV_ZHU_GEN_J = 1,
  OV_ZHU_GEN_E = 2,
} OvZhuGen;

/**
 * Opaque engine for one value of `k`. Create with [`ov_engine_new`], release with
 * [`ov_engine_free`].
 */
typedef struct OvEngine OvEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the fusion table for `k >= 1` and stores a new engine in `*out`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum OvStatus ov_engine_new(uint32_t k, struct OvEngine **out);

/**
 * Releases an engine. Null is ignored.
 *
 * # Safety
 * `engine` must be null or come from [`ov_engine_new`] and not be freed twice.
 */
void ov_engine_free(struct OvEngine *engine);

/**
 * The `k` of an engine, or 0 for null.
 *
 * # Safety
 * `engine` must be null or a live engine.
 */
uint32_t ov_engine_k(const struct OvEngine *engine);

/**
 * The fusion rule `N(w1, w2; w3)`, 0 or 1.
 *
 * # Safety
 * `engine` must be a live engine, the labels NUL-terminated strings, `out` writable.
 */
enum OvStatus ov_fusion(const struct OvEngine *engine,
                        const char *w1,
                        const char *w2,
                        const char *w3,
                        uint8_t *out);

/**
 * The upper bound from restricting to `M(1)^+`.
 *
 * # Safety
 * As for [`ov_fusion`].
 */
enum OvStatus ov_upper_bound(const struct OvEngine *engine,
                             const char *w1,
                             const char *w2,
                             const char *w3,
                             uint32_t *out);

/**
 * Whether `(lambda_r, T_i, T_j)` is quasi-admissible; `i` and `j` must be 1 or 2.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum OvStatus ov_quasi_admissible(int64_t r, uint8_t i, uint8_t j, bool *out);

/**
 * The scalar by which `gen` acts on the top level of `label`, as exact text. The
 * string in `*out` must be released with [`ov_string_free`].
 *
 * # Safety
 * `engine` must be a live engine, `label` a NUL-terminated string, `out` writable.
 */
enum OvStatus ov_top_action(const struct OvEngine *engine,
                            enum OvZhuGen gen,
                            const char *label,
                            char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or come from this library and not be freed twice.
 */
void ov_string_free(char *s);

/**
 * Description of the last failure on this thread; empty after a success. The
 * pointer stays valid until the next call into this library on the same thread.
 */
const char *ov_last_error(void);

/**
 * Static name of a status code.
 */
const char *ov_status_name(enum OvStatus status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ORBIFOLD_VOA_H */
