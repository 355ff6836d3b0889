#ifndef DDK_H
#define DDK_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum DdkStatus {
  DDK_STATUS_OK = 0,
  DDK_STATUS_NULL_POINTER = 1,
  DDK_STATUS_INVALID_ARGUMENT = 2,
  DDK_STATUS_UNKNOWN_LABEL = 3,
  DDK_STATUS_PARSE_ERROR = 4,
  DDK_STATUS_GROUP_ERROR = 5,
  DDK_STATUS_NOT_A_STRUCTURE = 6,
  DDK_STATUS_CAP_EXCEEDED = 7,
  DDK_STATUS_COMPUTATION_FAILED = 8,
  DDK_STATUS_BUFFER_TOO_SMALL = 9,
  DDK_STATUS_PANIC = 10,
} DdkStatus;

/**
 * A realized finite group with its presentation.
 */
typedef struct DdkGroup DdkGroup;

/**
 * A verified structure on a group.
 */
typedef struct DdkStructure DdkStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failing call on this thread, or null.
 * The pointer stays valid until the next failing call on the thread.
 */
const char *ddk_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ddk_version(void);

/**
 * Realizes a catalog entry by label or alias.
 *
 * # Safety
 * `label` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DdkStatus ddk_group_from_label(const char *label, struct DdkGroup **out);

/**
 * Realizes a presentation in the text format (`gens:` and `rel:` lines),
 * with the coset cap taken from `DDK_COSETS`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DdkStatus ddk_group_from_presentation(const char *text, struct DdkGroup **out);

/**
 * Releases a group handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void ddk_group_free(struct DdkGroup *g);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_group_order(const struct DdkGroup *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_group_center_order(const struct DdkGroup *g, size_t *out);

/**
 * Whether a non-abelian group is CCT; abelian groups are rejected.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_group_is_cct(const struct DdkGroup *g, bool *out);

/**
 * Exhaustive prestructure search; `full` searches every non-identity `z`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_group_has_prestructure(const struct DdkGroup *g, bool full, bool *out);

/**
 * Number of structures of type (2, n), by backtracking.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_group_count_structures(const struct DdkGroup *g, size_t n, uint64_t *out);

/**
 * Number of structures of type (2, 2) on an extra-special group of
 * order 32, by the symplectic construction.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_group_symplectic_count(const struct DdkGroup *g, uint64_t *out);

/**
 * Order of the automorphism group.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_group_aut_order(const struct DdkGroup *g, size_t *out);

/**
 * Verifies a `(4b + 1)`-tuple of element indices as a structure of type (b, n).
 *
 * # Safety
 * `g` must be a live handle, `elements` must point to `len` values and
 * `out` must be a valid pointer.
 */
enum DdkStatus ddk_structure_new(const struct DdkGroup *g,
                                 const size_t *elements,
                                 size_t len,
                                 size_t b,
                                 size_t n,
                                 struct DdkStructure **out);

/**
 * The explicit example structure, resolved from words in `r1 t1 r2 t2 z`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_structure_example(const struct DdkGroup *g, struct DdkStructure **out);

/**
 * Releases a structure handle. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ddk_structure_free(struct DdkStructure *s);

/**
 * Signature of the associated surface.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_structure_signature(const struct DdkStructure *s, int64_t *out);

/**
 * First homology of the surface: free rank and torsion coefficients.
 * `torsion` receives up to `capacity` values; `torsion_len` receives the
 * full count, and `DDK_STATUS_BUFFER_TOO_SMALL` is returned if it exceeds
 * `capacity`.
 *
 * # Safety
 * `s` must be a live handle; `free_rank` and `torsion_len` must be valid
 * pointers; `torsion` must hold `capacity` values or be null when
 * `capacity` is zero.
 */
enum DdkStatus ddk_structure_homology(const struct DdkStructure *s,
                                      size_t *free_rank,
                                      uint64_t *torsion,
                                      size_t capacity,
                                      size_t *torsion_len);

/**
 * The invariant report of a structure as JSON. Free with [`ddk_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum DdkStatus ddk_structure_report_json(const struct DdkStructure *s, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ddk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DDK_H */
