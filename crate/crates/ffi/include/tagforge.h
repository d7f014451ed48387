#ifndef TAGFORGE_H
#define TAGFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TfMethod {
  TF_METHOD_TREE = 0,
  TF_METHOD_CYCLE_TREE = 1,
  TF_METHOD_ILP = 2,
} TfMethod;

typedef enum TfPairwise {
  TF_PAIRWISE_C = 0,
  TF_PAIRWISE_CBAR = 1,
} TfPairwise;

typedef enum TfProvenance {
  TF_PROVENANCE_TREE_SEARCH = 0,
  TF_PROVENANCE_CYCLE_PACKING = 1,
  TF_PROVENANCE_ILP = 2,
} TfProvenance;

typedef enum TfStabilityKind {
  TF_STABILITY_KIND_LENGTH = 0,
  TF_STABILITY_KIND_MIN_WEIGHT = 1,
} TfStabilityKind;

typedef enum TfStatus {
  TF_STATUS_OK = 0,
  TF_STATUS_NULL_POINTER = 1,
  TF_STATUS_PARAMETER = 2,
  TF_STATUS_INPUT = 3,
  TF_STATUS_CONTRACT = 4,
  TF_STATUS_SOLVER = 5,
  TF_STATUS_IO = 6,
  TF_STATUS_OUT_OF_RANGE = 7,
  TF_STATUS_PANIC = 8,
} TfStatus;

typedef enum TfTokenMode {
  TF_TOKEN_MODE_UNIQUE = 0,
  TF_TOKEN_MODE_MULTIPLE = 1,
} TfTokenMode;

/**
 * Opaque tag set handle.
 */
typedef struct TfTagSet TfTagSet;

/**
 * Design request. Fill with [`tf_design_params_default`] first.
 */
typedef struct TfDesignParams {
  enum TfMethod method;
  uint32_t c;
  enum TfStabilityKind stability;
  /**
   * `l` for `TF_STABILITY_KIND_LENGTH`, `h` for `TF_STABILITY_KIND_MIN_WEIGHT`.
   */
  uint32_t stability_value;
  enum TfPairwise pairwise;
  /**
   * Ignored by `TF_METHOD_CYCLE_TREE` (always multiple) and `TF_METHOD_ILP` (always unique).
   */
  enum TfTokenMode token_mode;
  size_t max_period;
  /**
   * Nonzero keeps the paired C0 cut rows in the ILP.
   */
  uint8_t cut5;
  double time_limit_seconds;
} TfDesignParams;

typedef struct TfStats {
  size_t tags;
  size_t c_tokens;
  double pct_cyclic;
} TfStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *tf_last_error_message(void);

void tf_clear_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tf_version(void);

/**
 * Writes the number of c-tokens for `c` to `*out`.
 *
 * # Safety
 * `out` must be NULL or valid for writes.
 */
enum TfStatus tf_token_count(uint32_t c, size_t *out);

/**
 * # Safety
 * `params` must be NULL or valid for writes.
 */
enum TfStatus tf_design_params_default(struct TfDesignParams *params);

/**
 * Runs a design and, on success, stores a new handle in `*out`. The result
 * has passed the verifier; an infeasible design is reported as
 * `TF_STATUS_CONTRACT`.
 *
 * # Safety
 * `params` must be NULL or point to an initialized `TfDesignParams`; `out`
 * must be NULL or valid for writes.
 */
enum TfStatus tf_design(const struct TfDesignParams *params, struct TfTagSet **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `set` must be NULL or a handle from this library that was not freed yet.
 */
void tf_tagset_free(struct TfTagSet *set);

/**
 * Number of tags, or 0 for NULL.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
size_t tf_tagset_len(const struct TfTagSet *set);

/**
 * Borrowed NUL-terminated text of tag `index`, valid while the handle
 * lives; NULL when out of range.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
const char *tf_tagset_tag(const struct TfTagSet *set, size_t index);

/**
 * # Safety
 * `set` must be NULL or a live handle; `out` must be NULL or valid for writes.
 */
enum TfStatus tf_tagset_provenance(const struct TfTagSet *set,
                                   size_t index,
                                   enum TfProvenance *out);

/**
 * # Safety
 * `set` must be NULL or a live handle; `out` must be NULL or valid for writes.
 */
enum TfStatus tf_tagset_stats(const struct TfTagSet *set, struct TfStats *out);

/**
 * Verifies newline-separated tags (the tag file format) and writes the
 * number of violations to `*violations`.
 *
 * # Safety
 * `text` must be NULL or a NUL-terminated string; `violations` must be NULL
 * or valid for writes.
 */
enum TfStatus tf_verify_text(const char *text,
                             uint32_t c,
                             enum TfStabilityKind kind,
                             uint32_t value,
                             enum TfPairwise pw,
                             enum TfTokenMode mode,
                             size_t *violations);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAGFORGE_H */
