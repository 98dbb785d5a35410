#ifndef FTV_H
#define FTV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FtvStatus {
  FTV_STATUS_OK = 0,
  FTV_STATUS_NULL_POINTER = 1,
  FTV_STATUS_INVALID_UTF8 = 2,
  // Bad input data: malformed JSON, wrong shapes, not a fan, bad framing.
  FTV_STATUS_INVALID_INPUT = 3,
  // A search cap was reached.
  FTV_STATUS_CAP_EXCEEDED = 4,
  // An internal consistency check failed.
  FTV_STATUS_INVARIANT_VIOLATED = 5,
  // A value does not fit in the caller's buffer or in `int64_t`.
  FTV_STATUS_BUFFER_TOO_SMALL = 6,
  FTV_STATUS_OVERFLOW = 7,
  FTV_STATUS_PANIC = 8,
} FtvStatus;

// The result of running the f-process on a variety.
typedef struct FtvProcess FtvProcess;

// A fan with a strictly positive framing.
typedef struct FtvVariety FtvVariety;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the
// library; valid until the next call on this thread.
const char *ftv_last_error(void);

// Library version as a static string.
const char *ftv_version(void);

// Builds a variety from a row-major `rows × cols` fan matrix (columns are
// rays) and a framing of length `cols`.
//
// # Safety
// `fan` must point to `rows * cols` values, `framing` to `cols` values and
// `out` to writable storage.
enum FtvStatus ftv_variety_new(const int64_t *fan,
                               size_t rows,
                               size_t cols,
                               const int64_t *framing,
                               struct FtvVariety **out);

// Builds a variety from the `variety` and `framing` fields of a problem
// file.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum FtvStatus ftv_variety_from_json(const char *json, struct FtvVariety **out);

// # Safety
// `v` must come from this library and not have been freed. Null is a no-op.
void ftv_variety_free(struct FtvVariety *v);

// Runs the f-process with multiplier cap `k_cap` (0 for the default).
//
// # Safety
// `v` must be a live variety handle and `out` writable.
enum FtvStatus ftv_process_run(const struct FtvVariety *v, uint64_t k_cap, struct FtvProcess **out);

// # Safety
// `p` must come from this library and not have been freed. Null is a no-op.
void ftv_process_free(struct FtvProcess *p);

// # Safety
// `p` must be a live process handle and `out` writable.
enum FtvStatus ftv_process_is_calibrated(const struct FtvProcess *p, bool *out);

// Writes `k₀` and `k₁`.
//
// # Safety
// `p` must be a live process handle; `k0` and `k1` writable.
enum FtvStatus ftv_process_multipliers(const struct FtvProcess *p, uint64_t *k0, uint64_t *k1);

// Copies the dual framing `b` into `buf`. `len` receives the number of
// entries; if `cap` is smaller nothing is copied and the call fails with
// `BufferTooSmall`.
//
// # Safety
// `buf` must have room for `cap` values; `p` live and `len` writable.
enum FtvStatus ftv_process_dual_framing(const struct FtvProcess *p,
                                        int64_t *buf,
                                        size_t cap,
                                        size_t *len);

// Full process record as JSON.
//
// # Safety
// `p` must be a live process handle and `out` writable.
enum FtvStatus ftv_process_to_json(const struct FtvProcess *p, char **out);

// Runs a command (`dualize`, `ci-dualize`, `lg`, `subfamily` or
// `enumerate`) on a problem file and returns the JSON report.
//
// # Safety
// `command` and `problem` must be NUL-terminated; `out` writable.
enum FtvStatus ftv_run_json(const char *command, const char *problem, char **out);

// Frees a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must come from this library and not have been freed.
void ftv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FTV_H */
