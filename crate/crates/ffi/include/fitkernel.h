#ifndef FITKERNEL_H
#define FITKERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum FkStatus {
  FK_STATUS_OK = 0,
  FK_STATUS_NULL_POINTER = 1,
  FK_STATUS_INVALID_UTF8 = 2,
  FK_STATUS_SCHEMA = 3,
  FK_STATUS_UNSUPPORTED_FIELD = 4,
  FK_STATUS_UNKNOWN_GROUP = 5,
  FK_STATUS_MATH = 6,
  FK_STATUS_PANIC = 7,
} FkStatus;

// Opaque handle holding a group and a prime.
typedef struct FkContext FkContext;

// Creates a context for the group described by `group_json` (for example
// `{"family": "dihedral", "param": 8}`) and the prime `p`.
//
// # Safety
// `group_json` must be a valid NUL-terminated string and `out` a valid pointer.
enum FkStatus fk_context_new(const char *group_json, uint64_t p, struct FkContext **out);

// Releases a context; null is ignored.
//
// # Safety
// `ctx` must come from `fk_context_new` and not be used afterwards.
void fk_context_free(struct FkContext *ctx);

// Runs `verb` on `input_json` (null means `{}`) and stores the JSON report in `*out`.
//
// # Safety
// `ctx` must be a live context, `verb` a valid string, `input_json` null or a valid string and
// `out` a valid pointer. The report must be released with `fk_string_free`.
enum FkStatus fk_run(const struct FkContext *ctx,
                     const char *verb,
                     const char *input_json,
                     char **out);

// Releases a string returned by `fk_run`; null is ignored.
//
// # Safety
// `s` must come from `fk_run` and not be used afterwards.
void fk_string_free(char *s);

// Message of the last failure on this thread, or null. Valid until the next call on the thread.
const char *fk_last_error(void);

#endif  /* FITKERNEL_H */
