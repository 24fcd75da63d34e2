/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef CONVEX_CODES_H
#define CONVEX_CODES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_UTF8 = 2,
  CC_STATUS_PARSE_ERROR = 3,
  CC_STATUS_PRECONDITION = 4,
  /*
   No construction covers the code.
   */
  CC_STATUS_NOT_COVERED = 5,
  CC_STATUS_VERIFICATION_FAILED = 6,
  /*
   Malformed realization document.
   */
  CC_STATUS_DOCUMENT_ERROR = 7,
  /*
   A panic was caught at the boundary.
   */
  CC_STATUS_INTERNAL = 8,
} CcStatus;

typedef enum CcVerdict {
  CC_VERDICT_CONVEX = 0,
  CC_VERDICT_NONCONVEX = 1,
  CC_VERDICT_UNKNOWN = 2,
} CcVerdict;

/*
 Opaque parsed neural code.
 */
typedef struct CcCode CcCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses code text such as `"134,1357,13"` or `"{1,3},{2}"`.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CcStatus cc_code_parse(const char *text, struct CcCode **out);

/*
 # Safety
 `code` must come from [`cc_code_parse`] and not be freed twice. NULL is ignored.
 */
void cc_code_free(struct CcCode *code);

/*
 Declared neuron count and number of codewords (including the empty one).

 # Safety
 `code` must be a live handle; either output pointer may be NULL.
 */
enum CcStatus cc_code_size(const struct CcCode *code, uint32_t *neurons, size_t *codewords);

/*
 Compact text form, e.g. `"{},13,35,134,356,1357"`.

 # Safety
 `code` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_code_to_text(const struct CcCode *code, char **out);

/*
 Decides convexity. `budget` caps the sprocket search; 0 uses the default.

 # Safety
 `code` must be a live handle and `verdict` a valid pointer.
 */
enum CcStatus cc_decide(const struct CcCode *code, uint64_t budget, enum CcVerdict *verdict);

/*
 Full report as JSON, including a realization when one is built.

 # Safety
 `code` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_analyze_json(const struct CcCode *code, uint64_t budget, char **out);

/*
 Builds and verifies a realization and returns its JSON document.
 Returns `NotCovered` when no construction applies and `Precondition`
 when the code is not CONVEX.

 # Safety
 `code` must be a live handle and `out` a valid pointer.
 */
enum CcStatus cc_realize_json(const struct CcCode *code, char **out);

/*
 Checks a realization document against the code. Returns `Ok` when it
 realizes the code exactly and `VerificationFailed` otherwise. When
 `report` is not NULL it receives the verification JSON in both cases.

 # Safety
 `code` must be a live handle, `realization` a NUL-terminated string and
 `report` NULL or a valid pointer.
 */
enum CcStatus cc_verify_json(const struct CcCode *code, const char *realization, char **report);

/*
 # Safety
 `s` must come from this library and not be freed twice. NULL is ignored.
 */
void cc_string_free(char *s);

/*
 Message of the last failure on this thread, or NULL. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *cc_last_error_message(void);

/*
 Library version as a static string.
 */
const char *cc_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CONVEX_CODES_H */
