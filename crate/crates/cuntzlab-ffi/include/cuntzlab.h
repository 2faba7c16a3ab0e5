#ifndef CUNTZLAB_H
#define CUNTZLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes. Zero is success.
 */
typedef enum CuStatus {
  CU_STATUS_OK = 0,
  CU_STATUS_NULL_ARGUMENT = 1,
  CU_STATUS_INVALID_UTF8 = 2,
  CU_STATUS_PARSE = 3,
  CU_STATUS_STRUCTURE = 4,
  CU_STATUS_INVALID = 5,
  CU_STATUS_BOUND = 6,
  CU_STATUS_ELEMENT = 7,
  CU_STATUS_UNKNOWN = 8,
  CU_STATUS_NO_CLOSED_FORM = 9,
  CU_STATUS_UNSUPPORTED = 10,
  CU_STATUS_PRECONDITION = 11,
  CU_STATUS_MISMATCH = 12,
  CU_STATUS_PATH = 13,
  CU_STATUS_BIMORPHISM = 14,
  CU_STATUS_PANIC = 15,
} CuStatus;

/*
 A bivariant Cu-semigroup `⟦S,T⟧`.
 */
typedef struct CuBivariant CuBivariant;

/*
 A validated finite Q-semigroup loaded from a structure file.
 */
typedef struct CuStructure CuStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *cu_last_error(void);

/*
 Library version as a static string.
 */
const char *cu_version(void);

/*
 # Safety
 `s` is null or was returned by this library and not yet freed.
 */
void cu_string_free(char *s);

/*
 Parses and validates structure-file JSON.

 # Safety
 `json` is a nul-terminated string; `out` is writable.
 */
enum CuStatus cu_structure_parse(const char *json, struct CuStructure **out);

/*
 Loads and validates a structure file from disk.

 # Safety
 `path` is a nul-terminated string; `out` is writable.
 */
enum CuStatus cu_structure_load(const char *path, struct CuStructure **out);

/*
 # Safety
 `h` is null or a live handle from this library.
 */
void cu_structure_free(struct CuStructure *h);

/*
 Number of elements, or 0 for a null handle.

 # Safety
 `h` is null or a live handle.
 */
size_t cu_structure_size(const struct CuStructure *h);

/*
 Canonical JSON of the structure.

 # Safety
 `h` is a live handle; `out` is writable.
 */
enum CuStatus cu_structure_to_json(const struct CuStructure *h, char **out);

/*
 Elements of τ(S), written `{a,b,...}`.

 # Safety
 `h` is a live handle; `out` is writable.
 */
enum CuStatus cu_structure_tau(const struct CuStructure *h, char **out);

/*
 Counts O5 and O6 failures of the underlying pom.

 # Safety
 `h` is a live handle; `o5` and `o6` are writable.
 */
enum CuStatus cu_structure_axioms(const struct CuStructure *h, size_t *o5, size_t *o6);

/*
 Checks structure-file JSON without building a handle. `violations`
 receives the number of violated laws, and `report` (if non-null) a
 line per violation.

 # Safety
 `json` is a nul-terminated string; `violations` is writable; `report` is null or writable.
 */
enum CuStatus cu_validate_json(const char *json, size_t *violations, char **report);

/*
 Builds `⟦S,T⟧`. Spaces are file paths, `0`, `+`-separated sums or catalog
 names. `bound` caps enumeration; 0 means the library default.

 # Safety
 `source` and `target` are nul-terminated strings; `out` is writable.
 */
enum CuStatus cu_bivariant_new(const char *source,
                               const char *target,
                               size_t bound,
                               struct CuBivariant **out);

/*
 # Safety
 `h` is null or a live handle from this library.
 */
void cu_bivariant_free(struct CuBivariant *h);

/*
 The carrier: an element list for finite pairs, a catalog name otherwise.

 # Safety
 `h` is a live handle; `out` is writable.
 */
enum CuStatus cu_bivariant_describe(const struct CuBivariant *h, char **out);

/*
 Evaluates the element `x` of `⟦S,T⟧` at the element `s` of `S`.

 # Safety
 `h` is a live handle; `x` and `s` are nul-terminated strings; `out` is writable.
 */
enum CuStatus cu_bivariant_evaluate(const struct CuBivariant *h,
                                    const char *x,
                                    const char *s,
                                    char **out);

/*
 Composes two `S->T:ELEM` expressions, outer after inner.

 # Safety
 `outer` and `inner` are nul-terminated strings; `out` is writable.
 */
enum CuStatus cu_compose(const char *outer, const char *inner, size_t bound, char **out);

/*
 Closed form of the tensor product of two catalog carriers.

 # Safety
 `left` and `right` are nul-terminated strings; `out` is writable.
 */
enum CuStatus cu_tensor(const char *left, const char *right, char **out);

/*
 Runs one reproduction case. `pass` receives the verdict and `actual` the computed output.

 # Safety
 `id` is a nul-terminated string; `pass` and `actual` are writable.
 */
enum CuStatus cu_repro(const char *id, bool *pass, char **actual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUNTZLAB_H */
