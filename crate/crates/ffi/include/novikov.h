#ifndef NOVIKOV_H
#define NOVIKOV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes. `NOV_STATUS_OK` is zero.
 */
typedef enum NovStatus {
  NOV_STATUS_OK = 0,
  NOV_STATUS_NULL_POINTER = 1,
  NOV_STATUS_INVALID_UTF8 = 2,
  NOV_STATUS_UNKNOWN_NAME = 3,
  NOV_STATUS_PARSE = 4,
  NOV_STATUS_INVALID_INPUT = 5,
  NOV_STATUS_ARITHMETIC = 6,
  NOV_STATUS_PANIC = 7,
} NovStatus;

/*
 Opaque algebra handle.
 */
typedef struct NovAlgebra NovAlgebra;

typedef struct NovIdentities {
  bool right_commutative;
  bool left_symmetric;
  bool novikov;
  bool two_step;
  /*
   Smallest `m` with `A^m = 0`, or 0 when not nilpotent.
   */
  size_t nilpotency_index;
} NovIdentities;

typedef struct NovCohomologyDims {
  size_t z2;
  size_t b2;
  size_t h2;
} NovCohomologyDims;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. Valid until the
 next failing call on the same thread.
 */
const char *nov_last_error(void);

/*
 Library version as a static string.
 */
const char *nov_version(void);

/*
 Looks up a catalog algebra by name or alias. `params_json` is NULL or a
 JSON object mapping parameter names to expressions, e.g. `{"alpha":"2"}`.

 # Safety
 String arguments must be NULL or valid NUL-terminated strings; `out` must
 be a valid pointer.
 */
enum NovStatus nov_algebra_from_catalog(const char *name,
                                        const char *params_json,
                                        struct NovAlgebra **out);

/*
 Builds an algebra from the JSON algebra schema.

 # Safety
 `json` must be NULL or a valid NUL-terminated string; `out` must be a valid pointer.
 */
enum NovStatus nov_algebra_from_json(const char *json, struct NovAlgebra **out);

/*
 Releases a handle. NULL is ignored.

 # Safety
 `h` must be NULL or a handle from this library not yet freed.
 */
void nov_algebra_free(struct NovAlgebra *h);

/*
 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum NovStatus nov_algebra_dim(const struct NovAlgebra *h, size_t *out);

/*
 Identity flags and nilpotency, decided generically in the parameters.

 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum NovStatus nov_algebra_check(const struct NovAlgebra *h, struct NovIdentities *out);

/*
 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum NovStatus nov_algebra_derivation_dim(const struct NovAlgebra *h, size_t *out);

/*
 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum NovStatus nov_cohomology_dims(const struct NovAlgebra *h, struct NovCohomologyDims *out);

/*
 Central extension by a single cocycle such as `"D12 + D31"`.

 # Safety
 `h` must be a live handle, `cocycle` a valid string and `out` a valid pointer.
 */
enum NovStatus nov_central_extension(const struct NovAlgebra *h,
                                     const char *cocycle,
                                     struct NovAlgebra **out);

/*
 The algebra in the JSON schema; free with [`nov_string_free`].

 # Safety
 `h` must be a live handle and `out` a valid pointer.
 */
enum NovStatus nov_algebra_to_json(const struct NovAlgebra *h, char **out);

/*
 Verifies a bundled degeneration witness (e.g. `"B07"`). `digits` of 0
 selects the default. `pass` receives the verdict and `report_json`, if
 not NULL, the full report.

 # Safety
 `id` must be a valid string, `pass` a valid pointer, `report_json` NULL or valid.
 */
enum NovStatus nov_verify_witness(const char *id,
                                  uint32_t digits,
                                  uint64_t seed,
                                  bool *pass,
                                  char **report_json);

/*
 Frees a string returned by this library. NULL is ignored.

 # Safety
 `s` must be NULL or a string from this library not yet freed.
 */
void nov_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NOVIKOV_H */
