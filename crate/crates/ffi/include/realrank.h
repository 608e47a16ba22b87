#ifndef REALRANK_H
#define REALRANK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RealrankStatus {
  REALRANK_STATUS_OK = 0,
  REALRANK_STATUS_NULL_POINTER = 1,
  REALRANK_STATUS_INVALID_UTF8 = 2,
  REALRANK_STATUS_PARSE_ERROR = 3,
  REALRANK_STATUS_ZERO_FORM = 4,
  REALRANK_STATUS_INVALID_ARGUMENT = 5,
  REALRANK_STATUS_LABEL_NOT_ACHIEVABLE = 6,
  /*
   The answer could not be decided within the search budget.
   */
  REALRANK_STATUS_INCONCLUSIVE = 7,
  REALRANK_STATUS_CERTIFICATION_FAILED = 8,
  REALRANK_STATUS_OUT_OF_RANGE = 9,
  REALRANK_STATUS_INTERNAL = 99,
} RealrankStatus;

/*
 A real binary form, kept at the scale it was given.
 */
typedef struct RealrankForm RealrankForm;

/*
 Ranks, witnesses and labels of one form.
 */
typedef struct RealrankReport RealrankReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *realrank_version(void);

/*
 Static name of a status code, for example `"LABEL_NOT_ACHIEVABLE"`.
 */
const char *realrank_status_name(enum RealrankStatus status);

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next call into the library on the same thread.
 */
const char *realrank_last_error(void);

/*
 Parses comma-separated coefficients `c_0,...,c_d` ("p" or "p/q"), where
 `c_i` multiplies `x^(d-i) y^i`.

 # Safety
 `coeffs` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RealrankStatus realrank_form_parse(const char *coeffs, struct RealrankForm **out);

/*
 # Safety
 `form` must come from [`realrank_form_parse`] and not be used afterwards.
 */
void realrank_form_free(struct RealrankForm *form);

/*
 Degree of the form, or 0 for a null handle.

 # Safety
 `form` must be null or a live handle.
 */
size_t realrank_form_degree(const struct RealrankForm *form);

/*
 Computes complex, admissible and real ranks and the labels at the
 admissible rank.

 # Safety
 `form` must be a live handle and `out` a valid pointer.
 */
enum RealrankStatus realrank_rank(const struct RealrankForm *form, struct RealrankReport **out);

/*
 # Safety
 `report` must come from [`realrank_rank`] and not be used afterwards.
 */
void realrank_report_free(struct RealrankReport *report);

/*
 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum RealrankStatus realrank_report_complex_rank(const struct RealrankReport *report, size_t *out);

/*
 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum RealrankStatus realrank_report_admissible_rank(const struct RealrankReport *report,
                                                    size_t *out);

/*
 Bounds on the real rank; `lo == hi` when it is decided.

 # Safety
 `report` must be a live handle; `lo` and `hi` valid pointers.
 */
enum RealrankStatus realrank_report_real_rank(const struct RealrankReport *report,
                                              size_t *lo,
                                              size_t *hi);

/*
 The real rank, or `INCONCLUSIVE` when it is only bracketed.

 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum RealrankStatus realrank_report_real_rank_exact(const struct RealrankReport *report,
                                                    size_t *out);

/*
 Number of labels at the admissible rank.

 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum RealrankStatus realrank_report_label_count(const struct RealrankReport *report, size_t *out);

/*
 Label `index` (in increasing order of `a`) at the admissible rank.

 # Safety
 `report` must be a live handle; `s` and `a` valid pointers.
 */
enum RealrankStatus realrank_report_label(const struct RealrankReport *report,
                                          size_t index,
                                          size_t *s,
                                          size_t *a);

/*
 Whether the label list is known to be complete (1) or only sound (0).

 # Safety
 `report` must be a live handle and `out` a valid pointer.
 */
enum RealrankStatus realrank_report_labels_complete(const struct RealrankReport *report, bool *out);

/*
 The full report as JSON, in the same format as `realrank rank`.

 # Safety
 `report` must be a live handle and `out` a valid pointer. Free the
 string with [`realrank_string_free`].
 */
enum RealrankStatus realrank_report_to_json(const struct RealrankReport *report, char **out);

/*
 Decomposes the form with the requested label and writes the certified
 decomposition as JSON, in the same format as `realrank decompose`.
 `s = 0` selects the admissible witness.

 # Safety
 `form` must be a live handle and `out` a valid pointer. Free the string
 with [`realrank_string_free`].
 */
enum RealrankStatus realrank_decompose_json(const struct RealrankForm *form,
                                            size_t s,
                                            size_t a,
                                            double tol,
                                            char **out);

/*
 Releases a string returned by the library.

 # Safety
 `s` must be null or a string returned by this library, freed once.
 */
void realrank_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REALRANK_H */
