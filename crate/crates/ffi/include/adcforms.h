#ifndef ADCFORMS_H
#define ADCFORMS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AdcStatus {
  ADC_STATUS_OK = 0,
  /**
   * The answer is no (not represented, descent failed, ...).
   */
  ADC_STATUS_NEGATIVE = 1,
  ADC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A search bound or the enumeration cap was reached first.
   */
  ADC_STATUS_INCONCLUSIVE = 3,
  ADC_STATUS_NULL_POINTER = 4,
  ADC_STATUS_PANIC = 5,
} AdcStatus;

/**
 * Opaque quadratic form.
 */
typedef struct AdcForm AdcForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a form descriptor such as
 * `{"ring":"Z","dim":2,"coeffs":[[1,1,"1"],[2,2,"3"]]}`.
 *
 * # Safety
 * `json` is a NUL-terminated string and `out` is writable.
 */
enum AdcStatus adc_form_from_json(const char *json, struct AdcForm **out);

/**
 * Load a built-in form by name (`sum3`, `q1`, `nebe5`, `fqt-sum2`, ...).
 *
 * # Safety
 * `name` is a NUL-terminated string and `out` is writable.
 */
enum AdcStatus adc_form_from_fixture(const char *name, struct AdcForm **out);

/**
 * # Safety
 * `form` is null or a handle not yet freed.
 */
void adc_form_free(struct AdcForm *form);

/**
 * # Safety
 * `form` is a live handle and `out` is writable.
 */
enum AdcStatus adc_form_dim(const struct AdcForm *form, size_t *out);

/**
 * The form's descriptor as JSON.
 *
 * # Safety
 * `form` is a live handle and `out` is writable.
 */
enum AdcStatus adc_form_to_json(const struct AdcForm *form, char **out);

/**
 * `q(x)` for a JSON array `x` of fraction-field elements.
 *
 * # Safety
 * `form` is a live handle, `x_json` a NUL-terminated string, `out` writable.
 */
enum AdcStatus adc_form_evaluate(const struct AdcForm *form, const char *x_json, char **out);

/**
 * Integral representation of `d` (a JSON ring element). Returns `Ok` with
 * the solution, `Negative` when none exists, `Inconclusive` when the search
 * within `box_bound` was not exhaustive.
 *
 * # Safety
 * `form` is a live handle, `d_json` a NUL-terminated string, `out` writable.
 */
enum AdcStatus adc_form_represents(const struct AdcForm *form,
                                   const char *d_json,
                                   uint32_t box_bound,
                                   char **out);

/**
 * Witness search for `d` up to `t_bound`, then descent; writes the trace.
 *
 * # Safety
 * `form` is a live handle, `d_json` a NUL-terminated string, `out` writable.
 */
enum AdcStatus adc_form_descend(const struct AdcForm *form,
                                const char *d_json,
                                uint32_t t_bound,
                                char **out);

/**
 * Euclidean classification as JSON `{"class": ..., "reason": ...}`.
 *
 * # Safety
 * `form` is a live handle and `out` is writable.
 */
enum AdcStatus adc_form_is_euclidean(const struct AdcForm *form, char **out);

/**
 * Whether the decimal integer `n` is a sum of three squares.
 *
 * # Safety
 * `n` is a NUL-terminated string and `out` is writable.
 */
enum AdcStatus adc_three_squares_predicate(const char *n, bool *out);

/**
 * Three squares summing to the decimal integer `n`, as a JSON array of
 * decimal strings. `Negative` (with the obstruction as the message) when
 * there are none.
 *
 * # Safety
 * `n` is a NUL-terminated string and `out` is writable.
 */
enum AdcStatus adc_sum_three_squares(const char *n, uint32_t t_bound, char **out);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void adc_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *adc_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADCFORMS_H */
