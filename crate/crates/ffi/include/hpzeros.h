#ifndef HPZEROS_H
#define HPZEROS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum HpStatus {
  HP_STATUS_OK = 0,
  HP_STATUS_NULL_POINTER = 1,
  HP_STATUS_INVALID_ARGUMENT = 2,
  HP_STATUS_OUT_OF_RANGE = 3,
  HP_STATUS_NON_GENERIC = 4,
  HP_STATUS_NUMERICAL = 5,
  HP_STATUS_IO = 6,
  HP_STATUS_PANIC = 7,
} HpStatus;

/*
 Type I Hermite-Padé triple `(q0, q1, q2)`.
 */
typedef struct HpHermitePade HpHermitePade;

/*
 Polynomial with complex multiprecision coefficients.
 */
typedef struct HpPolynomial HpPolynomial;

/*
 Result of a figure preset run.
 */
typedef struct HpRun HpRun;

/*
 Roots of one polynomial.
 */
typedef struct HpZeros HpZeros;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failing call on this thread, or null. The pointer is
 valid until the next failing call on the same thread.
 */
const char *hp_last_error_message(void);

/*
 Library version as a static string.
 */
const char *hp_version(void);

/*
 Releases a string returned by this library.
 */
void hp_string_free(char *s);

/*
 Number of figure presets.
 */
size_t hp_preset_count(void);

/*
 Id of preset `i` as a static string, or null when out of range.
 */
const char *hp_preset_id(size_t i);

/*
 Runs preset `id`. `n < 0` keeps the preset degree and `bits == 0` the
 default precision.
 */
enum HpStatus hp_run_preset(const char *id,
                            int64_t n,
                            uint32_t bits,
                            uint64_t seed,
                            struct HpRun **out);

void hp_run_free(struct HpRun *run);

/*
 Degree actually used by the run, or 0 for a null handle.
 */
size_t hp_run_degree(const struct HpRun *run);

/*
 Number of hard checks that failed, or 0 for a null handle.
 */
size_t hp_run_failure_count(const struct HpRun *run);

/*
 Number of zero sets the preset displays.
 */
size_t hp_run_set_count(const struct HpRun *run);

/*
 Copies displayed zero set `i` into a new handle.
 */
enum HpStatus hp_run_set(const struct HpRun *run, size_t i, struct HpZeros **out);

/*
 Full JSON report of the run.
 */
enum HpStatus hp_run_report_json(const struct HpRun *run, char **out);

/*
 Polynomial from `len` ascending coefficients given as separate real and
 imaginary parts. `im` may be null for real input. `bits == 0` picks the
 default for the degree.
 */
enum HpStatus hp_polynomial_new(const double *re,
                                const double *im,
                                size_t len,
                                uint32_t bits,
                                struct HpPolynomial **out);

void hp_polynomial_free(struct HpPolynomial *p);

/*
 Degree after trimming zero leading coefficients.
 */
size_t hp_polynomial_degree(const struct HpPolynomial *p);

/*
 All roots of `p` with multiplicity at the polynomial's precision.
 */
enum HpStatus hp_polynomial_roots(const struct HpPolynomial *p,
                                  uint64_t seed,
                                  struct HpZeros **out);

void hp_zeros_free(struct HpZeros *z);

/*
 Number of roots, or 0 for a null handle.
 */
size_t hp_zeros_len(const struct HpZeros *z);

/*
 Root `k` rounded to doubles.
 */
enum HpStatus hp_zeros_get(const struct HpZeros *z, size_t k, double *re, double *im);

/*
 Whether root `k` was flagged as part of a cluster; false when out of
 range.
 */
bool hp_zeros_is_multiple(const struct HpZeros *z, size_t k);

/*
 JSON document of the zero set with roots at full precision.
 */
enum HpStatus hp_zeros_json(const struct HpZeros *z, char **out);

/*
 Type I triple of degree `n` for the two-segment functions of Case
 `case` (1, 2 or 3) with parameter `a` given as a decimal or `p/q`
 string.
 */
enum HpStatus hp_hermite_pade_case(uint8_t case_,
                                   const char *a,
                                   size_t n,
                                   uint32_t bits,
                                   struct HpHermitePade **out);

void hp_hermite_pade_free(struct HpHermitePade *t);

/*
 Degree `n` of the triple.
 */
size_t hp_hermite_pade_degree(const struct HpHermitePade *t);

/*
 Largest residual coefficient of the remainder window, as a double.
 */
double hp_hermite_pade_residual(const struct HpHermitePade *t);

/*
 Coefficient of `z^k` in `q_j`, `j` in 0..3 and `k` in 0..=n.
 */
enum HpStatus hp_hermite_pade_coeff(const struct HpHermitePade *t,
                                    size_t j,
                                    size_t k,
                                    double *re,
                                    double *im);

/*
 Copies `q_j` into a polynomial handle at the triple's precision.
 */
enum HpStatus hp_hermite_pade_polynomial(const struct HpHermitePade *t,
                                         size_t j,
                                         struct HpPolynomial **out);

/*
 JSON document of the triple with coefficients at full precision.
 */
enum HpStatus hp_hermite_pade_json(const struct HpHermitePade *t, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HPZEROS_H */
