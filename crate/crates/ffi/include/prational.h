#ifndef PRATIONAL_H
#define PRATIONAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PrStatus {
  PR_STATUS_OK = 0,
  PR_STATUS_NULL_POINTER = 1,
  PR_STATUS_INVALID_ARGUMENT = 2,
  PR_STATUS_UNSUPPORTED_PRIME = 3,
  PR_STATUS_OUT_OF_RANGE = 4,
  PR_STATUS_INTERNAL = 5,
} PrStatus;

typedef enum PrConclusion {
  PR_CONCLUSION_CERTIFIED = 0,
  PR_CONCLUSION_FAILED = 1,
  PR_CONCLUSION_UNDECIDED = 2,
} PrConclusion;

typedef enum PrVerdict {
  PR_VERDICT_PROVED = 0,
  PR_VERDICT_REFUTED = 1,
  PR_VERDICT_INCONCLUSIVE = 2,
} PrVerdict;

/**
 * Opaque certificate handle.
 */
typedef struct PrCertificate PrCertificate;

/**
 * Opaque list of search results.
 */
typedef struct PrPrimeList PrPrimeList;

/**
 * One search record: `m² | p + 2`, `n² | p - 2`.
 */
typedef struct PrFlankedPrime {
  uint64_t p;
  uint64_t m;
  uint64_t n;
} PrFlankedPrime;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code.
 */
const char *pr_status_message(enum PrStatus status);

/**
 * Certifies `p` and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum PrStatus pr_certify(uint64_t p, struct PrCertificate **out);

/**
 * # Safety
 * `cert` must come from [`pr_certify`]; `out` must be valid for writes.
 */
enum PrStatus pr_certificate_conclusion(const struct PrCertificate *cert, enum PrConclusion *out);

/**
 * Verdict of subfield `index` (0 for K1, ..., 6 for K7).
 *
 * # Safety
 * `cert` must come from [`pr_certify`]; `out` must be valid for writes.
 */
enum PrStatus pr_certificate_subfield(const struct PrCertificate *cert,
                                      uintptr_t index,
                                      int64_t *kernel,
                                      enum PrVerdict *out);

/**
 * Independently re-checks the certificate.
 *
 * # Safety
 * `cert` must come from [`pr_certify`]; `valid` must be valid for writes.
 */
enum PrStatus pr_certificate_verify(const struct PrCertificate *cert, bool *valid);

/**
 * The `cert-v1` text; release it with [`pr_string_free`].
 *
 * # Safety
 * `cert` must come from [`pr_certify`]; `out` must be valid for writes.
 */
enum PrStatus pr_certificate_text(const struct PrCertificate *cert, char **out);

/**
 * # Safety
 * `cert` must be null or come from [`pr_certify`], and not be used again.
 */
void pr_certificate_free(struct PrCertificate *cert);

/**
 * # Safety
 * `s` must be null or come from this library, and not be used again.
 */
void pr_string_free(char *s);

/**
 * Primes `3 <= p <= limit` whose `p ± 2` have square parts above `(ln p)^a`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PrStatus pr_direct_scan(uint64_t limit, double a, struct PrPrimeList **out);

/**
 * # Safety
 * `list` must come from [`pr_direct_scan`]; `len` must be valid for writes.
 */
enum PrStatus pr_prime_list_len(const struct PrPrimeList *list, uintptr_t *len);

/**
 * # Safety
 * `list` must come from [`pr_direct_scan`]; `out` must be valid for writes.
 */
enum PrStatus pr_prime_list_get(const struct PrPrimeList *list,
                                uintptr_t index,
                                struct PrFlankedPrime *out);

/**
 * # Safety
 * `list` must be null or come from [`pr_direct_scan`], and not be used again.
 */
void pr_prime_list_free(struct PrPrimeList *list);

/**
 * Class number of the imaginary field with fundamental discriminant `disc < 0`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PrStatus pr_class_number_imaginary(int64_t disc, uint64_t *out);

/**
 * p-rationality of `Q(sqrt(d))`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PrStatus pr_p_rationality(int64_t d, uint64_t p, enum PrVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRATIONAL_H */
