#ifndef BCWITT_H
#define BCWITT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Status codes; the domain variants mirror the library's error kinds.
typedef enum BcwittStatus {
  BCWITT_STATUS_OK = 0,
  BCWITT_STATUS_NOT_QUASI_UNIPOTENT = 1,
  BCWITT_STATUS_NOT_SPLIT = 2,
  BCWITT_STATUS_NOT_DIVISIBLE = 3,
  BCWITT_STATUS_DEGENERATE_ITERATE = 4,
  BCWITT_STATUS_NOT_EFFECTIVELY_TORIFIED = 5,
  BCWITT_STATUS_HALF_TWIST_PRESENT = 6,
  BCWITT_STATUS_TRUNCATION_TOO_SMALL = 7,
  BCWITT_STATUS_INVALID_INPUT = 8,
  BCWITT_STATUS_NULL_POINTER = 9,
  BCWITT_STATUS_INVALID_UTF8 = 10,
  BCWITT_STATUS_PANIC = 11,
} BcwittStatus;

// A permutation of a finite set with finite order dividing its level.
typedef struct BcwittAction BcwittAction;

// A torified class in the T-basis.
typedef struct BcwittClass BcwittClass;

// An element of Z[Q/Z].
typedef struct BcwittQz BcwittQz;

// An integer matrix acting on a torus.
typedef struct BcwittToral BcwittToral;

// A truncated big Witt vector.
typedef struct BcwittWitt BcwittWitt;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the next call.
const char *bcwitt_last_error(void);

void bcwitt_string_free(char *s);

// Runs a CLI command. `argv` excludes the program name. Writes the exit code to `exit_code`
// and the stdout text (or the usage message) to `out`.
enum BcwittStatus bcwitt_command(const char *const *argv, size_t argc, int *exit_code, char **out);

enum BcwittStatus bcwitt_qz_from_json(const char *text, struct BcwittQz **out);

enum BcwittStatus bcwitt_qz_to_json(const struct BcwittQz *h, char **out);

enum BcwittStatus bcwitt_qz_sigma(const struct BcwittQz *h, uint64_t n, struct BcwittQz **out);

enum BcwittStatus bcwitt_qz_rho(const struct BcwittQz *h, uint64_t n, struct BcwittQz **out);

enum BcwittStatus bcwitt_qz_mul(const struct BcwittQz *a,
                                const struct BcwittQz *b,
                                struct BcwittQz **out);

bool bcwitt_qz_equal(const struct BcwittQz *a, const struct BcwittQz *b);

void bcwitt_qz_free(struct BcwittQz *h);

// Accepts either wire form; the rational form is expanded to `trunc`.
enum BcwittStatus bcwitt_witt_from_json(const char *text, size_t trunc, struct BcwittWitt **out);

enum BcwittStatus bcwitt_witt_to_json(const struct BcwittWitt *h, char **out);

enum BcwittStatus bcwitt_witt_ghost_json(const struct BcwittWitt *h, char **out);

size_t bcwitt_witt_truncation(const struct BcwittWitt *h);

enum BcwittStatus bcwitt_witt_add(const struct BcwittWitt *a,
                                  const struct BcwittWitt *b,
                                  struct BcwittWitt **out);

enum BcwittStatus bcwitt_witt_mul(const struct BcwittWitt *a,
                                  const struct BcwittWitt *b,
                                  struct BcwittWitt **out);

enum BcwittStatus bcwitt_witt_frobenius(const struct BcwittWitt *h,
                                        size_t n,
                                        struct BcwittWitt **out);

enum BcwittStatus bcwitt_witt_verschiebung(const struct BcwittWitt *h,
                                           size_t n,
                                           struct BcwittWitt **out);

void bcwitt_witt_free(struct BcwittWitt *h);

// Accepts `{"T":[…]}` or `{"L":{…}}`; L-basis input must be effectively torified.
enum BcwittStatus bcwitt_class_from_json(const char *text, struct BcwittClass **out);

// Writes `{"T":[…]}`.
enum BcwittStatus bcwitt_class_to_json(const struct BcwittClass *h, char **out);

// Writes `{"L":{…}}`.
enum BcwittStatus bcwitt_class_to_l_json(const struct BcwittClass *h, char **out);

// Point count over F₁ᵐ as a decimal string.
enum BcwittStatus bcwitt_class_points(const struct BcwittClass *h, uint64_t m, char **out);

// Euler characteristic as a decimal string.
enum BcwittStatus bcwitt_class_euler(const struct BcwittClass *h, char **out);

enum BcwittStatus bcwitt_class_add(const struct BcwittClass *a,
                                   const struct BcwittClass *b,
                                   struct BcwittClass **out);

enum BcwittStatus bcwitt_class_mul(const struct BcwittClass *a,
                                   const struct BcwittClass *b,
                                   struct BcwittClass **out);

// F₁-zeta function truncated at `trunc`.
enum BcwittStatus bcwitt_class_f1_zeta(const struct BcwittClass *h,
                                       size_t trunc,
                                       struct BcwittWitt **out);

void bcwitt_class_free(struct BcwittClass *h);

// Accepts `{"rows":[[…],…]}` with integer entries.
enum BcwittStatus bcwitt_toral_from_json(const char *text, struct BcwittToral **out);

// Writes `{"exponents":{…}}` for a quasi-unipotent map.
enum BcwittStatus bcwitt_toral_lefschetz_closed_json(const struct BcwittToral *h, char **out);

enum BcwittStatus bcwitt_toral_lefschetz_series(const struct BcwittToral *h,
                                                size_t trunc,
                                                struct BcwittWitt **out);

enum BcwittStatus bcwitt_toral_artin_mazur_series(const struct BcwittToral *h,
                                                  size_t trunc,
                                                  struct BcwittWitt **out);

enum BcwittStatus bcwitt_toral_spectral_euler(const struct BcwittToral *h, struct BcwittQz **out);

void bcwitt_toral_free(struct BcwittToral *h);

// Accepts `{"level":N,"perm":[…]}`.
enum BcwittStatus bcwitt_action_from_json(const char *text, struct BcwittAction **out);

enum BcwittStatus bcwitt_action_to_json(const struct BcwittAction *h, char **out);

enum BcwittStatus bcwitt_action_sigma(const struct BcwittAction *h,
                                      uint64_t n,
                                      struct BcwittAction **out);

enum BcwittStatus bcwitt_action_verschiebung(const struct BcwittAction *h,
                                             uint64_t n,
                                             struct BcwittAction **out);

// Number of points fixed by `g^k`.
enum BcwittStatus bcwitt_action_periodic_count(const struct BcwittAction *h,
                                               uint64_t k,
                                               size_t *out);

enum BcwittStatus bcwitt_action_euler(const struct BcwittAction *h, struct BcwittQz **out);

void bcwitt_action_free(struct BcwittAction *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BCWITT_H */
