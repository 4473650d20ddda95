#ifndef OREKIT_H
#define OREKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 2 to 4 match the command-line exit codes.
 */
typedef enum OrekitStatus {
  OREKIT_STATUS_OK = 0,
  /**
   * Null pointer or invalid UTF-8 argument.
   */
  OREKIT_STATUS_INVALID_ARGUMENT = 1,
  OREKIT_STATUS_PARSE_ERROR = 2,
  OREKIT_STATUS_DOMAIN_ERROR = 3,
  OREKIT_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  OREKIT_STATUS_INTERNAL = 5,
} OrekitStatus;

/**
 * A skew polynomial over the top field of a tower.
 */
typedef struct OrekitPoly OrekitPoly;

/**
 * A field tower `F_p ⊂ F_q ⊂ F_{q^r}`.
 */
typedef struct OrekitTower OrekitTower;

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *orekit_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void orekit_string_free(char *s);

/**
 * Builds a tower. `f` and `h` are moduli in `Y` and may be null to use the
 * defaults.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum OrekitStatus orekit_tower_new(uint64_t p,
                                   uintptr_t a,
                                   uintptr_t r,
                                   const char *f,
                                   const char *h,
                                   struct OrekitTower **out);

/**
 * # Safety
 * `t` must be null or a live handle from [`orekit_tower_new`].
 */
void orekit_tower_free(struct OrekitTower *t);

/**
 * Tower as JSON `{p, a, r, f, h}`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum OrekitStatus orekit_tower_to_json(const struct OrekitTower *t, char **out);

/**
 * Parses a polynomial such as `X^3 + w*X^2 - w^2` over the tower.
 *
 * # Safety
 * `t` must be a live handle, `text` NUL-terminated, `out` writable.
 */
enum OrekitStatus orekit_poly_parse(const struct OrekitTower *t,
                                    const char *text,
                                    struct OrekitPoly **out);

/**
 * # Safety
 * `p` must be null or a live handle.
 */
void orekit_poly_free(struct OrekitPoly *p);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OrekitStatus orekit_poly_to_string(const struct OrekitPoly *p, char **out);

/**
 * Degree, or -1 for the zero polynomial and for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
int64_t orekit_poly_degree(const struct OrekitPoly *p);

/**
 * Product `a·b`.
 *
 * # Safety
 * Both handles must be live and share a tower; `out` must be writable.
 */
enum OrekitStatus orekit_poly_mul(const struct OrekitPoly *a,
                                  const struct OrekitPoly *b,
                                  struct OrekitPoly **out);

/**
 * `Ψ(P)` printed as a polynomial in `Y` over `F_q`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OrekitStatus orekit_psi(const struct OrekitPoly *p, char **out);

/**
 * Optimal central bound of `P`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OrekitStatus orekit_optimal_bound(const struct OrekitPoly *p, struct OrekitPoly **out);

/**
 * Number of factorizations into monic irreducibles, in decimal.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OrekitStatus orekit_count_factorizations(const struct OrekitPoly *p, char **out);

/**
 * Degree of the splitting field of `L_P` over `F_{q^r}`, in decimal.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OrekitStatus orekit_splitting_degree(const struct OrekitPoly *p, char **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OrekitStatus orekit_is_irreducible(const struct OrekitPoly *p, bool *out);

/**
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum OrekitStatus orekit_is_similar(const struct OrekitPoly *a,
                                    const struct OrekitPoly *b,
                                    bool *out);

/**
 * Runs the command-line front end on `argv` (without the program name).
 * Returns the exit code; `out` and `err`, when not null, receive the
 * captured output.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `out` and `err` must be
 * null or writable.
 */
int orekit_cli_run(int argc, const char *const *argv, char **out, char **err);

#endif  /* OREKIT_H */
