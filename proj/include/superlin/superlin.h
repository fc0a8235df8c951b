/* C API for the superlin shared library.
 *
 * All functions return a superlin_status; outputs are written through
 * pointers only on SUPERLIN_OK unless documented otherwise. Strings returned
 * through char** are heap-allocated and must be released with
 * superlin_string_free. Handles are released with superlin_system_free.
 * On failure, superlin_last_error() returns a thread-local message.
 */
#ifndef SUPERLIN_SUPERLIN_H
#define SUPERLIN_SUPERLIN_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(SUPERLIN_BUILD)
#define SUPERLIN_API __declspec(dllexport)
#else
#define SUPERLIN_API __declspec(dllimport)
#endif
#else
#define SUPERLIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct superlin_system superlin_system;

typedef enum superlin_status {
  SUPERLIN_OK = 0,
  SUPERLIN_ERR_VALIDATION = 1,
  SUPERLIN_ERR_PARSE = 2,
  SUPERLIN_ERR_DIMENSION = 3,
  SUPERLIN_ERR_SINGULAR = 4,
  SUPERLIN_ERR_INFEASIBLE = 5,
  SUPERLIN_ERR_PRECONDITION = 6,
  SUPERLIN_ERR_IO = 7,
  SUPERLIN_ERR_INTERNAL = 8
} superlin_status;

/* Thread-local message for the most recent failing call; never NULL. */
SUPERLIN_API const char* superlin_last_error(void);

SUPERLIN_API void superlin_string_free(char* s);
SUPERLIN_API void superlin_system_free(superlin_system* sys);

/* JSON text -> system handle. */
SUPERLIN_API superlin_status superlin_system_parse(const char* json,
                                                   superlin_system** out_sys);

/* Canonical JSON emission (byte-stable round trip on canonical inputs). */
SUPERLIN_API superlin_status superlin_system_emit(const superlin_system* sys,
                                                  char** out_json);

SUPERLIN_API superlin_status superlin_system_dims(const superlin_system* sys,
                                                  int32_t* out_n, int32_t* out_m);

/* Checks the lifted-dynamics identities. Returns SUPERLIN_OK with *out_pass
 * set either way; the JSON report lists each check with its residual.
 * out_report_json may be NULL when only the flag is needed. */
SUPERLIN_API superlin_status superlin_validate(const superlin_system* sys,
                                               double tol, double poly_tol,
                                               int32_t* out_pass,
                                               char** out_report_json);

/* Visible/hidden observable split as JSON. */
SUPERLIN_API superlin_status superlin_classify(const superlin_system* sys,
                                               double tol, char** out_json);

/* Minimum visible-observable count over equivalent embeddings. Fails with
 * SUPERLIN_ERR_VALIDATION when the input system is not valid. */
SUPERLIN_API superlin_status superlin_min_visible(const superlin_system* sys,
                                                  double tol, double poly_tol,
                                                  int32_t* out_count);

/* Reduced visible form plus a JSON step report. Fails with
 * SUPERLIN_ERR_VALIDATION when the input system is not valid. */
SUPERLIN_API superlin_status superlin_reduce(const superlin_system* sys, double tol,
                                             double poly_tol,
                                             superlin_system** out_sys,
                                             char** out_report_json);

/* Equivalent embedding attaining the minimum visible count. Fails with
 * SUPERLIN_ERR_VALIDATION when the input system is not valid. */
SUPERLIN_API superlin_status superlin_realize_min_visible(const superlin_system* sys,
                                                          double tol, double poly_tol,
                                                          superlin_system** out_sys);

/* Drops observable coordinates invisible to the state. */
SUPERLIN_API superlin_status superlin_prune_unobservable(const superlin_system* sys,
                                                         double tol,
                                                         superlin_system** out_sys);

/* p' = P p with invertible m x m P given as {"P": [[...], ...]}. */
SUPERLIN_API superlin_status superlin_conjugate(const superlin_system* sys,
                                                const char* p_json, double tol,
                                                superlin_system** out_sys);

/* p' = p + R x + S with {"R": [[...], ...], "S": [...]}. */
SUPERLIN_API superlin_status superlin_shift(const superlin_system* sys,
                                            const char* rs_json,
                                            superlin_system** out_sys);

/* Co-simulates the projected and lifted dynamics from x0 ("v1,v2,...") under
 * the control spec ("const:<v>" or "pwc:t0,v0;t1,v1;..."), horizon T, step h.
 * out_traj_csv may be NULL when the trajectory is not needed. */
SUPERLIN_API superlin_status superlin_simulate(const superlin_system* sys,
                                               const char* x0_csv,
                                               const char* u_spec, double T,
                                               double h, double tol,
                                               double poly_tol, char** out_traj_csv,
                                               char** out_summary_json);

/* Seeded random valid embedding with G of exact rank target_rank; scramble
 * applies a random change of observable coordinates plus an affine shift.
 * out_true_min_visible may be NULL. */
SUPERLIN_API superlin_status superlin_generate(int32_t n_x, int32_t n_y, int32_t m,
                                               int32_t deg_max, int32_t target_rank,
                                               int32_t scramble, uint64_t seed,
                                               superlin_system** out_sys,
                                               int32_t* out_true_min_visible);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SUPERLIN_SUPERLIN_H */
