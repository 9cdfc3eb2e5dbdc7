#ifndef SLECOSET_H
#define SLECOSET_H

/* C interface to the slecoset library.
 *
 * Every call returns a slecoset_status. Results live in opaque handles that
 * the caller releases with the matching *_free function. On failure the
 * message of the most recent error on the calling thread is available from
 * slecoset_last_error().
 *
 * Exact parameters (k, kappa, tau, j, eps) are passed as rational strings
 * such as "1", "-2/3" or "31/10" inside a JSON object.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLECOSET_API __declspec(dllexport)
#else
#define SLECOSET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slecoset_status {
  SLECOSET_OK = 0,
  SLECOSET_VIOLATED = 1,       /* check ran; identity fails (witness in report) */
  SLECOSET_INVALID_ARGUMENT = 2,
  SLECOSET_TRUNCATION = 3,
  SLECOSET_NUMERICAL = 4,
  SLECOSET_IO = 5,
  SLECOSET_INTERNAL = 6
} slecoset_status;

typedef struct slecoset_result slecoset_result;
typedef struct slecoset_generator slecoset_generator;

SLECOSET_API int slecoset_schema_version(void);
SLECOSET_API const char* slecoset_last_error(void);
SLECOSET_API const char* slecoset_status_name(slecoset_status status);

/* Exact checks. `check` is one of singular, sugawara, coset, branching,
 * vacuum-drift, thm2, corollary. Missing kappa/tau default to
 * 4(k+2)/(k+3) and 2/(k+3). Returns SLECOSET_OK or SLECOSET_VIOLATED with a
 * report in *out. */
SLECOSET_API slecoset_status slecoset_verify(const char* check, const char* params_json, slecoset_result** out);

/* Minimal-model (c, h) grid for coprime 2 <= p < q, p <= pmax, q <= qmax. */
SLECOSET_API slecoset_status slecoset_minimal_table(int pmax, int qmax, slecoset_result** out);

/* Generator of the operator-valued process on a truncated module.
 * params: {"target": "tensor"|"virasoro"|"affine", "k", "kappa", "tau", "grade"}. */
SLECOSET_API slecoset_status slecoset_generator_create(const char* params_json, slecoset_generator** out);
SLECOSET_API size_t slecoset_generator_dim(const slecoset_generator* g);
SLECOSET_API void slecoset_generator_free(slecoset_generator* g);

/* Monte-Carlo run. config: {"T", "dt", "samples", "seed", "checkpoints",
 * "grade_cap", "threads", "z_threshold"}; absent keys take defaults. The
 * result carries the summary JSON and the per-checkpoint CSV. */
SLECOSET_API slecoset_status slecoset_simulate(const slecoset_generator* g, const char* config_json,
                                               slecoset_result** out);

/* One SLE series path. params: {"kappa", "order", "T", "dt", "seed", "stride"}. */
SLECOSET_API slecoset_status slecoset_sle_trajectory(const char* params_json, slecoset_result** out);

/* Internal process consistency run. params: {"kappa", "tau", "T", "dt",
 * "order", "seed", "scheme": "milstein"|"euler", "path_halvings"}. */
SLECOSET_API slecoset_status slecoset_internal_process(const char* params_json, slecoset_result** out);

SLECOSET_API const char* slecoset_result_json(const slecoset_result* r);
/* CSV body, or "" when the result has none. */
SLECOSET_API const char* slecoset_result_csv(const slecoset_result* r);
SLECOSET_API int slecoset_result_verified(const slecoset_result* r);
SLECOSET_API void slecoset_result_free(slecoset_result* r);

#ifdef __cplusplus
}
#endif

#endif
