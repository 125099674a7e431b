#ifndef QENT_H
#define QENT_H

/* C interface to the catalytic-entropy toolkit. All functions are
 * thread-compatible: handles are immutable after creation and the error
 * string is thread-local. Strings returned through char** are owned by the
 * caller and must be released with qent_string_free. */

#include <stdint.h>

#if defined(_WIN32)
#if defined(QENT_BUILD_SHARED)
#define QENT_API __declspec(dllexport)
#else
#define QENT_API __declspec(dllimport)
#endif
#else
#define QENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* QENT_OK: operation succeeded and every embedded check passed.
 * QENT_CHECK_FAILED: operation produced its report, but a verified
 * inequality or residual check inside it failed; the report is still
 * returned. Everything else is an error and no report is produced. */
typedef enum qent_status {
  QENT_OK = 0,
  QENT_CHECK_FAILED = 1,
  QENT_BAD_INPUT = 2,
  QENT_NOT_HERMITIAN = 3,
  QENT_NOT_PSD = 4,
  QENT_TRACE_NOT_ONE = 5,
  QENT_NOT_UNITARY = 6,
  QENT_DIMENSION_MISMATCH = 7,
  QENT_NOT_MAJORIZED = 8,
  QENT_INFEASIBLE = 9,
  QENT_NO_BRACKET = 10,
  QENT_DEGENERATE_OBSERVATION = 11,
  QENT_TOO_LARGE = 12,
  QENT_TAIL_NOT_SUMMABLE = 13,
  QENT_ORACLE_INVALID = 14,
  QENT_VERIFICATION_FAILED = 15,
  QENT_UNPHYSICAL = 16,
  QENT_INTERNAL = 17
} qent_status;

typedef struct qent_tolerances {
  double herm;    /* max |A - A^dagger| entry */
  double psd;     /* most negative admissible eigenvalue */
  double unitary; /* max |B^dagger B - I| entry */
  double norm;    /* |trace - 1| or |sum - 1| */
} qent_tolerances;

/* Opaque handles. */
typedef struct qent_state qent_state;
typedef struct qent_basis qent_basis;

QENT_API const char* qent_version(void);
QENT_API const char* qent_status_name(qent_status s);
QENT_API qent_tolerances qent_default_tolerances(void);

/* Message for the most recent failing call on this thread; empty after a
 * successful call. Valid until the next qent_* call on the same thread. */
QENT_API const char* qent_last_error(void);

QENT_API void qent_string_free(char* s);

/* -------- handle construction -------- */

/* json_text: {"dim": d, "re": [[row-major]], "im": [[row-major]]}, "im"
 * optional. tol may be NULL for defaults. */
QENT_API qent_status qent_state_parse(const char* json_text,
                                      const qent_tolerances* tol,
                                      qent_state** out);
QENT_API void qent_state_free(qent_state* s);
QENT_API int qent_state_dim(const qent_state* s);
QENT_API qent_status qent_state_to_json(const qent_state* s, char** out_json);

/* Basis matrices use the same JSON layout; columns are the basis vectors. */
QENT_API qent_status qent_basis_parse(const char* json_text,
                                      const qent_tolerances* tol,
                                      qent_basis** out);
QENT_API void qent_basis_free(qent_basis* b);
QENT_API int qent_basis_dim(const qent_basis* b);

/* -------- direct numeric calls -------- */

/* measure: "vn" | "renyi:<alpha>" | "tsallis:<q>". base: "2" | "e". */
QENT_API qent_status qent_entropy(const qent_state* s, const char* measure,
                                  const char* base, double* out_value);
QENT_API qent_status qent_dephase(const qent_state* s, const qent_basis* b,
                                  qent_state** out);
/* Writes dim(s) Born weights into out_probs; cap must be >= dim(s). */
QENT_API qent_status qent_measurement_distribution(const qent_state* s,
                                                   const qent_basis* b,
                                                   double* out_probs, int cap);

/* -------- JSON request/response operations --------
 *
 * Each call takes one UTF-8 JSON request and returns one UTF-8 text document
 * (JSON, or CSV where the request selects it). Responses are byte-stable:
 * same request bytes, same response bytes. Request schemas are documented in
 * the project README; the CLI is a thin shell over these entry points. */

/* {"state": M, "measure": "vn", "base": "2"}                              */
QENT_API qent_status qent_entropy_op(const char* request, char** out_text);

/* {"state": M, "basis": B} -> dephased state as matrix JSON               */
QENT_API qent_status qent_dephase_op(const char* request, char** out_text);

/* {"state": M, "measure": ..., "samples": N, "seed": S, "base": ...}
 * -> principle report; QENT_CHECK_FAILED when violations were recorded.   */
QENT_API qent_status qent_verify_principles(const char* request,
                                            char** out_text);

/* {"q": [...], "alpha": [[...]], "measure": ..., "oracle": bool}          */
QENT_API qent_status qent_maxent(const char* request, char** out_text);

/* {"source": M, "target": M, "mode": "noisy|catalytic|approx|probabilistic",
 *  "epsilon": e, "catalyst_dim": d, "budget": k, "seed": S,
 *  "emit_unitary": bool} -> transition plan                               */
QENT_API qent_status qent_transition(const char* request, char** out_text);

/* {"state": M, "basis": B, "lengths": [...], "rates": [...],
 *  "format": "json"|"csv"}                                                */
QENT_API qent_status qent_compress(const char* request, char** out_text);

/* {"links": [[...], ...]} or a bare array of Schmidt-square arrays        */
QENT_API qent_status qent_chain_network(const char* request, char** out_text);

/* {"kind": "thermal", "nbar": x, "cutoffs": [...], "measure": ..., "format": ...}
 * {"kind": "gaussian", "cov": [[...]], "lambda": l?}
 * {"kind": "spin", "cluster": m, "outer": n, "couplings": [[...]],
 *  "times": [...], "format": ...}                                         */
QENT_API qent_status qent_models(const char* request, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* QENT_H */
