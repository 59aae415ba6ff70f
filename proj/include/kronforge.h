#ifndef KRONFORGE_H
#define KRONFORGE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* C boundary of the rectangular Kronecker engine. All computation sits
 * behind an opaque engine handle; results cross as JSON in heap strings
 * the caller releases with kf_string_free. Multiplicities are decimal
 * strings inside the JSON (they outgrow 64 bits), structural counts are
 * plain numbers.
 *
 * Partition arguments are comma-separated parts ("6,6,3,2,1"), optionally
 * bracketed, "" for the empty partition. The rectangle shorthand "n x d"
 * (n rows of width d) is accepted anywhere a partition is. */

typedef enum kf_status {
    KF_OK = 0,
    KF_ERR_DOMAIN = 1,   /* bad input or violated precondition */
    KF_ERR_BUDGET = 2,   /* refused: larger than the configured oracle bound */
    KF_ERR_VERIFY = 3,   /* certificate or witness failed verification */
    KF_ERR_INTERNAL = 4, /* unexpected failure; see kf_engine_last_error */
} kf_status;

typedef struct kf_engine kf_engine;

kf_engine* kf_engine_new(void);
void kf_engine_free(kf_engine* eng);

/* message for the most recent failing call on this engine; owned by the
 * engine, overwritten by the next failure */
const char* kf_engine_last_error(const kf_engine* eng);

/* caps for the two expensive evaluators (class-sum size N, plethysm
 * degree d*n); pass a nonpositive value to keep the current cap */
kf_status kf_engine_set_budget(kf_engine* eng, int64_t kron_max_n, int64_t pleth_max_dn);
kf_status kf_engine_set_force(kf_engine* eng, int force);
kf_status kf_engine_set_threads(kf_engine* eng, int threads);

/* directory for character-table snapshots; loaded lazily per shape
 * family, written back by kf_engine_save_caches */
kf_status kf_engine_set_cache_dir(kf_engine* eng, const char* dir);
kf_status kf_engine_save_caches(kf_engine* eng);

void kf_string_free(char* s);

/* g(lam, mu, nu) -> {"value", "method", "classes_visited"} */
kf_status kf_kronecker(kf_engine* eng, const char* lam, const char* mu, const char* nu,
                       char** out_json);

/* c^lam_{mu nu} -> {"value", "method"} */
kf_status kf_lr(kf_engine* eng, const char* lam, const char* mu, const char* nu,
                char** out_json);

/* a_lam(d[n]) -> {"value", "method"} */
kf_status kf_plethysm(kf_engine* eng, const char* lam, int64_t d, int64_t n, char** out_json);

/* stable value a_rho(d), or the full limit a_rho when d < 0
 * -> {"value", "rho", "d"} ("d" absent in the limit form) */
kf_status kf_limit(kf_engine* eng, const char* rho, int64_t d, char** out_json);

/* hook multiplicities over d x n: single value g((nd-k,1^k), dxn, dxn)
 * -> {"value"}; the table form returns the stable column
 * -> {"d", "coefficients": [..], "vanishing": [..]} */
kf_status kf_hook_value(kf_engine* eng, int64_t d, int64_t n, int64_t k, char** out_json);
kf_status kf_hook_table(kf_engine* eng, int64_t d, char** out_json);

/* padded multiplicities g(rho(nd), nxd, nxd) over a grid
 * -> {"rho", "entries": [{"n","d","value"}..]} ordered by (n, d) */
kf_status kf_stable_table(kf_engine* eng, const char* rho, int64_t n_max, int64_t d_max,
                          char** out_json);

/* column decomposition of nu (not in the vanishing table)
 * -> {"nu","x":[[k,count]..],"y":[[k,count]..],"rho","xi","case"} */
kf_status kf_decompose(kf_engine* eng, const char* nu, char** out_json);

/* positivity certificate for (nu(ab), axb, axb); out is cert-v1 JSON */
kf_status kf_certify(kf_engine* eng, const char* nu, int64_t a, int64_t b, char** out_json);

/* re-verify a cert-v1 document -> {"status":"verified","nodes","root"} */
kf_status kf_verify_cert(kf_engine* eng, const char* cert_json, char** out_json);

/* obstruction case analysis -> {"outcome","trace",..,"certificate"}
 * (certificate is a cert-v1 object or null) */
kf_status kf_verdict(kf_engine* eng, const char* lam, int64_t n, int64_t d, int64_t m,
                     char** out_json);

/* signed semigroup combination for lam over the d-row rectangle family,
 * each term verified -> {"lam","d","terms":[{"coeff","lam"}..],"resum"} */
kf_status kf_saturation(kf_engine* eng, const char* lam, int64_t d, char** out_json);

/* curated internal checks; extended != 0 additionally re-verifies the
 * registered side-7 base facts by the character oracle (slow). Progress
 * lines stream through the callback when it is non-null. Returns
 * KF_ERR_VERIFY on the first failed check. */
typedef void (*kf_progress_fn)(const char* line, void* user);
kf_status kf_selftest(kf_engine* eng, int extended, kf_progress_fn progress, void* user);

#ifdef __cplusplus
}
#endif

#endif /* KRONFORGE_H */
