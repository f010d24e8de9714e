/* C interface to the gwgauss library.
 *
 * Every fallible call returns a status: 0 on success, otherwise one of the
 * GWG_E* codes below. On failure gwg_last_error() / gwg_last_error_json()
 * describe the most recent error on the calling thread. Strings returned
 * through char** out-parameters are owned by the caller and must be released
 * with gwg_string_free(). Rates are in nats unless a units name is passed.
 */
#ifndef GWGAUSS_H
#define GWGAUSS_H

#include <stdint.h>

#if defined(_WIN32)
#define GWG_API __declspec(dllexport)
#else
#define GWG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  GWG_OK = 0,
  GWG_EBAD_FLAGS = 2,
  GWG_EFILE_NOT_FOUND = 3,
  GWG_EPARSE = 4,
  GWG_EASYMMETRIC = 10,
  GWG_ENOT_POSITIVE_DEFINITE = 11,
  GWG_ESINGULAR_VALUE_RANGE = 12,
  GWG_EINCONSISTENT_INDICES = 13,
  GWG_EDIMENSION_MISMATCH = 14,
  GWG_EQW_OUT_OF_FAMILY = 15,
  GWG_ESINGULAR_FACTOR = 16,
  GWG_EALLOCATION_RANGE = 17,
  GWG_ENONPOSITIVE_DISTORTION = 18,
  GWG_EQW_NOT_DIAGONAL = 19,
  GWG_EINFEASIBLE_REGION = 20,
  GWG_EOUTSIDE_DW = 21,
  GWG_ETOO_FEW_SAMPLES = 22,
  GWG_EMISSING_RECONSTRUCTION = 23,
  GWG_EINTERNAL = 99
};

typedef struct gwg_pair gwg_pair;
typedef struct gwg_cvf gwg_cvf;
typedef struct gwg_realization gwg_realization;

GWG_API const char* gwg_version(void);
GWG_API const char* gwg_status_name(int status);
GWG_API const char* gwg_last_error(void);
/* {"error": name, "code": status, "message": text}, valid until the next call
 * on this thread. */
GWG_API const char* gwg_last_error_json(void);
GWG_API void gwg_string_free(char* s);

/* Joint covariance, row-major, (p1 + p2) x (p1 + p2). */
GWG_API int gwg_pair_create(const double* q, int p1, int p2, gwg_pair** out);
/* .csv or JSON file. */
GWG_API int gwg_pair_load(const char* path, gwg_pair** out);
/* Q = L L^T + 1e-9 I from a seeded standard-normal L. */
GWG_API int gwg_pair_random(int p1, int p2, uint64_t seed, gwg_pair** out);
GWG_API int gwg_pair_dims(const gwg_pair* pair, int* p1, int* p2);
GWG_API int gwg_pair_to_json(const gwg_pair* pair, char** out);
GWG_API int gwg_pair_to_csv(const gwg_pair* pair, char** out);
GWG_API void gwg_pair_free(gwg_pair* pair);

/* Canonical variable form with thresholds h1 (identical) and h2 (zero). */
GWG_API int gwg_cvf_compute(const gwg_pair* pair, double h1, double h2, gwg_cvf** out);
/* Accepts a cvf document or a pair file (decomposed with h1, h2). */
GWG_API int gwg_cvf_load(const char* path, double h1, double h2, gwg_cvf** out);
/* p11, p12, p13, p21, p22, p23 */
GWG_API int gwg_cvf_indices(const gwg_cvf* cvf, int out[6]);
/* Writes min(count, capacity) coefficients; *count receives p12. */
GWG_API int gwg_cvf_correlations(const gwg_cvf* cvf, double* out, int capacity, int* count);
/* Full document when computed here, idx and d only when loaded. */
GWG_API int gwg_cvf_to_json(const gwg_cvf* cvf, char** out);
GWG_API void gwg_cvf_free(gwg_cvf* cvf);

/* units: "nats", "bits" or "paper-example-bits"; NULL means nats. */
GWG_API int gwg_common_info_value(const gwg_cvf* cvf, double* nats);
GWG_API int gwg_common_info_json(const gwg_cvf* cvf, const char* units, char** out);
/* Succeeds outside D_W too; the document then carries status "outside-DW". */
GWG_API int gwg_lossy_common_info_json(const gwg_cvf* cvf, double delta1, double delta2,
                                       const char* units, char** out);

/* kind: "marginal", "conditional", "joint" or "gray-bound". qw is a p12 x p12
 * row-major state covariance for "conditional", NULL for the identity. */
GWG_API int gwg_rdf_json(const gwg_cvf* cvf, const char* kind, double delta1, double delta2,
                         int branch, const double* qw, const char* units, char** out);
GWG_API int gwg_joint_rdf(const double* d, int n, double delta1, double delta2, double* rate);

/* Rows alpha1,alpha2,T,R0,R1,R2,q_1..q_n over an N x N alpha grid. */
GWG_API int gwg_region_csv(const gwg_cvf* cvf, double delta1, double delta2, int alpha_grid,
                           char** out);

/* qw NULL: optimal state. with_channel != 0 adds the test channel at
 * (delta1, delta2). */
GWG_API int gwg_realization_create(const gwg_cvf* cvf, const double* qw, int with_channel,
                                   double delta1, double delta2, gwg_realization** out);
GWG_API int gwg_realization_load(const char* path, gwg_realization** out);
GWG_API int gwg_realization_to_json(const gwg_realization* r, char** out);
/* Monte-Carlo validation report. */
GWG_API int gwg_simulate_json(const gwg_realization* r, int64_t n, uint64_t seed, char** out);
GWG_API void gwg_realization_free(gwg_realization* r);

#ifdef __cplusplus
}
#endif

#endif /* GWGAUSS_H */
