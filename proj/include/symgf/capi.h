/* C interface to the symgf shared library.
 *
 * All functions return a symgf_status; SYMGF_OK means success.  On failure a
 * thread-local message is available from symgf_last_error().  Objects are
 * opaque handles released with the matching *_free function; strings returned
 * through char** are heap-allocated and released with symgf_string_free.
 */
#ifndef SYMGF_CAPI_H
#define SYMGF_CAPI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SYMGF_API __declspec(dllexport)
#else
#define SYMGF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum symgf_status {
  SYMGF_OK = 0,
  SYMGF_ERR_ARGUMENT = 1,
  SYMGF_ERR_DIMENSION = 2,
  SYMGF_ERR_SINGULAR = 3,
  SYMGF_ERR_DEGENERATE = 4,
  SYMGF_ERR_PRECONDITION = 5,
  SYMGF_ERR_CAUSTIC = 6,
  SYMGF_ERR_IO = 7,
  SYMGF_ERR_CONFIG = 8,
  SYMGF_ERR_INTERNAL = 9
} symgf_status;

typedef struct symgf_matrix symgf_matrix;     /* dense real matrix */
typedef struct symgf_genfun symgf_genfun;     /* generating function */
typedef struct symgf_gaussian symgf_gaussian; /* Gaussian state */

SYMGF_API const char* symgf_version(void);
SYMGF_API const char* symgf_last_error(void);

SYMGF_API void symgf_string_free(char* s);
SYMGF_API void symgf_matrix_free(symgf_matrix* m);
SYMGF_API void symgf_genfun_free(symgf_genfun* g);
SYMGF_API void symgf_gaussian_free(symgf_gaussian* g);

/* ---- matrices (JSON format: {"n": int, "rows": [[...]]}) ---- */

SYMGF_API symgf_status symgf_matrix_create(int rows, int cols, const double* row_major,
                                           symgf_matrix** out);
SYMGF_API symgf_status symgf_matrix_shape(const symgf_matrix* m, int* rows, int* cols);
SYMGF_API symgf_status symgf_matrix_get(const symgf_matrix* m, int i, int j, double* out);
SYMGF_API symgf_status symgf_matrix_copy_data(const symgf_matrix* m, double* buffer,
                                              size_t buffer_len);
SYMGF_API symgf_status symgf_matrix_parse_json(const char* text, symgf_matrix** out);
SYMGF_API symgf_status symgf_matrix_to_json(const symgf_matrix* m, char** out);
SYMGF_API symgf_status symgf_matrix_load_json(const char* path, symgf_matrix** out);
SYMGF_API symgf_status symgf_matrix_save_json(const symgf_matrix* m, const char* path);

/* ---- core operations ---- */

SYMGF_API symgf_status symgf_standard_j(int n, symgf_matrix** out);
/* kind: "generic", "singular_b" (param = rank of B), "witness" (param = k). */
SYMGF_API symgf_status symgf_sample_symplectic(int n, uint64_t seed, const char* kind, int param,
                                               symgf_matrix** out);
SYMGF_API symgf_status symgf_witness_hk(int n, int k, symgf_matrix** out);
/* report_json (optional) receives the residuals of the equivalent
 * characterizations; is_symplectic receives 0/1. */
SYMGF_API symgf_status symgf_check(const symgf_matrix* m, double tol, char** report_json,
                                   int* is_symplectic);
SYMGF_API symgf_status symgf_sp_inverse(const symgf_matrix* h, symgf_matrix** out);

/* ---- the skew-image map and the quotient ---- */

SYMGF_API symgf_status symgf_xmap(const symgf_matrix* h, symgf_matrix** out);
SYMGF_API symgf_status symgf_xmap_extended(const symgf_matrix* m, symgf_matrix** out);
SYMGF_API symgf_status symgf_ymap(const symgf_matrix* h, symgf_matrix** out);
/* assembled representative (0 S2; S3 D) of M modulo sp(2n,R) */
SYMGF_API symgf_status symgf_canonical_rep(const symgf_matrix* m, symgf_matrix** out);
/* orthonormal kernel basis (2n x nullity; nullity may be 0) plus a JSON report
 * with the rank and the comparison against ker(H^2 + I). */
SYMGF_API symgf_status symgf_xmap_kernel(const symgf_matrix* h, symgf_matrix** out_basis,
                                         char** report_json);

/* ---- generating functions ---- */

SYMGF_API symgf_status symgf_genfun_build(const symgf_matrix* h, symgf_genfun** out);
SYMGF_API symgf_status symgf_genfun_build_general(const symgf_matrix* h, symgf_genfun** out);
SYMGF_API symgf_status symgf_genfun_info(const symgf_genfun* g, int* n, int* k, int* theta_dim);
SYMGF_API symgf_status symgf_genfun_parse_json(const char* text, symgf_genfun** out);
SYMGF_API symgf_status symgf_genfun_to_json(const symgf_genfun* g, char** out);
SYMGF_API symgf_status symgf_genfun_load_json(const char* path, symgf_genfun** out);
SYMGF_API symgf_status symgf_genfun_save_json(const symgf_genfun* g, const char* path);
/* theta has length theta_dim (0 for the theta-free branch). */
SYMGF_API symgf_status symgf_genfun_eval(const symgf_genfun* g, const double* z_re,
                                         const double* z_im, const double* theta, size_t theta_len,
                                         double* out);
SYMGF_API symgf_status symgf_genfun_grad(const symgf_genfun* g, const double* z_re,
                                         const double* z_im, const double* theta, size_t theta_len,
                                         double* dz_re, double* dz_im, double* dtheta);
/* graph identity, reverse inclusion and restriction identity residuals;
 * pass receives 1 when all are below 1e-8. */
SYMGF_API symgf_status symgf_genfun_verify(const symgf_matrix* h, uint64_t seed, int trials,
                                           char** report_json, int* pass);

/* ---- search over the symplectic group ---- */

/* config JSON: {"n": int, "seed": int, "restarts": int, "budget": int,
 *               "target": {"n":..,"rows":..} | "planted" | "sweep",
 *               "targets": int (sweep only), "s_values": [..] (optional)}. */
SYMGF_API symgf_status symgf_explore(const char* config_json, char** report_json);
SYMGF_API symgf_status symgf_rank_scan(int n, int samples, uint64_t seed, char** report_json);

/* ---- metaplectic action on Gaussian states ---- */

SYMGF_API symgf_status symgf_gaussian_create(int n, const double* m_re, const double* m_im,
                                             double c_re, double c_im, double h,
                                             symgf_gaussian** out);
SYMGF_API symgf_status symgf_gaussian_info(const symgf_gaussian* g, int* n, double* h);
SYMGF_API symgf_status symgf_gaussian_copy_data(const symgf_gaussian* g, double* m_re,
                                                double* m_im, double* c_re, double* c_im);
SYMGF_API symgf_status symgf_gaussian_parse_json(const char* text, symgf_gaussian** out);
SYMGF_API symgf_status symgf_gaussian_to_json(const symgf_gaussian* g, char** out);
SYMGF_API symgf_status symgf_gaussian_load_json(const char* path, symgf_gaussian** out);
SYMGF_API symgf_status symgf_gaussian_save_json(const symgf_gaussian* g, const char* path);
SYMGF_API symgf_status symgf_gaussian_norm(const symgf_gaussian* g, double* out);

/* quantization for arbitrary symplectic input (rotation factorization when B
 * is singular); use_t_shift selects an explicit factorization angle. */
SYMGF_API symgf_status symgf_meta_quantize(const symgf_matrix* h, const symgf_gaussian* u,
                                           int use_t_shift, double t_shift, symgf_gaussian** out);
SYMGF_API symgf_status symgf_meta_compose_check(const symgf_matrix* h1, const symgf_matrix* h2,
                                                const symgf_gaussian* u, uint64_t seed,
                                                char** report_json, double* discrepancy);
SYMGF_API symgf_status symgf_meta_check_phase(const symgf_genfun* g, char** report_json, int* rank,
                                              int* pass);

/* ---- acceptance suite ---- */

/* spec JSON (nullable): {"seed": int, "scale": num, "only": [ids],
 *                        "tolerances": {key: value}, "timings": bool}. */
SYMGF_API symgf_status symgf_suite_run(const char* spec_json, char** report_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* SYMGF_CAPI_H */
