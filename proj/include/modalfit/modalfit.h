/* modalfit — mesh-free modal analysis of beams and acoustic cavities.
 *
 * C API: opaque handles + status codes. A run is described by a JSON config
 * document (schema documented in README.md); results are queried through
 * accessors or serialized wholesale (report JSON, CSV).
 *
 * Buffer protocol: functions taking (buf, cap, needed) write a NUL-terminated
 * string into buf when cap suffices and always store the required size
 * (including the NUL) in *needed when it is non-NULL. Call with buf = NULL,
 * cap = 0 to query the size. MF_ERR_ARGUMENT signals an undersized buffer.
 */
#ifndef MODALFIT_H
#define MODALFIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define MF_API_VERSION 1

typedef enum mf_status {
  MF_OK = 0,
  MF_ERR_CONFIG = 2,    /* invalid configuration document or parameters */
  MF_ERR_NUMERIC = 3,   /* not-SPD reduced system, insufficient modes, ... */
  MF_ERR_ARGUMENT = 4,  /* NULL handle, bad index, undersized buffer */
  MF_ERR_INTERNAL = 5
} mf_status;

/* Completed analysis run (modes, errors, diagnostics, timings). */
typedef struct mf_result mf_result;

int mf_api_version(void);

/* Message for the most recent failure on this thread; valid until the next
 * API call on the same thread. Never NULL. */
const char* mf_last_error(void);

/* Parse the JSON config and execute the full pipeline. On success stores a
 * handle the caller must release with mf_result_free. */
mf_status mf_run_json(const char* config_json, mf_result** out);

/* Bundled benchmark configurations (desk-scale). */
int mf_benchmark_count(void);
const char* mf_benchmark_name(int idx);                /* NULL on bad index */
mf_status mf_benchmark_config(int idx, char* buf, size_t cap, size_t* needed);

/* Scalar accessors. Sizes are counts of doubles the array accessors fill. */
int mf_result_mode_count(const mf_result*);            /* K retained modes */
mf_status mf_result_eigenvalues(const mf_result*, double* out, size_t cap);
mf_status mf_result_frequencies(const mf_result*, double* out, size_t cap);
mf_status mf_result_exact_frequencies(const mf_result*, double* out, size_t cap);
mf_status mf_result_errors(const mf_result*, double* abs_out, double* rel_out, size_t cap);
double mf_result_asymmetry(const mf_result*);
int mf_result_reduced_dim(const mf_result*);
int mf_result_retained(const mf_result*);
int mf_result_filtered(const mf_result*);
int mf_result_ridge_applied(const mf_result*);
/* out[0..3] = assembly, projection, eigensolve, reconstruction in ms. */
mf_status mf_result_timings_ms(const mf_result*, double out[4]);

/* Serialized documents. */
mf_status mf_result_report_json(const mf_result*, char* buf, size_t cap, size_t* needed);
mf_status mf_result_frequencies_csv(const mf_result*, char* buf, size_t cap, size_t* needed);
mf_status mf_result_mode_csv(const mf_result*, int mode_index, char* buf, size_t cap,
                             size_t* needed);

/* Mode-shape samples; mode_index is 1-based. dim is 1 or 2; ys is ignored for
 * 1D problems (may be NULL then). cap counts entries per output array. */
mf_status mf_result_mode_sample_count(const mf_result*, int mode_index, size_t* count,
                                      int* dim);
mf_status mf_result_mode_samples(const mf_result*, int mode_index, double* xs, double* ys,
                                 double* values, size_t cap);

void mf_result_free(mf_result*);

#ifdef __cplusplus
}
#endif

#endif /* MODALFIT_H */
