#ifndef MFC_H
#define MFC_H

/* C interface to the matrix-factorization completion laboratory.
 *
 * All functions return 0 on success, 1 when an experiment ran but its
 * expected properties failed, and 2 on invalid input. On nonzero return,
 * mfc_last_error() describes the failure (thread-local). Strings returned
 * through `out` parameters are heap-allocated JSON (or CSV where noted) and
 * must be released with mfc_string_free(). */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mfc_matrix mfc_matrix;

#define MFC_OK 0
#define MFC_EXPECTATIONS_FAILED 1
#define MFC_INVALID_INPUT 2

/* Last error message for the calling thread; empty string if none. */
const char* mfc_last_error(void);

void mfc_string_free(char* s);

/* Parse the text form (rows per line, `*` for unobserved, `#` comments) or
 * the JSON form {"d": int, "entries": [[row, col, value], ...]}; the loader
 * auto-detects. allow_zero_observed != 0 permits observed zeros. */
int mfc_matrix_parse(const char* text, int allow_zero_observed, mfc_matrix** out);
int mfc_matrix_load(const char* path, int allow_zero_observed, mfc_matrix** out);
void mfc_matrix_free(mfc_matrix* m);

/* Connectivity class, components, and complete-bipartite flags as JSON. */
int mfc_connectivity(const mfc_matrix* m, char** json_out);

/* Gradient-descent training. config_json keys (all optional):
 *   init_variance, learning_rate, max_steps, seed, record_stride.
 * out_dir (nullable) receives trajectory CSV and SVG charts. */
int mfc_train(const mfc_matrix* m, const char* config_json, const char* out_dir,
              char** json_out);

/* kind: "nuclear" | "rank" | "glrl". */
int mfc_oracle(const mfc_matrix* m, const char* kind, const char* out_dir,
               char** json_out);

/* Pattern classes of the d x d board with n observations (n < 0: all n). */
int mfc_enumerate(int d, int n, char** json_out);

/* Initialization-scale sweep. config_json: {"variances": [..], "reps": N,
 * "seed": N}; variances must be positive descending. */
int mfc_sweep(const mfc_matrix* m, const char* config_json, const char* out_dir,
              char** json_out);

/* target: "fig1" | "fig2" | "fig4" | "census" | "coincident". Returns
 * MFC_EXPECTATIONS_FAILED when the protocol ran but its checks failed. */
int mfc_reproduce(const char* target, uint64_t seed, const char* out_dir,
                  char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* MFC_H */
