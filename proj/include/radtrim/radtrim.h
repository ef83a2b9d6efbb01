/* radtrim: radius-based trimming for functional and high-dimensional data.
 *
 * C interface to the shared library. All functions returning radtrim_status
 * set a thread-local message readable through radtrim_last_error() on
 * failure. Strings returned through char** are heap copies; release them
 * with radtrim_string_free(). Handles are opaque; release them with the
 * matching *_free() function. NULL arguments yield RADTRIM_ERR_INVALID.
 */
#ifndef RADTRIM_H
#define RADTRIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum radtrim_status {
    RADTRIM_OK = 0,
    RADTRIM_ERR_INVALID = 1,    /* bad argument or unusable value */
    RADTRIM_ERR_PARSE = 2,      /* malformed file or config text */
    RADTRIM_ERR_DEGENERATE = 3, /* configuration trims everything away */
    RADTRIM_ERR_INTERNAL = 4
} radtrim_status;

typedef struct radtrim_sample radtrim_sample;
typedef struct radtrim_fit radtrim_fit;
typedef struct radtrim_report radtrim_report;

const char* radtrim_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* radtrim_last_error(void);

void radtrim_string_free(char* s);

/* Load a dataset file. format is "auto" (by extension), "csv", or "json". */
radtrim_status radtrim_sample_load(const char* path, const char* format,
                                   radtrim_sample** out);

/* Parse matrix-CSV text directly (first line: grid knots or "euclidean"). */
radtrim_status radtrim_sample_from_csv(const char* text, radtrim_sample** out);

void radtrim_sample_free(radtrim_sample* s);
size_t radtrim_sample_rows(const radtrim_sample* s);
size_t radtrim_sample_cols(const radtrim_sample* s);

/* 16-hex-digit checksum of the bytes the sample was parsed from. */
radtrim_status radtrim_sample_checksum(const radtrim_sample* s, char** hex_out);

/* CSV (id,alpha,radius,rank) of neighborhood radii for each alpha. */
radtrim_status radtrim_radii_csv(const radtrim_sample* s, const double* alphas,
                                 size_t count, char** csv_out);

/* Radii plus per-alpha binned counts (alpha,bin_lo,bin_hi,count). Either
 * output pointer may be NULL if that artifact is not wanted. */
radtrim_status radtrim_screen_csv(const radtrim_sample* s, const double* alphas,
                                  size_t count, size_t bins, char** radii_csv_out,
                                  char** hist_csv_out);

typedef struct radtrim_trim_options {
    double alpha;      /* neighborhood fraction in (0, 0.5] */
    double beta;       /* trimmed fraction in [0, 0.5]; 0 = no trimming */
    double beta1;      /* soft mode: downweighting starts here; beta1 > beta */
    int soft;          /* 0 = hard rejection, 1 = soft rejection */
    size_t components; /* principal components to return */
} radtrim_trim_options;

radtrim_status radtrim_trim_run(const radtrim_sample* s,
                                const radtrim_trim_options* options,
                                radtrim_fit** out);
void radtrim_fit_free(radtrim_fit* f);

/* JSON with keys mean, complement_mean, eigenvalues, pc_values, scores,
 * weights, truncated. */
radtrim_status radtrim_fit_json(const radtrim_fit* f, char** json_out);

size_t radtrim_fit_components(const radtrim_fit* f);

/* Borrowed views into the fit; valid until radtrim_fit_free(). */
radtrim_status radtrim_fit_mean(const radtrim_fit* f, const double** data,
                                size_t* len);
radtrim_status radtrim_fit_eigenvalues(const radtrim_fit* f, const double** data,
                                       size_t* len);
radtrim_status radtrim_fit_weights(const radtrim_fit* f, const double** data,
                                   size_t* len);

/* Run a simulation study from config JSON (see docs/config schema). Honors
 * the RADTRIM_THREADS environment variable; results do not depend on it. */
radtrim_status radtrim_simulate_run(const char* config_json, radtrim_report** out);
void radtrim_report_free(radtrim_report* r);
radtrim_status radtrim_report_csv(const radtrim_report* r, char** out);
radtrim_status radtrim_report_json(const radtrim_report* r, char** out);

/* The fully resolved configuration (defaults filled in), for manifests. */
radtrim_status radtrim_report_config_json(const radtrim_report* r, char** out);
uint64_t radtrim_report_seed(const radtrim_report* r);

/* Rerun manifest: command, resolved config, dataset checksum, seed, version.
 * config_json and dataset_checksum may be NULL or empty when not applicable. */
radtrim_status radtrim_manifest_json(const char* command, const char* config_json,
                                     const char* dataset_checksum, uint64_t seed,
                                     char** out);

#ifdef __cplusplus
}
#endif

#endif /* RADTRIM_H */
