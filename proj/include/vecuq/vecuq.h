/*
 * C interface to the vecuq library: fit a transport-based rank model on
 * calibration score vectors, score new vectors, evaluate detection and
 * rejection metrics, and run the synthetic experiments.
 *
 * All objects are opaque handles released with their matching *_free call.
 * Every fallible function returns a vecuq_status; on failure a description is
 * available from vecuq_last_error() on the calling thread until the next call.
 * Matrices are passed row-major (rows = samples).
 */
#ifndef VECUQ_H
#define VECUQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VECUQ_BUILDING_LIBRARY)
#    define VECUQ_API __declspec(dllexport)
#  else
#    define VECUQ_API __declspec(dllimport)
#  endif
#else
#  define VECUQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vecuq_status {
  VECUQ_OK = 0,
  VECUQ_ERR_INVALID_ARGUMENT = 1, /* precondition violated by caller data */
  VECUQ_ERR_NUMERICAL = 2,        /* numerical routine failed */
  VECUQ_ERR_IO = 3,
  VECUQ_ERR_FORMAT = 4,           /* malformed CSV or model file */
  VECUQ_ERR_INTERNAL = 5
} vecuq_status;

typedef enum vecuq_scaling {
  VECUQ_SCALING_FEATUREWISE = 0,
  VECUQ_SCALING_GLOBAL = 1,
  VECUQ_SCALING_IDENTITY = 2
} vecuq_scaling;

typedef enum vecuq_target {
  VECUQ_TARGET_BETA = 0,
  VECUQ_TARGET_EXPONENTIAL = 1
} vecuq_target;

typedef struct vecuq_fit_options {
  vecuq_scaling scaling;
  vecuq_target target;
  double alpha;   /* beta target */
  double beta;    /* beta target */
  double lambda;  /* exponential target rate */
  double gamma;   /* anchor multiplier, 0 disables anchors */
  double epsilon;
  double tol;
  size_t max_iters;
} vecuq_fit_options;

typedef struct vecuq_model_info {
  size_t measure_count;
  size_t calibration_count;
  size_t anchor_count;
  size_t reference_count;
  size_t iterations;
  double residual;
  int converged;
  double epsilon;
  double gamma;
} vecuq_model_info;

typedef struct vecuq_model vecuq_model;
typedef struct vecuq_table vecuq_table;

VECUQ_API const char* vecuq_version(void);
VECUQ_API const char* vecuq_last_error(void);

/* Defaults: featurewise scaling, Beta(1, 1) target, gamma 5, epsilon 0.5,
 * tol 1e-6, 10000 iterations. */
VECUQ_API void vecuq_fit_options_default(vecuq_fit_options* options);

/* ---- rank model ---- */

/* names may be NULL (columns are then named s0, s1, ...). */
VECUQ_API vecuq_status vecuq_model_fit(const double* scores, size_t rows, size_t cols, const char* const* names,
                                       const vecuq_fit_options* options, vecuq_model** out);
VECUQ_API void vecuq_model_free(vecuq_model* model);
VECUQ_API vecuq_status vecuq_model_save(const vecuq_model* model, const char* path);
VECUQ_API vecuq_status vecuq_model_load(const char* path, vecuq_model** out);
VECUQ_API vecuq_status vecuq_model_get_info(const vecuq_model* model, vecuq_model_info* out);
/* Borrowed pointer valid for the model's lifetime; NULL when out of range. */
VECUQ_API const char* vecuq_model_measure_name(const vecuq_model* model, size_t index);
/* out_scores has room for rows values. rows may be 0. */
VECUQ_API vecuq_status vecuq_model_rank(const vecuq_model* model, const double* query, size_t rows, size_t cols,
                                        double* out_scores);
/* out_vectors has room for rows * cols values. */
VECUQ_API vecuq_status vecuq_model_project(const vecuq_model* model, const double* query, size_t rows,
                                           size_t cols, double* out_vectors);

/* ---- numeric CSV tables ---- */

VECUQ_API vecuq_status vecuq_table_read_csv(const char* path, vecuq_table** out);
/* data is row-major rows x cols; names may be NULL. */
VECUQ_API vecuq_status vecuq_table_create(const double* data, size_t rows, size_t cols, const char* const* names,
                                          vecuq_table** out);
VECUQ_API void vecuq_table_free(vecuq_table* table);
VECUQ_API size_t vecuq_table_rows(const vecuq_table* table);
VECUQ_API size_t vecuq_table_cols(const vecuq_table* table);
VECUQ_API const char* vecuq_table_column_name(const vecuq_table* table, size_t col);
/* Row-major view valid for the table's lifetime. */
VECUQ_API const double* vecuq_table_data(const vecuq_table* table);
VECUQ_API vecuq_status vecuq_table_write_csv(const vecuq_table* table, const char* path);

/* ---- metrics ---- */

VECUQ_API vecuq_status vecuq_roc_auc(const double* scores, const int* labels, size_t n, double* out);
VECUQ_API vecuq_status vecuq_accuracy_coverage_auc(const double* uncertainty, const int* correct, size_t n,
                                                   double* out);
VECUQ_API vecuq_status vecuq_prr(const double* uncertainty, const double* quality, size_t n, double max_rejection,
                                 double* out);
/* values is row-major methods x tasks; out_share has room for methods values. */
VECUQ_API vecuq_status vecuq_pareto_front_share(const double* values, size_t methods, size_t tasks,
                                                double* out_share);

/* ---- synthetic experiments ---- */

/* experiment is "toy" or "blobs". Writes CSVs to out_dir and returns a
 * human-readable report in *report (release with vecuq_string_free). */
VECUQ_API vecuq_status vecuq_synth_run(const char* experiment, uint64_t seed, const char* out_dir, char** report);
VECUQ_API void vecuq_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* VECUQ_H */
