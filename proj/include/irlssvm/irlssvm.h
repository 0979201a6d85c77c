/*
 * C interface to the IRLS linear SVM library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an irlssvm_status;
 * on failure irlssvm_last_error() describes the problem for the calling
 * thread. Handles may be read concurrently from several threads; a handle
 * must not be freed while another thread uses it.
 */
#ifndef IRLSSVM_H
#define IRLSSVM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define IRLSSVM_API __declspec(dllexport)
#else
#  define IRLSSVM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  IRLSSVM_OK = 0,
  IRLSSVM_E_INVALID_ARGUMENT = 1,
  IRLSSVM_E_DATA = 2,
  IRLSSVM_E_SOLVER = 3,
  IRLSSVM_E_IO = 4,
  IRLSSVM_E_INVARIANT = 5,
  IRLSSVM_E_INTERNAL = 6
} irlssvm_status;

typedef enum {
  IRLSSVM_LOSS_HINGE = 0,
  IRLSSVM_LOSS_LEAST_SQUARES = 1,
  IRLSSVM_LOSS_SQUARED_HINGE = 2,
  IRLSSVM_LOSS_LOGISTIC = 3
} irlssvm_loss;

typedef enum {
  IRLSSVM_PENALTY_L2 = 0,
  IRLSSVM_PENALTY_L1 = 1,
  IRLSSVM_PENALTY_ELASTIC = 2
} irlssvm_penalty;

typedef enum { IRLSSVM_INIT_ZERO = 0, IRLSSVM_INIT_WARM = 1 } irlssvm_init;

typedef enum {
  IRLSSVM_STOP_MAX_ITERATIONS = 0,
  IRLSSVM_STOP_RISK_TOLERANCE = 1,
  IRLSSVM_STOP_CLOSED_FORM = 2
} irlssvm_termination;

typedef struct {
  irlssvm_loss loss;
  irlssvm_penalty penalty;
  double lambda;
  double mu;
  double epsilon;
} irlssvm_risk_spec;

typedef struct {
  int max_iterations;
  double risk_tolerance;
  irlssvm_init init;
} irlssvm_fit_options;

typedef struct {
  int ok;
  int monitored_smoothed; /* 1 if the smoothed risk was monitored */
  int first_violation;    /* -1 when none */
  double worst_increase;
  double worst_anchor_gap;
  int iterations_run;
} irlssvm_descent_report;

typedef struct irlssvm_dataset irlssvm_dataset;
typedef struct irlssvm_fit irlssvm_fit;
typedef struct irlssvm_model irlssvm_model;

IRLSSVM_API const char* irlssvm_last_error(void);
IRLSSVM_API const char* irlssvm_version(void);

/* Hinge + L2, lambda = mu = 0, epsilon = 1e-6. */
IRLSSVM_API void irlssvm_risk_spec_default(irlssvm_risk_spec* spec);
/* 50 iterations, tolerance 1e-8, warm start. */
IRLSSVM_API void irlssvm_fit_options_default(irlssvm_fit_options* options);

IRLSSVM_API irlssvm_status irlssvm_loss_from_name(const char* name, irlssvm_loss* out);
IRLSSVM_API irlssvm_status irlssvm_penalty_from_name(const char* name, irlssvm_penalty* out);
IRLSSVM_API const char* irlssvm_loss_to_name(irlssvm_loss loss);
IRLSSVM_API const char* irlssvm_penalty_to_name(irlssvm_penalty penalty);

/* Datasets */
IRLSSVM_API irlssvm_status irlssvm_dataset_from_arrays(size_t n, size_t q, const double* features,
                                                       const double* labels,
                                                       irlssvm_dataset** out);
IRLSSVM_API irlssvm_status irlssvm_dataset_load_csv(const char* path, irlssvm_dataset** out);
IRLSSVM_API irlssvm_status irlssvm_dataset_generate_gaussian(size_t n, const double mean_neg[2],
                                                             const double mean_pos[2],
                                                             uint64_t seed,
                                                             irlssvm_dataset** out);
IRLSSVM_API irlssvm_status irlssvm_dataset_write_csv(const irlssvm_dataset* dataset,
                                                     const char* path);
IRLSSVM_API irlssvm_status irlssvm_dataset_shape(const irlssvm_dataset* dataset, size_t* n,
                                                 size_t* q);
IRLSSVM_API void irlssvm_dataset_free(irlssvm_dataset* dataset);

/* Fitting. The fit handle keeps the risk settings it was produced with. */
IRLSSVM_API irlssvm_status irlssvm_fit_run(const irlssvm_risk_spec* spec,
                                           const irlssvm_dataset* dataset,
                                           const irlssvm_fit_options* options, irlssvm_fit** out);
IRLSSVM_API irlssvm_status irlssvm_fit_params(const irlssvm_fit* fit, double* alpha, double* beta,
                                              size_t q);
IRLSSVM_API irlssvm_status irlssvm_fit_summary(const irlssvm_fit* fit, int* iterations_run,
                                               int* converged, irlssvm_termination* reason);
IRLSSVM_API size_t irlssvm_fit_trajectory_length(const irlssvm_fit* fit);
IRLSSVM_API irlssvm_status irlssvm_fit_trajectory(const irlssvm_fit* fit, double* exact,
                                                  double* smoothed, size_t length);
IRLSSVM_API irlssvm_status irlssvm_fit_write_model(const irlssvm_fit* fit, const char* path);
IRLSSVM_API irlssvm_status irlssvm_fit_write_trajectory(const irlssvm_fit* fit, const char* path);
IRLSSVM_API void irlssvm_fit_free(irlssvm_fit* fit);

/* Stored models */
IRLSSVM_API irlssvm_status irlssvm_model_read(const char* path, irlssvm_model** out);
IRLSSVM_API irlssvm_status irlssvm_model_spec(const irlssvm_model* model, irlssvm_risk_spec* spec);
IRLSSVM_API size_t irlssvm_model_dimension(const irlssvm_model* model);
IRLSSVM_API irlssvm_status irlssvm_model_params(const irlssvm_model* model, double* alpha,
                                                double* beta, size_t q);
IRLSSVM_API irlssvm_status irlssvm_model_predict(const irlssvm_model* model,
                                                 const double* features, size_t q, int* label);
/* Copies the CSV at in_path to out_path with a "predicted" column appended. */
IRLSSVM_API irlssvm_status irlssvm_model_predict_csv(const irlssvm_model* model,
                                                     const char* in_path, const char* out_path,
                                                     size_t* rows);
IRLSSVM_API void irlssvm_model_free(irlssvm_model* model);

/* Evaluation */
IRLSSVM_API irlssvm_status irlssvm_risk(const irlssvm_risk_spec* spec, double alpha,
                                        const double* beta, size_t q,
                                        const irlssvm_dataset* dataset, int smoothed, double* out);
IRLSSVM_API irlssvm_status irlssvm_accuracy(double alpha, const double* beta, size_t q,
                                            const irlssvm_dataset* dataset, double* out);

/* Fits and checks monotone descent of the monitored risk. Returns
   IRLSSVM_E_INVARIANT (report filled in) when the check fails. */
IRLSSVM_API irlssvm_status irlssvm_check_descent(const irlssvm_risk_spec* spec,
                                                 const irlssvm_dataset* dataset,
                                                 const irlssvm_fit_options* options,
                                                 irlssvm_descent_report* report);

#ifdef __cplusplus
}
#endif

#endif /* IRLSSVM_H */
