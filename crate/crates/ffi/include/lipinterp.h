#ifndef LIPINTERP_H
#define LIPINTERP_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stddef.h>
#include <stdint.h>

// Result code of every `li_*` call.
typedef enum LiStatus {
  LI_STATUS_OK = 0,
  LI_STATUS_NULL_POINTER = 1,
  LI_STATUS_INVALID_ARGUMENT = 2,
  LI_STATUS_DIMENSION_MISMATCH = 3,
  LI_STATUS_EMPTY_DATA = 4,
  LI_STATUS_CONFIG = 5,
  LI_STATUS_UNSUPPORTED = 6,
  LI_STATUS_DEGENERATE = 7,
  LI_STATUS_IO = 8,
  LI_STATUS_PARSE = 9,
  LI_STATUS_PANIC = 10,
} LiStatus;

// Online LACKI estimator that owns its data.
typedef struct LiLacki LiLacki;

// Interpolator with a fixed metric, Lipschitz constant and optional noise bound.
typedef struct LiModel LiModel;

// A set of samples `(x, y)` with a fixed input dimension.
typedef struct LiSampleSet LiSampleSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL if none.
// The pointer stays valid until the next failing call on the same thread.
const char *li_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *li_version(void);

// Creates an empty sample set with inputs of dimension `dim`.
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum LiStatus li_sample_set_new(uintptr_t dim, struct LiSampleSet **out);

// Loads a sample set from a CSV file with header `x0,...,x{d-1},y`.
//
// # Safety
// `path` must be a NUL-terminated string and `out` writable.
enum LiStatus li_sample_set_load_csv(const char *path, struct LiSampleSet **out);

// Appends one sample. `x` holds `dim` doubles.
//
// # Safety
// `set` must come from this library; `x` must point to `dim` doubles.
enum LiStatus li_sample_set_push(struct LiSampleSet *set, const double *x, double y);

// # Safety
// `set` must come from this library and `out` must be writable.
enum LiStatus li_sample_set_len(const struct LiSampleSet *set, uintptr_t *out);

// # Safety
// `set` must come from this library and `out` must be writable.
enum LiStatus li_sample_set_dim(const struct LiSampleSet *set, uintptr_t *out);

// Releases a sample set. NULL is ignored.
//
// # Safety
// `set` must come from this library and not be used afterwards.
void li_sample_set_free(struct LiSampleSet *set);

// Creates an interpolator for the metric `‖x − y‖_p^alpha`. Pass `INFINITY`
// for the max-norm; other values of `p` must be positive integers.
//
// # Safety
// `out` must be writable.
enum LiStatus li_model_new(double p, double alpha, double lipschitz, struct LiModel **out);

// Sets the symmetric noise bound used by [`li_model_envelope`].
//
// # Safety
// `model` must come from this library.
enum LiStatus li_model_set_noise_bound(struct LiModel *model, double e_bar);

// Point prediction at `x`.
//
// # Safety
// Handles must come from this library; `x` must point to `dim` doubles.
enum LiStatus li_model_predict(const struct LiModel *model,
                               const struct LiSampleSet *set,
                               const double *x,
                               double *out);

// Floor and ceiling at `x`.
//
// # Safety
// Handles must come from this library; `x` must point to `dim` doubles.
enum LiStatus li_model_bounds(const struct LiModel *model,
                              const struct LiSampleSet *set,
                              const double *x,
                              double *out_floor,
                              double *out_ceiling);

// Worst-case envelope at `x`. Requires a noise bound.
//
// # Safety
// Handles must come from this library; `x` must point to `dim` doubles.
enum LiStatus li_model_envelope(const struct LiModel *model,
                                const struct LiSampleSet *set,
                                const double *x,
                                double *out_lower,
                                double *out_upper);

// Releases a model. NULL is ignored.
//
// # Safety
// `model` must come from this library and not be used afterwards.
void li_model_free(struct LiModel *model);

// Creates an empty LACKI estimator with offset `lambda`.
//
// # Safety
// `out` must be writable.
enum LiStatus li_lacki_new(uintptr_t dim,
                           double p,
                           double alpha,
                           double lambda,
                           struct LiLacki **out);

// Adds a sample and optionally writes the updated estimate to `out_estimate`
// (may be NULL).
//
// # Safety
// `state` must come from this library; `x` must point to `dim` doubles.
enum LiStatus li_lacki_update(struct LiLacki *state,
                              const double *x,
                              double y,
                              double *out_estimate);

// Current Lipschitz constant estimate (0 before two distinct inputs).
//
// # Safety
// `state` must come from this library and `out` must be writable.
enum LiStatus li_lacki_estimate(const struct LiLacki *state, double *out);

// Number of samples seen.
//
// # Safety
// `state` must come from this library and `out` must be writable.
enum LiStatus li_lacki_len(const struct LiLacki *state, uintptr_t *out);

// Prediction at `x` using the current estimate and all data seen.
//
// # Safety
// `state` must come from this library; `x` must point to `dim` doubles.
enum LiStatus li_lacki_predict(const struct LiLacki *state, const double *x, double *out);

// Releases an estimator. NULL is ignored.
//
// # Safety
// `state` must come from this library and not be used afterwards.
void li_lacki_free(struct LiLacki *state);

// Exponent `alpha / (d + eta·alpha)` of the sup-error rate `(ln n / n)^exponent`.
//
// # Safety
// `out` must be writable.
enum LiStatus li_rate_exponent(uintptr_t d, double alpha, double eta, double *out);

// Spectral radius of the discrete closed-loop error matrix for step `delta`
// and gains `k1`, `k2`.
//
// # Safety
// `out` must be writable.
enum LiStatus li_spectral_radius(double delta, double k1, double k2, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIPINTERP_H */
