#ifndef SPECTRUM_SCOPE_H
#define SPECTRUM_SCOPE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes; the non-zero input, cap and convergence codes match the CLI exit codes.
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  SS_STATUS_INVALID_INPUT = 2,
  SS_STATUS_RESOURCE_LIMIT = 3,
  SS_STATUS_NON_CONVERGENCE = 4,
  SS_STATUS_NULL_POINTER = 5,
  SS_STATUS_INDEX_OUT_OF_RANGE = 6,
  SS_STATUS_PANIC = 7,
} SsStatus;

// Exact outcome law of the frame measurement.
typedef struct SsDistribution SsDistribution;

// Sampled outcome counts, frames in canonical order.
typedef struct SsHistogram SsHistogram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the buffer size needed for the full message,
// or 0 when there is no error.
//
// # Safety
// `buf` must be valid for `len` bytes or null with `len == 0`.
size_t ss_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *ss_version(void);

// Relative entropy `I(s) = Σ s_j ln(s_j / r_j)`; `+inf` off the support of `r`.
//
// # Safety
// `s` and `r` must point to `d` doubles; `out` must be writable.
enum SsStatus ss_rate(const double *s, const double *r, size_t d, double *out);

// Cumulant generating function `ln Σ r_j e^{η_j}`.
//
// # Safety
// `eta` and `r` must point to `d` doubles; `out` must be writable.
enum SsStatus ss_cgf(const double *eta, const double *r, size_t d, double *out);

// `sup_η (η·s − c(η))`. `eta_out` may be null; otherwise it receives the `d`
// maximizing coordinates. `iterations_out` may be null.
//
// # Safety
// `s` and `r` must point to `d` doubles; non-null outputs must be writable.
enum SsStatus ss_legendre(const double *s,
                          const double *r,
                          size_t d,
                          double *value_out,
                          double *eta_out,
                          uint64_t *iterations_out);

// `ln s_Y(r)` for a frame given by `d` non-increasing rows (`-inf` when zero).
//
// # Safety
// `rows` and `r` must point to `d` values; `out` must be writable.
enum SsStatus ss_schur_log(const uint32_t *rows, const double *r, size_t d, double *out);

// `inf I` over the complement of the closed sup-norm ball of radius `epsilon`
// around `r`. `minimizer_out` may be null; otherwise receives `d` doubles.
// An empty region yields `+inf` and leaves `minimizer_out` untouched.
//
// # Safety
// `r` must point to `d` doubles; non-null outputs must be writable.
enum SsStatus ss_inf_rate_ball_complement(const double *r,
                                          size_t d,
                                          double epsilon,
                                          double *value_out,
                                          double *minimizer_out);

// Builds the exact law on `n` copies. Release with [`ss_distribution_free`].
//
// # Safety
// `r` must point to `d` doubles; `out` must be writable.
enum SsStatus ss_distribution_new(size_t d,
                                  uint32_t n,
                                  const double *r,
                                  struct SsDistribution **out);

// # Safety
// `dist` must come from [`ss_distribution_new`] and not be used afterwards; null is ignored.
void ss_distribution_free(struct SsDistribution *dist);

// Number of frames (0 for a null handle).
//
// # Safety
// `dist` must be a live handle or null.
size_t ss_distribution_len(const struct SsDistribution *dist);

// Frame `index` in canonical order: `d` rows, probability and log-probability.
// Any output pointer may be null.
//
// # Safety
// `dist` must be a live handle; `rows_out` must hold `d` values when non-null.
enum SsStatus ss_distribution_entry(const struct SsDistribution *dist,
                                    size_t index,
                                    uint32_t *rows_out,
                                    double *prob_out,
                                    double *log_prob_out);

// Most probable frame.
//
// # Safety
// `dist` must be a live handle; `rows_out` must hold `d` values.
enum SsStatus ss_distribution_mode(const struct SsDistribution *dist, uint32_t *rows_out);

// Probability that `Y/N` lies outside the closed sup-norm ball of radius `epsilon`
// around the distribution's own spectrum.
//
// # Safety
// `dist` must be a live handle; `out` must be writable.
enum SsStatus ss_distribution_ball_complement_probability(const struct SsDistribution *dist,
                                                          double epsilon,
                                                          double *out);

// Draws `samples` frames by RSK insertion over `chains` seeded streams.
// Release with [`ss_histogram_free`].
//
// # Safety
// `r` must point to `d` doubles; `out` must be writable.
enum SsStatus ss_sample_new(size_t d,
                            uint32_t n,
                            const double *r,
                            uint64_t samples,
                            uint64_t seed,
                            uint32_t chains,
                            struct SsHistogram **out);

// # Safety
// `hist` must come from [`ss_sample_new`] and not be used afterwards; null is ignored.
void ss_histogram_free(struct SsHistogram *hist);

// Number of distinct frames observed (0 for a null handle).
//
// # Safety
// `hist` must be a live handle or null.
size_t ss_histogram_len(const struct SsHistogram *hist);

// Observed frame `index` in canonical order and its count.
//
// # Safety
// `hist` must be a live handle; `rows_out` must hold `d` values when non-null.
enum SsStatus ss_histogram_entry(const struct SsHistogram *hist,
                                 size_t index,
                                 uint32_t *rows_out,
                                 uint64_t *count_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRUM_SCOPE_H */
