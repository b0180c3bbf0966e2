#ifndef NNCBOUND_H
#define NNCBOUND_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum NncStatus {
  NNC_STATUS_OK = 0,
  NNC_STATUS_NULL_POINTER = 1,
  NNC_STATUS_INVALID_INPUT = 2,
  NNC_STATUS_NORMALIZATION = 3,
  NNC_STATUS_TOO_LARGE = 4,
  NNC_STATUS_NOT_POSITIVE_DEFINITE = 5,
  NNC_STATUS_NO_FEASIBLE_POINT = 6,
  NNC_STATUS_INCONSISTENT = 7,
  NNC_STATUS_USAGE = 8,
  NNC_STATUS_PANIC = 9,
} NncStatus;

/**
 * Which Gaussian per-cut quantity to compute.
 */
typedef enum NncGaussQuantity {
  /**
   * `½ log|I + (P/2) G(S)G(S)ᵀ|`
   */
  NNC_GAUSS_QUANTITY_CUT_RATE = 0,
  /**
   * Cut rate plus `½·min{|S|,|Sᶜ|}·log₂(2|S|)`.
   */
  NNC_GAUSS_QUANTITY_OUTER = 1,
  /**
   * Cut rate minus `|S|/2`.
   */
  NNC_GAUSS_QUANTITY_INNER = 2,
} NncGaussQuantity;

/**
 * Built-in coding distributions.
 */
typedef enum NncDistributionPreset {
  /**
   * Uniform inputs, `Ŷ_k = Y_k`.
   */
  NNC_DISTRIBUTION_PRESET_UNIFORM_IDENTITY = 0,
  /**
   * Uniform inputs, constant `Ŷ_k`.
   */
  NNC_DISTRIBUTION_PRESET_UNIFORM_CONSTANT = 1,
} NncDistributionPreset;

/**
 * Discrete memoryless bounds.
 */
typedef enum NncBound {
  /**
   * Noisy network coding, multicast to `dest_mask`.
   */
  NNC_BOUND_MULTICAST = 0,
  /**
   * Noisy network coding with per-cut destinations from the network.
   */
  NNC_BOUND_PER_CUT = 1,
  /**
   * Noisy network coding treating interference as noise; plain
   * distributions are read as `U = X`.
   */
  NNC_BOUND_INTERFERENCE_AS_NOISE = 2,
  /**
   * Cutset bound under the distribution's product input, multicast to `dest_mask`.
   */
  NNC_BOUND_CUTSET = 3,
} NncBound;

typedef enum NncTwrcScheme {
  NNC_TWRC_SCHEME_NNC = 0,
  NNC_TWRC_SCHEME_AMPLIFY_FORWARD = 1,
  NNC_TWRC_SCHEME_COMPRESS_FORWARD = 2,
} NncTwrcScheme;

typedef enum NncIrcScheme {
  /**
   * Noisy network coding, both receivers decode both messages.
   */
  NNC_IRC_SCHEME_NNC_DECODE_BOTH = 0,
  /**
   * Noisy network coding, interference treated as noise.
   */
  NNC_IRC_SCHEME_NNC_INTERFERENCE_AS_NOISE = 1,
  NNC_IRC_SCHEME_COMPRESS_FORWARD = 2,
  NNC_IRC_SCHEME_HASH_FORWARD = 3,
} NncIrcScheme;

typedef struct NncDistribution NncDistribution;

typedef struct NncDmNetwork NncDmNetwork;

typedef struct NncGaussianNetwork NncGaussianNetwork;

typedef struct NncReport NncReport;

/**
 * One report entry.
 */
typedef struct NncReportEntry {
  uint16_t cut_mask;
  /**
   * One-based destination label, 0 when absent.
   */
  uint16_t dest;
  /**
   * Constrained rate subset; equals `cut_mask` unless the bound targets subsets.
   */
  uint16_t target_mask;
  double raw;
  double clamped;
  double positive;
  double penalty;
} NncReportEntry;

/**
 * Scalar search resolution; zero fields take the defaults (400 points, 60 iterations).
 */
typedef struct NncGrid {
  size_t points;
  size_t refine_iters;
} NncGrid;

typedef struct NncTwrcRates {
  double r1;
  double r2;
  double sum;
  /**
   * `σ²` or `α` at the optimum.
   */
  double param;
  /**
   * A relay at an end node forced gain capping.
   */
  bool flagged;
} NncTwrcRates;

typedef struct NncIrcConfig {
  double g13;
  double g23;
  double g14;
  double g24;
  double g15;
  double g25;
  double r0;
  double power;
} NncIrcConfig;

typedef struct NncIrcRates {
  double sum;
  double sigma2;
  /**
   * Evaluated in the zero relay-rate limit.
   */
  bool flagged;
} NncIrcRates;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *nnc_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nnc_version(void);

/**
 * `|S|/2 + ½·min{|S|,|Sᶜ|}·log₂(2|S|)`.
 */
double nnc_gap_budget(size_t s_len, size_t sc_len);

/**
 * Create a Gaussian network from an `n×n` row-major gain matrix
 * (`gains[j*n + k]` is sender `j+1` into receiver `k+1`), a per-sender
 * power, and a multicast destination mask.
 *
 * # Safety
 * `gains` must point to `n*n` doubles and `out` must be writable.
 */
enum NncStatus nnc_gaussian_new(size_t n,
                                const double *gains,
                                double power,
                                uint16_t dest_mask,
                                struct NncGaussianNetwork **out);

/**
 * # Safety
 * `net` must be NULL or a handle from [`nnc_gaussian_new`] not yet freed.
 */
void nnc_gaussian_free(struct NncGaussianNetwork *net);

/**
 * # Safety
 * `net` must be a live handle and `out` writable.
 */
enum NncStatus nnc_gaussian_cut(const struct NncGaussianNetwork *net,
                                enum NncGaussQuantity quantity,
                                uint16_t cut_mask,
                                double *out);

/**
 * Create a DM network. `channel` holds `Π|X_k| · Π|Y_k|` probabilities,
 * input index major, both indices mixed-radix with node `n` fastest.
 * `dest_masks[k]` is node `k+1`'s destination set.
 *
 * # Safety
 * Array arguments must hold the stated number of elements; `out` writable.
 */
enum NncStatus nnc_dm_new(size_t n,
                          const size_t *x_sizes,
                          const size_t *y_sizes,
                          const double *channel,
                          size_t channel_len,
                          const uint16_t *dest_masks,
                          struct NncDmNetwork **out);

/**
 * # Safety
 * `net` must be NULL or a handle from [`nnc_dm_new`] not yet freed.
 */
void nnc_dm_free(struct NncDmNetwork *net);

/**
 * # Safety
 * `net` must be a live handle and `out` writable.
 */
enum NncStatus nnc_distribution_preset(const struct NncDmNetwork *net,
                                       enum NncDistributionPreset preset,
                                       struct NncDistribution **out);

/**
 * Parse a distribution in the JSON file format, checked against `net`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `net` live; `out` writable.
 */
enum NncStatus nnc_distribution_from_json(const struct NncDmNetwork *net,
                                          const char *json,
                                          struct NncDistribution **out);

/**
 * # Safety
 * `dist` must be NULL or a live distribution handle.
 */
void nnc_distribution_free(struct NncDistribution *dist);

/**
 * # Safety
 * `net` and `dist` must be live handles; `out` writable.
 */
enum NncStatus nnc_bound_evaluate(const struct NncDmNetwork *net,
                                  const struct NncDistribution *dist,
                                  enum NncBound bound,
                                  uint16_t dest_mask,
                                  struct NncReport **out);

/**
 * Three-node relay channel compress-forward rate.
 *
 * # Safety
 * `net` and `dist` must be live handles; `out` writable.
 */
enum NncStatus nnc_relay_cf(const struct NncDmNetwork *net,
                            const struct NncDistribution *dist,
                            double *out);

/**
 * # Safety
 * `report` must be NULL or a live report handle.
 */
void nnc_report_free(struct NncReport *report);

/**
 * Number of entries; 0 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live report handle.
 */
size_t nnc_report_len(const struct NncReport *report);

/**
 * # Safety
 * `report` must be a live handle; `out` writable.
 */
enum NncStatus nnc_report_entry(const struct NncReport *report,
                                size_t index,
                                struct NncReportEntry *out);

/**
 * Maximize `Σ w_k R_k` over the region of a report (minimum over
 * destinations, negatives clamped), with rates outside `active_mask` at 0.
 * Writes `+inf` when an active weighted rate is unconstrained.
 *
 * # Safety
 * `weights` must hold one double per node; `report` live; `out` writable.
 */
enum NncStatus nnc_report_max_weighted_sum(const struct NncReport *report,
                                           const double *weights,
                                           size_t n_weights,
                                           uint16_t active_mask,
                                           double *out);

/**
 * Two-way relay channel rates with the relay at normalized distance `d` from node 1.
 *
 * # Safety
 * `out` must be writable.
 */
enum NncStatus nnc_twrc_rates(double d,
                              double gamma,
                              double power,
                              enum NncTwrcScheme scheme,
                              struct NncGrid resolution,
                              struct NncTwrcRates *out);

/**
 * Interference relay channel sum rate.
 *
 * # Safety
 * `cfg` must be readable and `out` writable.
 */
enum NncStatus nnc_irc_rates(const struct NncIrcConfig *cfg,
                             enum NncIrcScheme scheme,
                             struct NncGrid resolution,
                             struct NncIrcRates *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NNCBOUND_H */
