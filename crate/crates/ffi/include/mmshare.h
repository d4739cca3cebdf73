#ifndef MMSHARE_H
#define MMSHARE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. The simulation codes match the CLI exit
 * codes.
 */
typedef enum MmsStatus {
  MMS_STATUS_OK = 0,
  MMS_STATUS_CONFIG_ERROR = 2,
  MMS_STATUS_RUNTIME_ERROR = 3,
  MMS_STATUS_INSTANCE_SIZE = 4,
  MMS_STATUS_NULL_ARGUMENT = 5,
  MMS_STATUS_INVALID_ARGUMENT = 6,
  MMS_STATUS_PANIC = 7,
} MmsStatus;

/**
 * Values accepted wherever a function takes a scenario `kind`.
 */
typedef enum MmsScenario {
  MMS_SCENARIO_NO_SHARING = 0,
  MMS_SCENARIO_SPECTRUM = 1,
  MMS_SCENARIO_SPECTRUM_INFRA = 2,
  MMS_SCENARIO_SPECTRUM_ACCESS = 3,
} MmsScenario;

/**
 * Values accepted by [`mms_path_loss_db`].
 */
typedef enum MmsLinkState {
  MMS_LINK_STATE_LOS = 0,
  MMS_LINK_STATE_NLOS = 1,
} MmsLinkState;

/**
 * Opaque experiment configuration.
 */
typedef struct MmsConfig MmsConfig;

/**
 * Opaque per-user results of one scenario run.
 */
typedef struct MmsResults MmsResults;

typedef struct MmsSummary {
  size_t users;
  double median_sinr_db;
  double median_rate_bps;
  double p05_rate_bps;
  double mean_rate_bps;
  double outage_fraction;
} MmsSummary;

typedef struct MmsSweepRow {
  double density_bs_km2;
  double median_rate_bps;
  double p05_rate_bps;
  double mean_rate_bps;
  double outage_fraction;
} MmsSweepRow;

typedef struct MmsGapRow {
  uint64_t instance_id;
  double blind_sum_rate_bps;
  double ub_sum_rate_bps;
  double gap_percent;
} MmsGapRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mms_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *mms_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void mms_string_free(char *s);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum MmsStatus mms_config_default(struct MmsConfig **out);

/**
 * Parses and validates a JSON config. Missing keys take their defaults.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum MmsStatus mms_config_from_json(const char *json, struct MmsConfig **out);

/**
 * Pretty JSON of the full config; free with [`mms_string_free`].
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be valid for writes.
 */
enum MmsStatus mms_config_to_json(const struct MmsConfig *cfg, char **out);

/**
 * Hex SHA-256 written into artifact headers; free with [`mms_string_free`].
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be valid for writes.
 */
enum MmsStatus mms_config_hash(const struct MmsConfig *cfg, char **out);

/**
 * # Safety
 * `cfg` must be NULL or a handle not yet freed.
 */
void mms_config_free(struct MmsConfig *cfg);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum MmsStatus mms_config_set_seed(struct MmsConfig *cfg, uint64_t seed);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum MmsStatus mms_config_set_drops(struct MmsConfig *cfg, size_t drops);

/**
 * `kind` is an [`MmsScenario`] value.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum MmsStatus mms_config_set_scenario(struct MmsConfig *cfg, int32_t kind);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum MmsStatus mms_config_set_interference(struct MmsConfig *cfg, bool enabled);

/**
 * Runs `drops` drops of the config's scenario at its base-station density.
 *
 * # Safety
 * `cfg` must be a live handle; `out` must be valid for writes.
 */
enum MmsStatus mms_run_scenario(const struct MmsConfig *cfg, struct MmsResults **out);

/**
 * Number of users pooled in `res`, or 0 for NULL.
 *
 * # Safety
 * `res` must be NULL or a live handle.
 */
size_t mms_results_len(const struct MmsResults *res);

/**
 * Copies per-user rates (bps) in drop and user order.
 *
 * # Safety
 * `res` must be a live handle; `buf` must hold `capacity` doubles.
 */
enum MmsStatus mms_results_rates(const struct MmsResults *res, double *buf, size_t capacity);

/**
 * Copies per-user SINR in dB; unserved users are `-inf`.
 *
 * # Safety
 * `res` must be a live handle; `buf` must hold `capacity` doubles.
 */
enum MmsStatus mms_results_sinr_db(const struct MmsResults *res, double *buf, size_t capacity);

/**
 * # Safety
 * `res` must be a live handle; `out` must be valid for writes.
 */
enum MmsStatus mms_results_summary(const struct MmsResults *res, struct MmsSummary *out);

/**
 * Nearest-rank percentile of the pooled rates, `p` in [0, 1].
 *
 * # Safety
 * `res` must be a live handle; `out` must be valid for writes.
 */
enum MmsStatus mms_results_rate_percentile(const struct MmsResults *res, double p, double *out);

/**
 * # Safety
 * `res` must be NULL or a handle not yet freed.
 */
void mms_results_free(struct MmsResults *res);

/**
 * Sweeps the config's scenario over `n` densities, writing one row per
 * density into `rows`. `fitted_exponent` may be NULL; otherwise it receives
 * the log-log slope of the mean rate, or NaN with fewer than three points.
 *
 * # Safety
 * `cfg` must be a live handle; `densities` must hold `n` doubles and `rows`
 * `n` rows.
 */
enum MmsStatus mms_run_sweep(const struct MmsConfig *cfg,
                             const double *densities,
                             size_t n,
                             struct MmsSweepRow *rows,
                             double *fitted_exponent);

/**
 * Blind versus exhaustive association on `gap.instances` small instances
 * of the config's scenario. `count` always receives the instance count; the
 * call fails with `INVALID_ARGUMENT` before running when `capacity` is
 * smaller, so `rows` may be NULL to query the size.
 *
 * # Safety
 * `cfg` must be a live handle; `rows` must hold `capacity` rows;
 * `count` must be valid for writes.
 */
enum MmsStatus mms_run_gap(const struct MmsConfig *cfg,
                           struct MmsGapRow *rows,
                           size_t capacity,
                           size_t *count);

/**
 * Mean cell radius in metres for a density per km².
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MmsStatus mms_avg_cell_radius(double density, double *out);

/**
 * Rate in bps for a linear SINR over `bandwidth_hz`, using the rate
 * parameters of `cfg`, or the defaults when `cfg` is NULL.
 *
 * # Safety
 * `cfg` must be NULL or a live handle; `out` must be valid for writes.
 */
enum MmsStatus mms_user_rate(const struct MmsConfig *cfg,
                             double gamma,
                             double bandwidth_hz,
                             double *out);

/**
 * `max(1 - A_c * rho, 0)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MmsStatus mms_outage_fraction(double coverage_area_km2, double rho, double *out);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum MmsStatus mms_bandwidth_per_ue(double total_bandwidth_hz,
                                    size_t num_bs,
                                    size_t num_ue,
                                    size_t num_operators,
                                    bool sharing,
                                    double *out);

/**
 * Thermal noise plus noise figure over `bandwidth_hz`, in dBm.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MmsStatus mms_noise_power_dbm(double bandwidth_hz, double noise_figure_db, double *out);

/**
 * Path loss in dB at `distance_m` for an [`MmsLinkState`] value, with the
 * channel parameters of `cfg`, or the defaults when `cfg` is NULL.
 *
 * # Safety
 * `cfg` must be NULL or a live handle; `out` must be valid for writes.
 */
enum MmsStatus mms_path_loss_db(const struct MmsConfig *cfg,
                                double distance_m,
                                int32_t state,
                                double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MMSHARE_H */
