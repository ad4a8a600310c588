/* C interface to the corner-SINR reliability library.
 *
 * All entry points are thread-compatible: distinct handles may be used from
 * distinct threads, a single handle must not be shared without external
 * locking.  Functions returning int yield CORNER_OK or an error code, and
 * corner_last_error() describes the most recent failure on the calling
 * thread.  Pointer-returning functions yield NULL on failure.
 */

#ifndef CORNERSINR_H
#define CORNERSINR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CORNER_OK 0
#define CORNER_EINVAL 1       /* bad argument or scenario precondition */
#define CORNER_EPARSE 2       /* malformed config file */
#define CORNER_EUNAVAILABLE 3 /* requested result does not exist */

#define CORNER_ROAD_HORIZONTAL 0
#define CORNER_ROAD_VERTICAL 1

#define CORNER_ENV_SUBURBAN 0
#define CORNER_ENV_URBAN 1

#define CORNER_REGION_LOS 0
#define CORNER_REGION_WLOS 1
#define CORNER_REGION_NLOS 2

#define CORNER_MC_EXACT 0
#define CORNER_MC_FADING 1

const char* corner_version(void);
/* Message for the last failure on this thread; empty string if none. */
const char* corner_last_error(void);

/* ---- scenario handles -------------------------------------------------- */

typedef struct corner_scenario corner_scenario;

/* Reference parameter set for the given environment code. */
corner_scenario* corner_scenario_default(int environment);
/* Scenario + link from an INI file (see README for the format). */
corner_scenario* corner_scenario_load(const char* path);
void corner_scenario_free(corner_scenario* sc);

int corner_scenario_environment(const corner_scenario* sc);
double corner_scenario_tx_prob(const corner_scenario* sc);
double corner_scenario_half_len_x(const corner_scenario* sc);
double corner_scenario_half_len_y(const corner_scenario* sc);
double corner_scenario_rx_coord(const corner_scenario* sc);

int corner_scenario_set_tx_prob(corner_scenario* sc, double tx_prob);
/* Sets both road half-lengths. */
int corner_scenario_set_half_len(corner_scenario* sc, double half_len_m);
int corner_scenario_set_link(corner_scenario* sc, int tx_road,
                             double tx_coord_m, int rx_road,
                             double rx_coord_m);
/* Moves the TX to evaluation-grid position k (1..m_e), keeping the RX. */
int corner_scenario_set_grid_tx(corner_scenario* sc, int k, int m_e,
                                double d_max_m);

/* Writes the resolved scenario and link as a JSON object.  Returns the
 * number of bytes needed (excluding NUL); output is truncated if it does
 * not fit. */
int corner_scenario_describe(const corner_scenario* sc, char* buf,
                             size_t buflen);

/* Writes one diagnostic per line as "violation|warning <code>: <message>".
 * Returns the number of hard violations (warnings excluded), or -1. */
int corner_scenario_validate(const corner_scenario* sc, char* buf,
                             size_t buflen);

/* ---- closed-form reliability ------------------------------------------- */

typedef struct {
  double p_noint; /* noise-only success */
  double p_x;     /* survival against the receiver's road */
  double p_y;     /* survival against the perpendicular road */
  double p_c;     /* product */
} corner_breakdown;

int corner_link_region(const corner_scenario* sc);
int corner_reliability(const corner_scenario* sc, corner_breakdown* out);
int corner_reliability_infinite(const corner_scenario* sc,
                                corner_breakdown* out);
int corner_reliability_oracle(const corner_scenario* sc,
                              corner_breakdown* out);

/* ---- transmit-probability design --------------------------------------- */

typedef struct {
  double half_len_m;
  double p_star_raw; /* unclamped solution */
  double p_star;     /* clamped to [0, 1] */
  double p_inf;      /* infinite-road asymptote */
  int feasible;
  int saturated;
} corner_design_point;

/* Solves for the largest transmit probability meeting `target` on the
 * canonical worst-case link at Manhattan range d_target_m, with the
 * receiver taken from the scenario's stored link.  half_len_m <= 0 keeps
 * the scenario's current half-lengths. */
int corner_design(const corner_scenario* sc, double target, double d_target_m,
                  double half_len_m, corner_design_point* out);

/* ---- meta distribution (Monte Carlo) ----------------------------------- */

typedef struct corner_meta corner_meta;

corner_meta* corner_meta_run(const corner_scenario* sc, long n_ppp, int mode,
                             int n_fades, int n_bins,
                             unsigned long long master_seed, int threads);
long corner_meta_count(const corner_meta* m);
double corner_meta_sample(const corner_meta* m, long i);
long corner_meta_bins(const corner_meta* m);
long corner_meta_bin_count(const corner_meta* m, long bin);
double corner_meta_moment1(const corner_meta* m);
double corner_meta_moment2(const corner_meta* m);
/* Fraction of realizations with conditional success >= p. */
double corner_meta_cdf_at(const corner_meta* m, double p);
/* CORNER_EUNAVAILABLE when no beta law matches the sample moments. */
int corner_meta_beta(const corner_meta* m, double* a, double* b);
void corner_meta_free(corner_meta* m);

/* ---- fine-grained sweep over TX positions ------------------------------ */

typedef struct corner_sweep corner_sweep;

corner_sweep* corner_sweep_run(const corner_scenario* sc, double d_max_m,
                               int m_e, long n_ppp, int mode, int n_fades,
                               unsigned long long master_seed,
                               double d_target_m, double target, int threads);
long corner_sweep_positions(const corner_sweep* s);
long corner_sweep_realizations(const corner_sweep* s);
long corner_sweep_target_index(const corner_sweep* s);
double corner_sweep_separation(const corner_sweep* s, long k);
/* Outage of realization i at position k. */
double corner_sweep_outage(const corner_sweep* s, long i, long k);
int corner_sweep_line(const corner_sweep* s, long k, double* mean_out,
                      double* cdf_at_target, double* cond_mean_good,
                      double* cond_mean_bad);
/* Returns 1 if the outage population at position k is bimodal by the
 * low/high-vs-central mass test, 0 if not, -1 on error. */
int corner_sweep_bimodality(const corner_sweep* s, long k, double* mass_low,
                            double* mass_high, double* mass_mid);
void corner_sweep_free(corner_sweep* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CORNERSINR_H */
