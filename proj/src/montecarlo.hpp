#pragma once

// Monte Carlo estimation of the meta distribution: the population of
// conditional success probabilities across interference realizations.
// Realization i is fully determined by (master_seed, i), so estimates are
// bit-identical for any thread count; parallel workers only fill disjoint
// slots of preallocated arrays and all reductions run sequentially.

#include <cstdint>
#include <optional>
#include <vector>

#include "analytic.hpp"
#include "rng.hpp"

namespace csinr {

enum class McMode : uint8_t { exact, fading };

struct McOptions {
  // 0 = auto: CORNER_SINR_THREADS if set, otherwise hardware concurrency
  int threads = 0;
};

int resolve_threads(int requested);

// Positions of actively transmitting interferers (thinned Poisson process).
struct PppRealization {
  std::vector<double> xs; // horizontal-road coordinates
  std::vector<double> ys; // vertical-road coordinates
};

PppRealization sample_realization(const Scenario& s, uint64_t master_seed,
                                  uint64_t index);

// Success probability conditioned on the interferer set: exact averages the
// fading analytically, fading draws n_fades joint unit-exponential fade
// vectors (serving fade first, then horizontal then vertical interferers)
// and counts SINR threshold crossings.
double conditional_success_exact(const Scenario& s, const Link& link,
                                 const PppRealization& rz);
double conditional_success_fading(const Scenario& s, const Link& link,
                                  const PppRealization& rz, RngStream& fades,
                                  int n_fades);

struct BetaFit {
  double a = 0.0;
  double b = 0.0;
};

// Moment-matched beta distribution; absent when the moment pair is not
// realizable by any beta law.
std::optional<BetaFit> beta_fit(double moment1, double moment2);

struct MetaEstimate {
  std::vector<double> samples;     // conditional success, realization order
  std::vector<uint64_t> histogram; // uniform bins on [0, 1]
  double moment1 = 0.0;
  double moment2 = 0.0;
  std::optional<BetaFit> beta;

  // fraction of realizations whose conditional success is >= p
  double cdf_at(double p) const;
};

MetaEstimate meta_distribution(const Scenario& s, const Link& link,
                               long n_ppp, McMode mode, int n_fades,
                               int n_bins, uint64_t master_seed,
                               const McOptions& opt = {});

struct FineGrainedLine {
  double separation_m = 0.0;
  double mean_out = 0.0;
  double cdf_at_target = 0.0;  // fraction of realizations with outage <= 1-target
  double cond_mean_good = 0.0; // mean outage, realizations meeting the target
  double cond_mean_bad = 0.0;  // mean outage, realizations missing it
};

struct FineGrainedResult {
  std::vector<double> separations;         // Manhattan TX-RX distances
  std::vector<std::vector<double>> outage; // [realization][position]
  std::vector<uint8_t> meets_target;       // classification at target_index
  std::vector<FineGrainedLine> lines;
  int target_index = 0; // position whose separation is nearest d_target
  double target = 0.9;  // reliability target used for the classification
};

// Walks the TX over the evaluation grid while every position sees the same
// realization stream, so per-realization outage curves are comparable
// across separations.
FineGrainedResult fine_grained_sweep(const Scenario& s, const Position& rx,
                                     double d_max, int m_e, long n_ppp,
                                     McMode mode, int n_fades,
                                     uint64_t master_seed,
                                     double d_target = 100.0,
                                     double target = 0.9,
                                     const McOptions& opt = {});

struct BimodalityStat {
  double mass_low = 0.0;  // outage below 0.05
  double mass_high = 0.0; // outage above twice the allowed outage
  double mass_mid = 0.0;  // outage within 0.05 of the mean
  bool bimodal = false;   // low + high mass dominates the central mass
};

BimodalityStat bimodality_statistic(const std::vector<double>& outages,
                                    double target);

} // namespace csinr
