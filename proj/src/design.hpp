#pragma once

// Inverse problem: the conditional success probability is log-linear in the
// transmit probability, p_c(p) = p_noint * exp(-p * E) with
// E = zeta * (lambda_x * Fx + lambda_y * Fy), so the largest p meeting a
// target reliability is p* = ln(p_noint / target) / E.

#include <vector>

#include "analytic.hpp"

namespace csinr {

struct DesignPoint {
  double half_len = 0.0;
  double p_star_raw = 0.0; // unclamped solution, may leave [0, 1]
  double p_star = 0.0;     // clamped to [0, 1]
  double p_inf = 0.0;      // infinite-road asymptote (unclamped)
  bool feasible = false;   // target reachable with some p in (0, 1]
  bool saturated = false;  // raw solution exceeded 1
};

DesignPoint optimal_tx_prob(const Scenario& s, const Link& link, double target,
                            const QuadratureSpec& spec = {});
double optimal_tx_prob_inf(const Scenario& s, const Link& link, double target,
                           const QuadratureSpec& spec = {});

// One design point per half-length, with both roads set to that half-length.
std::vector<DesignPoint> design_sweep(const Scenario& s, const Link& link,
                                      double target,
                                      const std::vector<double>& half_lens,
                                      const QuadratureSpec& spec = {});

// Canonical worst-case pair for a protection range d (Manhattan distance):
// receiver at rx_coord on the horizontal road, transmitter across the
// junction when d exceeds the receiver's junction distance, on the same
// road toward the junction otherwise.
Link default_design_link(double d_target = 100.0, double rx_coord = -50.0);

} // namespace csinr
