#pragma once

// Closed-form link reliability under slotted-ALOHA interference from two
// perpendicular vehicle streams.  The success probability conditioned on
// the link geometry factorizes as
//
//   p_c = p_noint * p_x * p_y
//
// where p_noint covers noise alone and each road contributes
// exp(-tx_prob * lambda * zeta * factor) with a dimensionless factor built
// from g/h integrals.  zeta = (a0 * beta / pathloss(tx, rx))^(1/alpha) is
// the distance at which an interferer's mean power matches the threshold-
// scaled serving power.

#include "scene.hpp"
#include "specfun.hpp"

namespace csinr {

struct ReliabilityBreakdown {
  double p_noint = 0.0;
  double p_x = 0.0;
  double p_y = 0.0;
  double p_c = 0.0;
};

// threshold referred to the serving link: beta / pathloss(tx, rx)
double beta_prime(const Scenario& s, const Link& link);
// interference range scale of the link
double zeta(const Scenario& s, const Link& link);

// Factor for the road carrying the receiver (interferers are in line of
// sight of the receiver in both environments).  rx_dist is the receiver's
// distance from the junction, half_len the road half-length.
double x_factor(double alpha, double rx_dist, double half_len, double zeta,
                const QuadratureSpec& spec = {});
double x_factor_inf(double alpha);

// Factors for the perpendicular road.
double y_factor_suburban(double alpha, double rx_dist, double half_len,
                         double zeta, const QuadratureSpec& spec = {});
double y_factor_inf_suburban(double alpha, double rx_dist, double zeta,
                             const QuadratureSpec& spec = {});
double y_factor_urban(double alpha, double rx_dist, double half_len,
                      double zeta, double delta_bp, double a0_lin,
                      double a0p_lin, const QuadratureSpec& spec = {});
double y_factor_inf_urban(double alpha, double rx_dist, double zeta,
                          double delta_bp, double a0_lin, double a0p_lin,
                          const QuadratureSpec& spec = {});

// Closed-form reliability for finite roads and for the infinite-road limit.
ReliabilityBreakdown success_probability(const Scenario& s, const Link& link,
                                         const QuadratureSpec& spec = {});
ReliabilityBreakdown success_probability_infinite(
    const Scenario& s, const Link& link, const QuadratureSpec& spec = {});

// Independent check: evaluates the per-road Laplace-functional integrals
// directly with adaptive Simpson quadrature on the raw integrand, splitting
// only at known kinks.  Shares no code with the closed forms.
ReliabilityBreakdown success_probability_oracle(const Scenario& s,
                                                const Link& link,
                                                double rel_tol = 1e-9);

} // namespace csinr
