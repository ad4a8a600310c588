#include "design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csinr {

namespace {

// E such that p_c = p_noint * exp(-p * E), plus p_noint itself
struct Exponent {
  double e;
  double p_noint;
};

Exponent interference_exponent(const Scenario& s, const Link& link,
                               bool infinite, const QuadratureSpec& spec) {
  const double alpha = s.channel.alpha;
  const double bprime = beta_prime(s, link);
  const double z = zeta(s, link);
  const double r = link.rx.junction_dist();
  double fx, fy;
  if (infinite) {
    fx = x_factor_inf(alpha);
    fy = (s.channel.kind == Environment::suburban)
             ? y_factor_inf_suburban(alpha, r, z, spec)
             : y_factor_inf_urban(alpha, r, z, s.channel.breakpoint_m,
                                  s.channel.a0_lin(), s.channel.a0p_lin(),
                                  spec);
  } else {
    fx = x_factor(alpha, r, s.roads.half_len_x_m, z, spec);
    fy = (s.channel.kind == Environment::suburban)
             ? y_factor_suburban(alpha, r, s.roads.half_len_y_m, z, spec)
             : y_factor_urban(alpha, r, s.roads.half_len_y_m, z,
                              s.channel.breakpoint_m, s.channel.a0_lin(),
                              s.channel.a0p_lin(), spec);
  }
  Exponent out;
  out.e = z * (s.roads.intensity_x * fx + s.roads.intensity_y * fy);
  out.p_noint = std::exp(-bprime * s.radio.gamma0());
  return out;
}

double solve(const Exponent& ex, double target, bool& feasible,
             bool& saturated) {
  feasible = ex.p_noint >= target;
  if (ex.e <= 0.0) {
    // no interference on either road: any transmit probability works when
    // noise alone meets the target
    saturated = true;
    return feasible ? std::numeric_limits<double>::infinity() : 0.0;
  }
  const double raw = std::log(ex.p_noint / target) / ex.e;
  saturated = raw > 1.0;
  return raw;
}

} // namespace

DesignPoint optimal_tx_prob(const Scenario& s, const Link& link, double target,
                            const QuadratureSpec& spec) {
  if (!(target > 0.0) || !(target < 1.0))
    throw std::invalid_argument("target reliability must lie in (0, 1)");
  DesignPoint d;
  d.half_len = s.roads.half_len_x_m;
  const Exponent ex = interference_exponent(s, link, false, spec);
  d.p_star_raw = solve(ex, target, d.feasible, d.saturated);
  d.p_star = std::clamp(d.p_star_raw, 0.0, 1.0);
  if (std::isinf(d.p_star_raw)) d.p_star_raw = 1.0;
  d.p_inf = optimal_tx_prob_inf(s, link, target, spec);
  return d;
}

double optimal_tx_prob_inf(const Scenario& s, const Link& link, double target,
                           const QuadratureSpec& spec) {
  if (!(target > 0.0) || !(target < 1.0))
    throw std::invalid_argument("target reliability must lie in (0, 1)");
  const Exponent ex = interference_exponent(s, link, true, spec);
  bool feasible = false, saturated = false;
  const double raw = solve(ex, target, feasible, saturated);
  return std::isinf(raw) ? 1.0 : raw;
}

std::vector<DesignPoint> design_sweep(const Scenario& s, const Link& link,
                                      double target,
                                      const std::vector<double>& half_lens,
                                      const QuadratureSpec& spec) {
  std::vector<DesignPoint> out;
  out.reserve(half_lens.size());
  Scenario sc = s;
  for (double R : half_lens) {
    sc.roads.half_len_x_m = R;
    sc.roads.half_len_y_m = R;
    DesignPoint d = optimal_tx_prob(sc, link, target, spec);
    d.half_len = R;
    out.push_back(d);
  }
  return out;
}

Link default_design_link(double d_target, double rx_coord) {
  if (!(d_target > 0.0))
    throw std::invalid_argument("protection range must be > 0");
  Link link;
  link.rx = Position::horizontal(rx_coord);
  const double r = std::abs(rx_coord);
  if (d_target > r) {
    // across the junction: worst path loss at that Manhattan distance
    link.tx = Position::vertical(d_target - r);
  } else {
    const double toward = rx_coord < 0.0 ? rx_coord + d_target
                                         : rx_coord - d_target;
    link.tx = Position::horizontal(toward);
  }
  return link;
}

} // namespace csinr
