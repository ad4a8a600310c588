#include "analytic.hpp"

#include <algorithm>
#include <functional>

namespace csinr {

namespace {

double rx_junction_dist(const Link& link) {
  return link.rx.junction_dist();
}

} // namespace

double beta_prime(const Scenario& s, const Link& link) {
  return s.radio.beta_lin() / pathloss(s.channel, link.tx, link.rx);
}

double zeta(const Scenario& s, const Link& link) {
  return std::pow(s.channel.a0_lin() * beta_prime(s, link),
                  1.0 / s.channel.alpha);
}

double x_factor(double alpha, double rx_dist, double half_len, double zeta,
                const QuadratureSpec& spec) {
  const double r = rx_dist, R = half_len;
  double v = g_func(alpha, (R + r) / zeta, spec);
  if (r <= R)
    v += g_func(alpha, (R - r) / zeta, spec);
  else
    v -= g_func(alpha, (r - R) / zeta, spec);
  return v;
}

double x_factor_inf(double alpha) { return 2.0 * g_inf(alpha); }

double y_factor_suburban(double alpha, double rx_dist, double half_len,
                         double zeta, const QuadratureSpec& spec) {
  const double d = (rx_dist / zeta) * (rx_dist / zeta);
  const double t = (half_len / zeta) * (half_len / zeta);
  return h_func(alpha, d, t, spec);
}

double y_factor_inf_suburban(double alpha, double rx_dist, double zeta,
                             const QuadratureSpec& spec) {
  const double d = (rx_dist / zeta) * (rx_dist / zeta);
  return h_limit(alpha, d, spec);
}

double y_factor_urban(double alpha, double rx_dist, double half_len,
                      double zeta, double delta_bp, double a0_lin,
                      double a0p_lin, const QuadratureSpec& spec) {
  if (!(a0_lin > 0.0) || !(a0p_lin > 0.0))
    throw std::invalid_argument("y_factor_urban: coefficients must be > 0");
  if (half_len < delta_bp)
    throw std::invalid_argument(
        "y_factor_urban: half_len must be >= breakpoint");
  const double r = rx_dist, R = half_len;
  if (r <= delta_bp) {
    // every interferer on the perpendicular road is within the corner zone
    return 2.0 *
           (g_func(alpha, (R + r) / zeta, spec) - g_func(alpha, r / zeta, spec));
  }
  // corner-zone stretch [0, delta] plus around-the-corner remainder
  const double kappa = std::pow(a0_lin / a0p_lin, 1.0 / alpha) * r;
  return 2.0 * (g_func(alpha, (delta_bp + r) / zeta, spec) -
                g_func(alpha, r / zeta, spec)) +
         (2.0 / kappa) * (g_func(alpha, kappa * R / zeta, spec) -
                          g_func(alpha, kappa * delta_bp / zeta, spec));
}

double y_factor_inf_urban(double alpha, double rx_dist, double zeta,
                          double delta_bp, double a0_lin, double a0p_lin,
                          const QuadratureSpec& spec) {
  if (!(a0_lin > 0.0) || !(a0p_lin > 0.0))
    throw std::invalid_argument("y_factor_inf_urban: coefficients must be > 0");
  const double r = rx_dist;
  if (r <= delta_bp)
    return 2.0 * (g_inf(alpha) - g_func(alpha, r / zeta, spec));
  const double kappa = std::pow(a0_lin / a0p_lin, 1.0 / alpha) * r;
  return 2.0 * (g_func(alpha, (delta_bp + r) / zeta, spec) -
                g_func(alpha, r / zeta, spec)) +
         (2.0 / kappa) *
             (g_inf(alpha) - g_func(alpha, kappa * delta_bp / zeta, spec));
}

namespace {

struct LinkScales {
  double bprime;
  double zeta;
  double r; // receiver distance from the junction
};

LinkScales link_scales(const Scenario& s, const Link& link) {
  LinkScales ls;
  ls.bprime = beta_prime(s, link);
  ls.zeta = zeta(s, link);
  ls.r = rx_junction_dist(link);
  return ls;
}

ReliabilityBreakdown assemble(const Scenario& s, double bprime, double fx,
                              double fy, double zeta_val) {
  ReliabilityBreakdown b;
  b.p_noint = std::exp(-bprime * s.radio.gamma0());
  const double p = s.roads.tx_prob;
  b.p_x = std::exp(-p * s.roads.intensity_x * zeta_val * fx);
  b.p_y = std::exp(-p * s.roads.intensity_y * zeta_val * fy);
  b.p_c = b.p_noint * b.p_x * b.p_y;
  return b;
}

} // namespace

ReliabilityBreakdown success_probability(const Scenario& s, const Link& link,
                                         const QuadratureSpec& spec) {
  const LinkScales ls = link_scales(s, link);
  const double alpha = s.channel.alpha;
  const double fx = x_factor(alpha, ls.r, s.roads.half_len_x_m, ls.zeta, spec);
  double fy;
  if (s.channel.kind == Environment::suburban)
    fy = y_factor_suburban(alpha, ls.r, s.roads.half_len_y_m, ls.zeta, spec);
  else
    fy = y_factor_urban(alpha, ls.r, s.roads.half_len_y_m, ls.zeta,
                        s.channel.breakpoint_m, s.channel.a0_lin(),
                        s.channel.a0p_lin(), spec);
  return assemble(s, ls.bprime, fx, fy, ls.zeta);
}

ReliabilityBreakdown success_probability_infinite(const Scenario& s,
                                                  const Link& link,
                                                  const QuadratureSpec& spec) {
  const LinkScales ls = link_scales(s, link);
  const double alpha = s.channel.alpha;
  const double fx = x_factor_inf(alpha);
  double fy;
  if (s.channel.kind == Environment::suburban)
    fy = y_factor_inf_suburban(alpha, ls.r, ls.zeta, spec);
  else
    fy = y_factor_inf_urban(alpha, ls.r, ls.zeta, s.channel.breakpoint_m,
                            s.channel.a0_lin(), s.channel.a0p_lin(), spec);
  return assemble(s, ls.bprime, fx, fy, ls.zeta);
}

namespace {

// Adaptive Simpson with Richardson correction; recursion depth is generous
// because segments are pre-split at the integrand kinks.
double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  const double m1 = 0.5 * (a + m), m2 = 0.5 * (m + b);
  const double f1 = f(m1), f2 = f(m2);
  const double left = (m - a) / 6.0 * (fa + 4.0 * f1 + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * f2 + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, m, fm, m1, f1, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, m2, f2, right, 0.5 * tol, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               double rel_tol) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(rel_tol * std::abs(whole), 1e-16);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

// integral over [a, b] split at interior kink points
double simpson_split(const std::function<double(double)>& f, double a, double b,
                     std::vector<double> kinks, double rel_tol) {
  std::vector<double> pts{a};
  std::sort(kinks.begin(), kinks.end());
  for (double k : kinks)
    if (k > a && k < b) pts.push_back(k);
  pts.push_back(b);
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    total += simpson(f, pts[i], pts[i + 1], rel_tol);
  return total;
}

} // namespace

ReliabilityBreakdown success_probability_oracle(const Scenario& s,
                                                const Link& link,
                                                double rel_tol) {
  const double alpha = s.channel.alpha;
  const double bprime = beta_prime(s, link);
  const double za = s.channel.a0_lin() * bprime; // zeta^alpha
  const double rx = -rx_junction_dist(link);     // receiver x coordinate
  const double r = rx_junction_dist(link);
  const bool urban = s.channel.kind == Environment::urban;
  const double delta = s.channel.breakpoint_m;
  const double ratio = s.channel.a0_lin() / s.channel.a0p_lin();

  // receiver road: line-of-sight along the road in both environments
  auto fx = [alpha, za, rx](double t) {
    const double d = std::abs(t - rx);
    return 1.0 / (1.0 + std::pow(d, alpha) / za);
  };
  // perpendicular road
  auto fy = [alpha, za, r, urban, delta, ratio](double t) {
    const double at = std::abs(t);
    double q;
    if (!urban) {
      q = std::pow(t * t + r * r, 0.5 * alpha) / za;
    } else if (std::min(at, r) <= delta) {
      q = std::pow(at + r, alpha) / za;
    } else {
      q = ratio * std::pow(at * r, alpha) / za;
    }
    return 1.0 / (1.0 + q);
  };

  const double rx_clamped =
      std::clamp(rx, -s.roads.half_len_x_m, s.roads.half_len_x_m);
  const double ix = simpson_split(fx, -s.roads.half_len_x_m,
                                  s.roads.half_len_x_m, {rx_clamped}, rel_tol);
  std::vector<double> ykinks;
  if (urban) ykinks = {-delta, delta};
  const double iy = simpson_split(fy, -s.roads.half_len_y_m,
                                  s.roads.half_len_y_m, ykinks, rel_tol);

  ReliabilityBreakdown b;
  const double p = s.roads.tx_prob;
  b.p_noint = std::exp(-bprime * s.radio.gamma0());
  b.p_x = std::exp(-p * s.roads.intensity_x * ix);
  b.p_y = std::exp(-p * s.roads.intensity_y * iy);
  b.p_c = b.p_noint * b.p_x * b.p_y;
  return b;
}

} // namespace csinr
