#include "specfun.hpp"

namespace csinr {

namespace {

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 1.0)
    throw std::domain_error(
        "divergent integrand scale: path-loss exponent must exceed 1");
}

// Tail integral_theta^inf du/(1+u^alpha) for theta > 1.  Substituting
// u = s^{-1/(alpha-1)} maps it to
//   1/(alpha-1) * integral_0^{theta^{1-alpha}} ds / (1 + s^{alpha/(alpha-1)})
// whose integrand is bounded by 1 on a short interval, so the quadrature
// never sees the slowly decaying tail.
double g_tail(double alpha, double theta, const QuadratureSpec& spec) {
  const double upper = std::pow(theta, 1.0 - alpha);
  const double p = alpha / (alpha - 1.0);
  const double val = quad::integrate(
      [p](double s) { return 1.0 / (1.0 + std::pow(s, p)); }, 0.0, upper,
      spec);
  return val / (alpha - 1.0);
}

} // namespace

double g_inf(double alpha) {
  check_alpha(alpha);
  const double x = M_PI / alpha;
  return x / std::sin(x);
}

double g_func(double alpha, double theta, const QuadratureSpec& spec) {
  check_alpha(alpha);
  if (!std::isfinite(theta) || theta < 0.0)
    throw std::invalid_argument("g_func: theta must be finite and >= 0");
  if (spec.use_exact_branches && std::abs(alpha - 2.0) <= kAlphaBranchTol)
    return std::atan(theta);
  if (theta == 0.0) return 0.0;
  if (theta <= kThetaSplit) {
    return quad::integrate(
        [alpha](double u) { return 1.0 / (1.0 + std::pow(u, alpha)); }, 0.0,
        theta, spec);
  }
  return g_inf(alpha) - g_tail(alpha, theta, spec);
}

double h_func(double alpha, double delta, double theta,
              const QuadratureSpec& spec) {
  check_alpha(alpha);
  if (!std::isfinite(delta) || delta < 0.0)
    throw std::invalid_argument("h_func: delta must be finite and >= 0");
  if (!std::isfinite(theta) || theta < 0.0)
    throw std::invalid_argument("h_func: theta must be finite and >= 0");
  if (spec.use_exact_branches && std::abs(alpha - 2.0) <= kAlphaBranchTol)
    return 2.0 * std::atan(std::sqrt(theta / (1.0 + delta))) /
           std::sqrt(1.0 + delta);
  if (spec.use_exact_branches && delta == 0.0)
    return 2.0 * g_func(alpha, std::sqrt(theta), spec);
  if (theta == 0.0) return 0.0;
  // t = sqrt(u - delta) removes the endpoint singularity:
  //   integral_0^{sqrt(theta)} 2 dt / (1 + (t^2 + delta)^{alpha/2})
  const double half_alpha = 0.5 * alpha;
  return quad::integrate(
      [delta, half_alpha](double t) {
        return 2.0 / (1.0 + std::pow(t * t + delta, half_alpha));
      },
      0.0, std::sqrt(theta), spec);
}

double h_limit(double alpha, double delta, const QuadratureSpec& spec) {
  check_alpha(alpha);
  if (!std::isfinite(delta) || delta < 0.0)
    throw std::invalid_argument("h_limit: delta must be finite and >= 0");
  if (spec.use_exact_branches && std::abs(alpha - 2.0) <= kAlphaBranchTol)
    return M_PI / std::sqrt(1.0 + delta);
  if (spec.use_exact_branches && delta == 0.0) return 2.0 * g_inf(alpha);

  const double half_alpha = 0.5 * alpha;
  auto f = [delta, half_alpha](double t) {
    return 2.0 / (1.0 + std::pow(t * t + delta, half_alpha));
  };
  double theta = std::max(1.0, 16.0 * delta);
  double t_hi = std::sqrt(theta);
  double value = h_func(alpha, delta, theta, spec);
  for (int iter = 0; iter < 400; ++iter) {
    const double t_next = t_hi * std::sqrt(2.0); // doubles theta
    const double inc = quad::integrate(f, t_hi, t_next, spec);
    value += inc;
    t_hi = t_next;
    if (inc <= 1e-10 * value) break;
  }
  return value;
}

} // namespace csinr
