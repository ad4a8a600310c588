#include "scene.hpp"

#include <cmath>
#include <stdexcept>

namespace csinr {

const char* region_name(SignalRegion r) {
  switch (r) {
    case SignalRegion::los: return "LOS";
    case SignalRegion::wlos: return "WLOS";
    case SignalRegion::nlos: return "NLOS";
  }
  return "?";
}

std::vector<Diagnostic> validate_scenario(const Scenario& s) {
  std::vector<Diagnostic> out;
  auto violation = [&](const char* code, std::string msg) {
    out.push_back({false, code, std::move(msg)});
  };
  auto warning = [&](const char* code, std::string msg) {
    out.push_back({true, code, std::move(msg)});
  };

  const auto& ch = s.channel;
  if (!(ch.alpha > 1.0))
    violation("alpha", "path loss exponent must exceed 1, got " +
                           std::to_string(ch.alpha));

  const auto& rd = s.roads;
  if (!(rd.half_len_x_m > 0.0) || !(rd.half_len_y_m > 0.0))
    violation("half_len", "road half-lengths must be positive");
  if (rd.intensity_x < 0.0 || rd.intensity_y < 0.0)
    violation("intensity", "vehicle intensities must be nonnegative");
  if (!(rd.tx_prob >= 0.0 && rd.tx_prob <= 1.0))
    violation("tx_prob range", "transmit probability must lie in [0,1], got " +
                                   std::to_string(rd.tx_prob));

  if (ch.kind == Environment::urban) {
    if (!(ch.breakpoint_m > 0.0))
      violation("breakpoint", "urban break-point distance must be positive");
    else if (std::min(rd.half_len_x_m, rd.half_len_y_m) < ch.breakpoint_m)
      violation("breakpoint",
                "road half-lengths must be at least the break-point distance " +
                    std::to_string(ch.breakpoint_m) + " m");
    // Coefficient condition keeping the NLOS gain below the WLOS gain at the
    // break point; the model stays evaluable if it fails, so only warn.
    if (ch.breakpoint_m > 0.0 &&
        !(ch.a0p_lin() <
          ch.a0_lin() * std::pow(ch.breakpoint_m / 2.0, ch.alpha)))
      warning("coefficient",
              "NLOS coefficient does not satisfy a0' < a0*(breakpoint/2)^alpha");
  }
  return out;
}

static void check_rx(const Position& rx) {
  // The junction (coordinate 0) is acceptable under either tag.
  if (rx.road != RoadAxis::horizontal && rx.coord_m != 0.0)
    throw std::invalid_argument("receiver must lie on the horizontal road");
}

SignalRegion pathloss_region(const ChannelParams& ch, const Position& x,
                             const Position& rx) {
  check_rx(rx);
  if (ch.kind == Environment::suburban || x.road == RoadAxis::horizontal)
    return SignalRegion::los;
  if (std::min(x.junction_dist(), rx.junction_dist()) > ch.breakpoint_m)
    return SignalRegion::nlos;
  return SignalRegion::wlos;
}

double pathloss(const ChannelParams& ch, const Position& x, const Position& rx) {
  check_rx(rx);
  if (x.same_point(rx))
    throw std::domain_error("zero distance between transmitter and receiver");

  const double alpha = ch.alpha;
  if (ch.kind == Environment::suburban) {
    // Euclidean distance; the two axes are orthogonal.
    const double d = (x.road == RoadAxis::horizontal)
                         ? std::abs(x.coord_m - rx.coord_m)
                         : std::hypot(x.coord_m, rx.coord_m);
    return ch.a0_lin() * std::pow(d, -alpha);
  }

  switch (pathloss_region(ch, x, rx)) {
    case SignalRegion::los:
      return ch.a0_lin() * std::pow(std::abs(x.coord_m - rx.coord_m), -alpha);
    case SignalRegion::nlos:
      return ch.a0p_lin() *
             std::pow(x.junction_dist() * rx.junction_dist(), -alpha);
    case SignalRegion::wlos:
    default:
      // Manhattan distance through the junction.
      return ch.a0_lin() *
             std::pow(x.junction_dist() + rx.junction_dist(), -alpha);
  }
}

Position tx_grid(int k, int m_e, double d_max_m, double rx_dist_m) {
  if (m_e <= 0) throw std::out_of_range("evaluation count must be positive");
  if (k < 1 || k > m_e)
    throw std::out_of_range("grid index " + std::to_string(k) +
                            " outside 1.." + std::to_string(m_e));
  if (!(d_max_m > 0.0)) throw std::out_of_range("d_max must be positive");
  if (rx_dist_m < 0.0) throw std::out_of_range("rx distance must be nonnegative");

  const double coord = k * d_max_m / m_e - rx_dist_m;
  const int m_x = static_cast<int>(std::floor(m_e * rx_dist_m / d_max_m));
  return (k <= m_x) ? Position::horizontal(coord) : Position::vertical(coord);
}

} // namespace csinr
