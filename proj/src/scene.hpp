#pragma once

// Geometry, radio and traffic parameters, and the two path-loss models
// (suburban power law, urban three-branch virtual-source model) for a pair
// of orthogonal roads crossing at the origin.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace csinr {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

enum class RoadAxis : uint8_t { horizontal, vertical };

// A node location constrained to one of the two road axes.  The junction is
// the origin and may carry either tag.
struct Position {
  RoadAxis road = RoadAxis::horizontal;
  double coord_m = 0.0; // signed offset from the junction along the axis

  static Position horizontal(double x) { return {RoadAxis::horizontal, x}; }
  static Position vertical(double y) { return {RoadAxis::vertical, y}; }

  double junction_dist() const { return std::abs(coord_m); }

  bool same_point(const Position& o) const {
    if (road == o.road) return coord_m == o.coord_m;
    return coord_m == 0.0 && o.coord_m == 0.0; // junction, either tag
  }
};

struct RadioParams {
  double tx_power_dbm = 20.0;
  double noise_dbm = -99.0;
  double sinr_threshold_db = 8.0;

  double beta_lin() const { return db_to_lin(sinr_threshold_db); }
  // noise-to-power ratio appearing in the SINR denominator
  double gamma0() const { return db_to_lin(noise_dbm - tx_power_dbm); }
};

enum class Environment : uint8_t { suburban, urban };

// Path-loss parameterization.  a0p_db and breakpoint_m are meaningful only
// for the urban model.  The dB coefficients are pure gains of the linear
// model coefficients (distances in meters).
struct ChannelParams {
  Environment kind = Environment::suburban;
  double alpha = 2.0;
  double a0_db = -17.86;
  double a0p_db = 0.0;
  double breakpoint_m = 0.0;

  double a0_lin() const { return db_to_lin(a0_db); }
  double a0p_lin() const { return db_to_lin(a0p_db); }

  static ChannelParams suburban(double alpha, double a0_db) {
    ChannelParams c;
    c.kind = Environment::suburban;
    c.alpha = alpha;
    c.a0_db = a0_db;
    return c;
  }
  static ChannelParams urban(double alpha, double a0_db, double a0p_db,
                             double breakpoint_m) {
    ChannelParams c;
    c.kind = Environment::urban;
    c.alpha = alpha;
    c.a0_db = a0_db;
    c.a0p_db = a0p_db;
    c.breakpoint_m = breakpoint_m;
    return c;
  }
};

// Bounded road segments [-half_len, half_len] with per-road vehicle
// intensities and the Aloha transmit probability (thinning).
struct RoadNetwork {
  double half_len_x_m = 200.0;
  double half_len_y_m = 200.0;
  double intensity_x = 0.01; // vehicles per meter
  double intensity_y = 0.01;
  double tx_prob = 0.02;
};

struct Link {
  Position tx = Position::vertical(50.0);
  Position rx = Position::horizontal(-50.0); // must stay on the horizontal road
};

struct Scenario {
  RadioParams radio;
  ChannelParams channel;
  RoadNetwork roads;
};

struct Diagnostic {
  bool warning = false; // false = hard violation
  std::string code;
  std::string message;
};

// Empty result means the scenario is usable.  Warnings (currently only the
// urban coefficient condition) are advisory and do not block computation.
std::vector<Diagnostic> validate_scenario(const Scenario& s);

inline bool has_violation(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (!d.warning) return true;
  return false;
}

// Wanted/interfering-signal regime of a transmitter relative to an RX on the
// horizontal road.
enum class SignalRegion : uint8_t { los, wlos, nlos };

const char* region_name(SignalRegion r);

// Linear power gain between x and rx.  rx must lie on the horizontal road;
// coincident points have no defined gain.  Throws std::invalid_argument /
// std::domain_error on precondition violations.
double pathloss(const ChannelParams& ch, const Position& x, const Position& rx);

// Which branch pathloss() would take for this pair.
SignalRegion pathloss_region(const ChannelParams& ch, const Position& x,
                             const Position& rx);

// k-th TX position of the evaluation walk: first along the horizontal road
// from the RX to the junction, then up the vertical road, with Manhattan
// separation exactly k*d_max/m_e.  Coordinates assume the RX sits at
// (-rx_dist, 0); mirror the horizontal coordinate for an RX at +rx_dist.
Position tx_grid(int k, int m_e, double d_max_m, double rx_dist_m);

} // namespace csinr
