#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "analytic.hpp"
#include "design.hpp"
#include "scene.hpp"

using namespace csinr;

namespace {

const std::vector<double> kHalfLens = {200.0, 500.0, 1000.0,
                                       2000.0, 5000.0, 10000.0};

// Frozen from an independent prototype of the same model (12 digits).
const std::vector<double> kPStarSub = {0.0182860561566, 0.0123662409671,
                                       0.0108601101688, 0.0102073193554,
                                       0.0098475002419, 0.00973278242969};
constexpr double kPInfSub = 0.00962064227658;
const std::vector<double> kPStarUrb = {0.0159049017506, 0.00805909832827,
                                       0.0052149440989, 0.00375838618113,
                                       0.00290113311285, 0.00260952254517};
constexpr double kPInfUrb = 0.00222443592049;

Scenario suburban_scenario() { return Scenario{}; }

Scenario urban_scenario() {
  Scenario s;
  s.channel = ChannelParams::urban(1.68, -21.06, -6.801666847864555, 15.0);
  return s;
}

} // namespace

TEST_CASE("worst-case link construction for a protection range") {
  const Link far = default_design_link(100.0, -50.0);
  CHECK(far.rx.road == RoadAxis::horizontal);
  CHECK(far.rx.coord_m == -50.0);
  CHECK(far.tx.road == RoadAxis::vertical);
  CHECK(far.tx.coord_m == 50.0);

  const Link near = default_design_link(30.0, -50.0);
  CHECK(near.tx.road == RoadAxis::horizontal);
  CHECK(near.tx.coord_m == -20.0);

  const Link mirrored = default_design_link(30.0, 50.0);
  CHECK(mirrored.tx.road == RoadAxis::horizontal);
  CHECK(mirrored.tx.coord_m == 20.0);

  const Link at_junction = default_design_link(50.0, -50.0);
  CHECK(at_junction.tx.road == RoadAxis::horizontal);
  CHECK(at_junction.tx.coord_m == 0.0);

  CHECK_THROWS_AS(default_design_link(0.0, -50.0), std::invalid_argument);
  CHECK_THROWS_AS(default_design_link(-10.0, -50.0), std::invalid_argument);
}

TEST_CASE("transmit probabilities match the frozen references") {
  const Link link = default_design_link();
  const auto sub = design_sweep(suburban_scenario(), link, 0.9, kHalfLens);
  REQUIRE(sub.size() == kHalfLens.size());
  for (size_t i = 0; i < sub.size(); ++i) {
    CHECK(sub[i].half_len == kHalfLens[i]);
    CHECK(sub[i].p_star == doctest::Approx(kPStarSub[i]).epsilon(1e-10));
    CHECK(sub[i].p_inf == doctest::Approx(kPInfSub).epsilon(1e-10));
    CHECK(sub[i].feasible);
    CHECK_FALSE(sub[i].saturated);
  }

  const auto urb = design_sweep(urban_scenario(), link, 0.9, kHalfLens);
  for (size_t i = 0; i < urb.size(); ++i)
    CHECK(urb[i].p_star == doctest::Approx(kPStarUrb[i]).epsilon(1e-10));
  CHECK(urb.back().p_inf == doctest::Approx(kPInfUrb).epsilon(1e-10));

  // the suburban layout tolerates a higher duty cycle than the urban one
  CHECK(kPInfSub > kPInfUrb);
}

TEST_CASE("designed transmit probability hits the target exactly") {
  const Link link = default_design_link();
  for (const bool urban : {false, true}) {
    Scenario s = urban ? urban_scenario() : suburban_scenario();
    for (const double r : {200.0, 500.0, 10000.0}) {
      s.roads.half_len_x_m = s.roads.half_len_y_m = r;
      const DesignPoint d = optimal_tx_prob(s, link, 0.9);
      Scenario tuned = s;
      tuned.roads.tx_prob = d.p_star;
      const double pc = success_probability(tuned, link).p_c;
      CHECK(std::abs(pc - 0.9) < 1e-12);
    }
  }
}

TEST_CASE("transmit probability decreases toward the long-road asymptote") {
  const Link link = default_design_link();
  for (const bool urban : {false, true}) {
    const Scenario s = urban ? urban_scenario() : suburban_scenario();
    const auto pts = design_sweep(s, link, 0.9, kHalfLens);
    for (size_t i = 1; i < pts.size(); ++i)
      CHECK(pts[i].p_star < pts[i - 1].p_star);
    for (const auto& d : pts) CHECK(d.p_star > d.p_inf);
    CHECK(optimal_tx_prob_inf(s, link, 0.9) ==
          doctest::Approx(pts.back().p_inf).epsilon(1e-15));
  }
}

TEST_CASE("designed probability protects every closer grid transmitter") {
  // every evaluation-grid TX within the protection range of the designed
  // link must be at least as reliable as the design target
  for (const bool urban : {false, true}) {
    Scenario s = urban ? urban_scenario() : suburban_scenario();
    const Link worst = default_design_link(100.0, -50.0);
    s.roads.tx_prob = optimal_tx_prob(s, worst, 0.9).p_star;
    Link link;
    link.rx = worst.rx;
    for (int k = 1; k <= 100; ++k) { // grid separation is k meters here
      link.tx = tx_grid(k, 140, 140.0, link.rx.junction_dist());
      CAPTURE(urban);
      CAPTURE(k);
      CHECK(success_probability(s, link).p_c >= 0.9 - 1e-12);
    }
  }
}

TEST_CASE("stricter targets push the whole design curve down") {
  const Link link = default_design_link(100.0, -50.0);
  for (const bool urban : {false, true}) {
    const Scenario s = urban ? urban_scenario() : suburban_scenario();
    const auto loose = design_sweep(s, link, 0.8, kHalfLens);
    const auto mid = design_sweep(s, link, 0.9, kHalfLens);
    const auto tight = design_sweep(s, link, 0.95, kHalfLens);
    for (size_t i = 0; i < kHalfLens.size(); ++i) {
      CHECK(loose[i].p_star > mid[i].p_star);
      CHECK(mid[i].p_star > tight[i].p_star);
    }
  }
}

TEST_CASE("a target equal to the noise bound needs no silence at all") {
  const Scenario s = suburban_scenario();
  const Link link = default_design_link(100.0, -50.0);
  const double p_noint = success_probability(s, link).p_noint;
  const DesignPoint d = optimal_tx_prob(s, link, p_noint);
  CHECK(d.p_star_raw == 0.0);
  CHECK(d.p_star == 0.0);
  CHECK(d.feasible);
}

TEST_CASE("noise-limited scenarios are infeasible") {
  Scenario s = suburban_scenario();
  s.radio.noise_dbm = -50.0; // drowns the serving signal
  const DesignPoint d = optimal_tx_prob(s, default_design_link(), 0.9);
  CHECK_FALSE(d.feasible);
  CHECK(d.p_star_raw < 0.0);
  CHECK(d.p_star == 0.0);
}

TEST_CASE("negligible interference saturates the design at full duty cycle") {
  Scenario s = suburban_scenario();
  s.roads.intensity_x = 1e-9;
  s.roads.intensity_y = 1e-9;
  const DesignPoint d = optimal_tx_prob(s, default_design_link(), 0.9);
  CHECK(d.feasible);
  CHECK(d.saturated);
  CHECK(d.p_star_raw > 1.0);
  CHECK(d.p_star == 1.0);
}

TEST_CASE("empty roads leave any duty cycle acceptable when noise allows") {
  Scenario s = suburban_scenario();
  s.roads.intensity_x = 0.0;
  s.roads.intensity_y = 0.0;
  const DesignPoint ok = optimal_tx_prob(s, default_design_link(), 0.9);
  CHECK(ok.feasible);
  CHECK(ok.saturated);
  CHECK(ok.p_star == 1.0);

  // and nothing helps when noise alone already misses the target
  const DesignPoint bad =
      optimal_tx_prob(s, default_design_link(), 0.9999999);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.p_star == 0.0);
}

TEST_CASE("target reliability must be a probability strictly inside (0,1)") {
  const Scenario s = suburban_scenario();
  const Link link = default_design_link();
  CHECK_THROWS_AS(optimal_tx_prob(s, link, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_tx_prob(s, link, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_tx_prob(s, link, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(optimal_tx_prob_inf(s, link, 1.5), std::invalid_argument);
}
