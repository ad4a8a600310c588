#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "analytic.hpp"
#include "scene.hpp"
#include "specfun.hpp"

using namespace csinr;

namespace {

// Reference values computed with an arbitrary-precision prototype of the
// same model (20 significant digits), frozen here.
constexpr double kBetaPrimeSub = 1927391.7883288590365;
constexpr double kZetaSub = 177.61719292909023584;
constexpr double kPNointSub = 0.99999757356044299862;
constexpr double kXFactorSub = 1.6543786881524562306;
constexpr double kYFactorSub = 1.589486778091447167;
constexpr double kPcSub = 0.89115608960432943436;

constexpr double kBetaPrimeUrb = 15442083.602031165849;
constexpr double kZetaUrb = 1060.2790448692374243;
constexpr double kPNointUrb = 0.99998055975750631607;
constexpr double kXFactorUrb = 0.36795789269861154853;
constexpr double kYFactorUrb = 0.25670625143576657742;
constexpr double kPcUrb = 0.87591773624386531021;

Scenario suburban_scenario(double alpha = 2.0) {
  Scenario s;
  s.channel = ChannelParams::suburban(alpha, -37.86 + 10.0 * alpha);
  return s;
}

Scenario urban_scenario() {
  Scenario s;
  s.channel = ChannelParams::urban(1.68, -21.06, -6.801666847864555, 15.0);
  return s;
}

void check_against_oracle(const Scenario& s, const Link& link) {
  const ReliabilityBreakdown closed = success_probability(s, link);
  const ReliabilityBreakdown ref = success_probability_oracle(s, link);
  CHECK(closed.p_x == doctest::Approx(ref.p_x).epsilon(1e-7));
  CHECK(closed.p_y == doctest::Approx(ref.p_y).epsilon(1e-7));
  CHECK(closed.p_c == doctest::Approx(ref.p_c).epsilon(1e-7));
}

} // namespace

TEST_CASE("link scales, suburban") {
  const Scenario s = suburban_scenario();
  const Link link;
  CHECK(beta_prime(s, link) == doctest::Approx(kBetaPrimeSub).epsilon(1e-12));
  CHECK(zeta(s, link) == doctest::Approx(kZetaSub).epsilon(1e-12));
  CHECK(zeta(s, link) ==
        doctest::Approx(std::pow(s.channel.a0_lin() * beta_prime(s, link),
                                 1.0 / s.channel.alpha))
            .epsilon(1e-14));
}

TEST_CASE("link scales, urban") {
  const Scenario s = urban_scenario();
  const Link link;
  CHECK(beta_prime(s, link) == doctest::Approx(kBetaPrimeUrb).epsilon(1e-12));
  CHECK(zeta(s, link) == doctest::Approx(kZetaUrb).epsilon(1e-12));
}

TEST_CASE("road factors match the frozen references") {
  CHECK(x_factor(2.0, 50.0, 200.0, kZetaSub) ==
        doctest::Approx(kXFactorSub).epsilon(1e-12));
  CHECK(y_factor_suburban(2.0, 50.0, 200.0, kZetaSub) ==
        doctest::Approx(kYFactorSub).epsilon(1e-12));

  const Scenario u = urban_scenario();
  CHECK(x_factor(1.68, 50.0, 200.0, kZetaUrb) ==
        doctest::Approx(kXFactorUrb).epsilon(1e-11));
  CHECK(y_factor_urban(1.68, 50.0, 200.0, kZetaUrb, 15.0,
                       u.channel.a0_lin(), u.channel.a0p_lin()) ==
        doctest::Approx(kYFactorUrb).epsilon(1e-11));
}

TEST_CASE("infinite-road factor limits") {
  CHECK(x_factor_inf(2.0) ==
        doctest::Approx(3.141592653589793).epsilon(1e-14));
  CHECK(x_factor_inf(1.68) ==
        doctest::Approx(2.0 * g_inf(1.68)).epsilon(1e-14));

  // receiver-road factor saturates toward the limit as the road grows
  const double x200 = x_factor(1.68, 50.0, 200.0, kZetaUrb);
  const double x1e4 = x_factor(1.68, 50.0, 1e4, kZetaUrb);
  const double x1e7 = x_factor(1.68, 50.0, 1e7, kZetaUrb);
  CHECK(x200 < x1e4);
  CHECK(x1e4 < x1e7);
  CHECK(x1e7 < x_factor_inf(1.68));
  CHECK(x1e7 == doctest::Approx(x_factor_inf(1.68)).epsilon(1e-2));

  // suburban perpendicular road: alpha = 2 limit has a closed form
  const double delta = (50.0 / kZetaSub) * (50.0 / kZetaSub);
  CHECK(y_factor_inf_suburban(2.0, 50.0, kZetaSub) ==
        doctest::Approx(3.141592653589793 / std::sqrt(1.0 + delta))
            .epsilon(1e-12));
  CHECK(y_factor_suburban(2.0, 50.0, 200.0, kZetaSub) <
        y_factor_inf_suburban(2.0, 50.0, kZetaSub));

  const Scenario u = urban_scenario();
  const double a0 = u.channel.a0_lin(), a0p = u.channel.a0p_lin();
  const double y200 = y_factor_urban(1.68, 50.0, 200.0, kZetaUrb, 15.0, a0, a0p);
  const double y1e7 = y_factor_urban(1.68, 50.0, 1e7, kZetaUrb, 15.0, a0, a0p);
  const double yinf = y_factor_inf_urban(1.68, 50.0, kZetaUrb, 15.0, a0, a0p);
  CHECK(y200 < y1e7);
  CHECK(y1e7 < yinf);
  CHECK(y1e7 == doctest::Approx(yinf).epsilon(1e-2));
}

TEST_CASE("receiver-road factor is continuous where the receiver passes a road end") {
  const double lo = x_factor(1.68, 200.0 - 1e-7, 200.0, kZetaUrb);
  const double at = x_factor(1.68, 200.0, 200.0, kZetaUrb);
  const double hi = x_factor(1.68, 200.0 + 1e-7, 200.0, kZetaUrb);
  CHECK(lo == doctest::Approx(at).epsilon(1e-6));
  CHECK(hi == doctest::Approx(at).epsilon(1e-6));
  // beyond the end the factor decays as the receiver moves away
  CHECK(x_factor(1.68, 300.0, 200.0, kZetaUrb) < at);
}

TEST_CASE("urban perpendicular factor rejects unusable parameters") {
  CHECK_THROWS_AS(
      y_factor_urban(1.68, 50.0, 200.0, kZetaUrb, 15.0, 0.0, 0.2),
      std::invalid_argument);
  CHECK_THROWS_AS(
      y_factor_urban(1.68, 50.0, 200.0, kZetaUrb, 15.0, 0.008, -1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      y_factor_urban(1.68, 50.0, 10.0, kZetaUrb, 15.0, 0.008, 0.2),
      std::invalid_argument);
}

TEST_CASE("success probability, suburban reference point") {
  const Scenario s = suburban_scenario();
  const Link link;
  const ReliabilityBreakdown bd = success_probability(s, link);
  CHECK(bd.p_noint == doctest::Approx(kPNointSub).epsilon(1e-13));
  CHECK(bd.p_noint ==
        doctest::Approx(std::exp(-beta_prime(s, link) * s.radio.gamma0()))
            .epsilon(1e-14));
  CHECK(bd.p_c == doctest::Approx(kPcSub).epsilon(1e-12));
  CHECK(bd.p_c ==
        doctest::Approx(bd.p_noint * bd.p_x * bd.p_y).epsilon(1e-15));
  // per-road attenuation wiring
  const double zeta_v = zeta(s, link);
  CHECK(bd.p_x ==
        doctest::Approx(std::exp(-s.roads.tx_prob * s.roads.intensity_x *
                                 zeta_v * kXFactorSub))
            .epsilon(1e-11));
  CHECK(bd.p_y ==
        doctest::Approx(std::exp(-s.roads.tx_prob * s.roads.intensity_y *
                                 zeta_v * kYFactorSub))
            .epsilon(1e-11));
}

TEST_CASE("success probability, urban reference point") {
  const Scenario s = urban_scenario();
  const ReliabilityBreakdown bd = success_probability(s, Link{});
  CHECK(bd.p_noint == doctest::Approx(kPNointUrb).epsilon(1e-13));
  CHECK(bd.p_c == doctest::Approx(kPcUrb).epsilon(1e-11));
}

TEST_CASE("longer roads only lower the success probability") {
  for (const bool urban : {false, true}) {
    Scenario s = urban ? urban_scenario() : suburban_scenario();
    const Link link;
    double prev = 1.0;
    for (const double r : {200.0, 500.0, 2000.0, 10000.0}) {
      s.roads.half_len_x_m = s.roads.half_len_y_m = r;
      const double pc = success_probability(s, link).p_c;
      CHECK(pc < prev);
      prev = pc;
    }
    CHECK(success_probability_infinite(s, link).p_c < prev);
  }
}

TEST_CASE("success probability falls as any pressure knob rises") {
  for (const bool urban : {false, true}) {
    const Scenario base = urban ? urban_scenario() : suburban_scenario();
    const Link link;

    double prev = 1.1;
    for (double p : {0.0, 0.02, 0.1, 0.5, 1.0}) {
      Scenario s = base;
      s.roads.tx_prob = p;
      const double pc = success_probability(s, link).p_c;
      CHECK(pc >= 0.0);
      CHECK(pc <= 1.0);
      CHECK(pc <= prev);
      prev = pc;
    }
    prev = 1.1;
    for (double lam : {0.0, 0.01, 0.05, 0.2}) {
      Scenario s = base;
      s.roads.intensity_x = lam;
      CHECK(success_probability(s, link).p_c < prev);
      prev = success_probability(s, link).p_c;
    }
    prev = 1.1;
    for (double lam : {0.0, 0.01, 0.05, 0.2}) {
      Scenario s = base;
      s.roads.intensity_y = lam;
      CHECK(success_probability(s, link).p_c < prev);
      prev = success_probability(s, link).p_c;
    }
    prev = 1.1;
    for (double beta_db : {-5.0, 0.0, 8.0, 15.0}) {
      Scenario s = base;
      s.radio.sinr_threshold_db = beta_db;
      CHECK(success_probability(s, link).p_c < prev);
      prev = success_probability(s, link).p_c;
    }
  }
}

TEST_CASE("interference factors vanish without transmitters") {
  Scenario s = suburban_scenario();
  s.roads.tx_prob = 0.0;
  const ReliabilityBreakdown bd = success_probability(s, Link{});
  CHECK(bd.p_x == 1.0);
  CHECK(bd.p_y == 1.0);
  CHECK(bd.p_c == bd.p_noint);

  Scenario u = urban_scenario();
  u.roads.intensity_x = 0.0;
  u.roads.intensity_y = 0.0;
  const ReliabilityBreakdown bu = success_probability(u, Link{});
  CHECK(bu.p_x == 1.0);
  CHECK(bu.p_y == 1.0);
}

TEST_CASE("closed forms agree with the direct quadrature oracle") {
  SUBCASE("suburban, default link") {
    check_against_oracle(suburban_scenario(), Link{});
  }
  SUBCASE("suburban, receiver beyond the road end") {
    Link link;
    link.rx = Position::horizontal(-250.0);
    check_against_oracle(suburban_scenario(), link);
  }
  SUBCASE("suburban, steep path loss") {
    check_against_oracle(suburban_scenario(4.0), Link{});
  }
  SUBCASE("suburban, transmitter on the receiver road") {
    Link link;
    link.tx = Position::horizontal(30.0);
    check_against_oracle(suburban_scenario(), link);
  }
  SUBCASE("urban, around-the-corner serving link") {
    check_against_oracle(urban_scenario(), Link{});
  }
  SUBCASE("urban, receiver close to the junction") {
    Link link;
    link.rx = Position::horizontal(-10.0);
    check_against_oracle(urban_scenario(), link);
  }
  SUBCASE("urban, receiver beyond the road end") {
    Link link;
    link.rx = Position::horizontal(-250.0);
    check_against_oracle(urban_scenario(), link);
  }
  SUBCASE("urban, line-of-sight serving link") {
    Link link;
    link.tx = Position::horizontal(30.0);
    check_against_oracle(urban_scenario(), link);
  }
}
