#include "cornersinr.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <string>

#include "config.hpp"
#include "design.hpp"
#include "montecarlo.hpp"

using namespace csinr;

struct corner_scenario {
  Scenario s;
  Link link;
};

struct corner_meta {
  MetaEstimate est;
};

struct corner_sweep {
  FineGrainedResult res;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

int fail(int code, const std::string& msg) {
  set_error(msg);
  return code;
}

// Maps library exceptions onto error codes; returns CORNER_OK when fn ran
// through.
template <typename Fn>
int guarded(const Fn& fn) {
  try {
    fn();
    return CORNER_OK;
  } catch (const ConfigError& e) {
    return fail(CORNER_EPARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CORNER_EINVAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CORNER_EINVAL, e.what());
  }
}

int write_string(const std::string& text, char* buf, size_t buflen) {
  if (buf && buflen > 0) {
    const size_t n = std::min(text.size(), buflen - 1);
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return static_cast<int>(text.size());
}

std::string fmt(double v) {
  char tmp[40];
  std::snprintf(tmp, sizeof tmp, "%.12g", v);
  return tmp;
}

const char* axis_name(RoadAxis a) {
  return a == RoadAxis::horizontal ? "horizontal" : "vertical";
}

int breakdown_common(const corner_scenario* sc, corner_breakdown* out,
                     int which) {
  if (!sc) return fail(CORNER_EINVAL, "scenario is null");
  if (!out) return fail(CORNER_EINVAL, "output pointer is null");
  return guarded([&] {
    ReliabilityBreakdown b;
    if (which == 0)
      b = success_probability(sc->s, sc->link);
    else if (which == 1)
      b = success_probability_infinite(sc->s, sc->link);
    else
      b = success_probability_oracle(sc->s, sc->link);
    out->p_noint = b.p_noint;
    out->p_x = b.p_x;
    out->p_y = b.p_y;
    out->p_c = b.p_c;
  });
}

} // namespace

extern "C" {

const char* corner_version(void) { return "0.1.0"; }

const char* corner_last_error(void) { return g_last_error.c_str(); }

corner_scenario* corner_scenario_default(int environment) {
  if (environment != CORNER_ENV_SUBURBAN && environment != CORNER_ENV_URBAN) {
    set_error("unknown environment code");
    return nullptr;
  }
  auto* sc = new (std::nothrow) corner_scenario;
  if (!sc) {
    set_error("out of memory");
    return nullptr;
  }
  const LoadedConfig c = default_config(environment == CORNER_ENV_URBAN
                                            ? Environment::urban
                                            : Environment::suburban);
  sc->s = c.scenario;
  sc->link = c.link;
  return sc;
}

corner_scenario* corner_scenario_load(const char* path) {
  if (!path) {
    set_error("path is null");
    return nullptr;
  }
  corner_scenario* sc = nullptr;
  const int rc = guarded([&] {
    const LoadedConfig c = load_config(path);
    sc = new corner_scenario{c.scenario, c.link};
  });
  return rc == CORNER_OK ? sc : nullptr;
}

void corner_scenario_free(corner_scenario* sc) { delete sc; }

int corner_scenario_environment(const corner_scenario* sc) {
  if (!sc) {
    set_error("scenario is null");
    return -1;
  }
  return sc->s.channel.kind == Environment::urban ? CORNER_ENV_URBAN
                                                  : CORNER_ENV_SUBURBAN;
}

double corner_scenario_tx_prob(const corner_scenario* sc) {
  return sc ? sc->s.roads.tx_prob : -1.0;
}

double corner_scenario_half_len_x(const corner_scenario* sc) {
  return sc ? sc->s.roads.half_len_x_m : -1.0;
}

double corner_scenario_half_len_y(const corner_scenario* sc) {
  return sc ? sc->s.roads.half_len_y_m : -1.0;
}

double corner_scenario_rx_coord(const corner_scenario* sc) {
  return sc ? sc->link.rx.coord_m : 0.0;
}

int corner_scenario_set_tx_prob(corner_scenario* sc, double tx_prob) {
  if (!sc) return fail(CORNER_EINVAL, "scenario is null");
  if (!(tx_prob >= 0.0 && tx_prob <= 1.0))
    return fail(CORNER_EINVAL, "transmit probability must lie in [0,1]");
  sc->s.roads.tx_prob = tx_prob;
  return CORNER_OK;
}

int corner_scenario_set_half_len(corner_scenario* sc, double half_len_m) {
  if (!sc) return fail(CORNER_EINVAL, "scenario is null");
  if (!(half_len_m > 0.0))
    return fail(CORNER_EINVAL, "half length must be positive");
  sc->s.roads.half_len_x_m = half_len_m;
  sc->s.roads.half_len_y_m = half_len_m;
  return CORNER_OK;
}

int corner_scenario_set_link(corner_scenario* sc, int tx_road,
                             double tx_coord_m, int rx_road,
                             double rx_coord_m) {
  if (!sc) return fail(CORNER_EINVAL, "scenario is null");
  if ((tx_road != CORNER_ROAD_HORIZONTAL && tx_road != CORNER_ROAD_VERTICAL) ||
      (rx_road != CORNER_ROAD_HORIZONTAL && rx_road != CORNER_ROAD_VERTICAL))
    return fail(CORNER_EINVAL, "unknown road axis code");
  Link link;
  link.tx.road = tx_road == CORNER_ROAD_VERTICAL ? RoadAxis::vertical
                                                 : RoadAxis::horizontal;
  link.tx.coord_m = tx_coord_m;
  link.rx.road = rx_road == CORNER_ROAD_VERTICAL ? RoadAxis::vertical
                                                 : RoadAxis::horizontal;
  link.rx.coord_m = rx_coord_m;
  if (link.rx.road != RoadAxis::horizontal && link.rx.coord_m != 0.0)
    return fail(CORNER_EINVAL, "receiver must lie on the horizontal road");
  if (link.tx.same_point(link.rx))
    return fail(CORNER_EINVAL, "transmitter and receiver coincide");
  sc->link = link;
  return CORNER_OK;
}

int corner_scenario_set_grid_tx(corner_scenario* sc, int k, int m_e,
                                double d_max_m) {
  if (!sc) return fail(CORNER_EINVAL, "scenario is null");
  return guarded([&] {
    Position tx = tx_grid(k, m_e, d_max_m, sc->link.rx.junction_dist());
    if (sc->link.rx.coord_m > 0.0 && tx.road == RoadAxis::horizontal)
      tx.coord_m = -tx.coord_m;
    sc->link.tx = tx;
  });
}

int corner_scenario_describe(const corner_scenario* sc, char* buf,
                             size_t buflen) {
  if (!sc) {
    set_error("scenario is null");
    return -1;
  }
  const Scenario& s = sc->s;
  std::string j = "{";
  j += "\"radio\":{\"tx_power_dbm\":" + fmt(s.radio.tx_power_dbm) +
       ",\"noise_dbm\":" + fmt(s.radio.noise_dbm) +
       ",\"sinr_threshold_db\":" + fmt(s.radio.sinr_threshold_db) + "},";
  j += std::string("\"channel\":{\"kind\":\"") +
       (s.channel.kind == Environment::urban ? "urban" : "suburban") +
       "\",\"alpha\":" + fmt(s.channel.alpha) +
       ",\"a0_db\":" + fmt(s.channel.a0_db);
  if (s.channel.kind == Environment::urban)
    j += ",\"a0p_db\":" + fmt(s.channel.a0p_db) +
         ",\"breakpoint_m\":" + fmt(s.channel.breakpoint_m);
  j += "},";
  j += "\"roads\":{\"half_len_x_m\":" + fmt(s.roads.half_len_x_m) +
       ",\"half_len_y_m\":" + fmt(s.roads.half_len_y_m) +
       ",\"intensity_x\":" + fmt(s.roads.intensity_x) +
       ",\"intensity_y\":" + fmt(s.roads.intensity_y) +
       ",\"tx_prob\":" + fmt(s.roads.tx_prob) + "},";
  j += std::string("\"link\":{\"tx_road\":\"") + axis_name(sc->link.tx.road) +
       "\",\"tx_coord_m\":" + fmt(sc->link.tx.coord_m) + ",\"rx_road\":\"" +
       axis_name(sc->link.rx.road) +
       "\",\"rx_coord_m\":" + fmt(sc->link.rx.coord_m) + "}";
  j += "}";
  return write_string(j, buf, buflen);
}

int corner_scenario_validate(const corner_scenario* sc, char* buf,
                             size_t buflen) {
  if (!sc) {
    set_error("scenario is null");
    return -1;
  }
  std::string text;
  int violations = 0;
  for (const auto& d : validate_scenario(sc->s)) {
    text += d.warning ? "warning " : "violation ";
    text += d.code + ": " + d.message + "\n";
    if (!d.warning) ++violations;
  }
  write_string(text, buf, buflen);
  return violations;
}

int corner_link_region(const corner_scenario* sc) {
  if (!sc) {
    set_error("scenario is null");
    return -1;
  }
  int region = -1;
  const int rc = guarded([&] {
    switch (pathloss_region(sc->s.channel, sc->link.tx, sc->link.rx)) {
      case SignalRegion::los: region = CORNER_REGION_LOS; break;
      case SignalRegion::wlos: region = CORNER_REGION_WLOS; break;
      case SignalRegion::nlos: region = CORNER_REGION_NLOS; break;
    }
  });
  return rc == CORNER_OK ? region : -1;
}

int corner_reliability(const corner_scenario* sc, corner_breakdown* out) {
  return breakdown_common(sc, out, 0);
}

int corner_reliability_infinite(const corner_scenario* sc,
                                corner_breakdown* out) {
  return breakdown_common(sc, out, 1);
}

int corner_reliability_oracle(const corner_scenario* sc,
                              corner_breakdown* out) {
  return breakdown_common(sc, out, 2);
}

int corner_design(const corner_scenario* sc, double target, double d_target_m,
                  double half_len_m, corner_design_point* out) {
  if (!sc) return fail(CORNER_EINVAL, "scenario is null");
  if (!out) return fail(CORNER_EINVAL, "output pointer is null");
  return guarded([&] {
    Scenario s = sc->s;
    if (half_len_m > 0.0) {
      s.roads.half_len_x_m = half_len_m;
      s.roads.half_len_y_m = half_len_m;
    }
    const Link link = default_design_link(d_target_m, sc->link.rx.coord_m);
    const DesignPoint d = optimal_tx_prob(s, link, target);
    out->half_len_m = s.roads.half_len_x_m;
    out->p_star_raw = d.p_star_raw;
    out->p_star = d.p_star;
    out->p_inf = d.p_inf;
    out->feasible = d.feasible ? 1 : 0;
    out->saturated = d.saturated ? 1 : 0;
  });
}

corner_meta* corner_meta_run(const corner_scenario* sc, long n_ppp, int mode,
                             int n_fades, int n_bins,
                             unsigned long long master_seed, int threads) {
  if (!sc) {
    set_error("scenario is null");
    return nullptr;
  }
  if (mode != CORNER_MC_EXACT && mode != CORNER_MC_FADING) {
    set_error("unknown Monte Carlo mode");
    return nullptr;
  }
  corner_meta* m = nullptr;
  const int rc = guarded([&] {
    McOptions opt;
    opt.threads = threads;
    MetaEstimate est = meta_distribution(
        sc->s, sc->link, n_ppp,
        mode == CORNER_MC_FADING ? McMode::fading : McMode::exact, n_fades,
        n_bins, master_seed, opt);
    m = new corner_meta{std::move(est)};
  });
  return rc == CORNER_OK ? m : nullptr;
}

long corner_meta_count(const corner_meta* m) {
  return m ? static_cast<long>(m->est.samples.size()) : -1;
}

double corner_meta_sample(const corner_meta* m, long i) {
  if (!m || i < 0 || i >= static_cast<long>(m->est.samples.size())) {
    set_error("sample index out of range");
    return -1.0;
  }
  return m->est.samples[i];
}

long corner_meta_bins(const corner_meta* m) {
  return m ? static_cast<long>(m->est.histogram.size()) : -1;
}

long corner_meta_bin_count(const corner_meta* m, long bin) {
  if (!m || bin < 0 || bin >= static_cast<long>(m->est.histogram.size())) {
    set_error("bin index out of range");
    return -1;
  }
  return static_cast<long>(m->est.histogram[bin]);
}

double corner_meta_moment1(const corner_meta* m) {
  return m ? m->est.moment1 : -1.0;
}

double corner_meta_moment2(const corner_meta* m) {
  return m ? m->est.moment2 : -1.0;
}

double corner_meta_cdf_at(const corner_meta* m, double p) {
  return m ? m->est.cdf_at(p) : -1.0;
}

int corner_meta_beta(const corner_meta* m, double* a, double* b) {
  if (!m || !a || !b) return fail(CORNER_EINVAL, "null argument");
  if (!m->est.beta)
    return fail(CORNER_EUNAVAILABLE,
                "sample moments admit no beta distribution fit");
  *a = m->est.beta->a;
  *b = m->est.beta->b;
  return CORNER_OK;
}

void corner_meta_free(corner_meta* m) { delete m; }

corner_sweep* corner_sweep_run(const corner_scenario* sc, double d_max_m,
                               int m_e, long n_ppp, int mode, int n_fades,
                               unsigned long long master_seed,
                               double d_target_m, double target, int threads) {
  if (!sc) {
    set_error("scenario is null");
    return nullptr;
  }
  if (mode != CORNER_MC_EXACT && mode != CORNER_MC_FADING) {
    set_error("unknown Monte Carlo mode");
    return nullptr;
  }
  corner_sweep* out = nullptr;
  const int rc = guarded([&] {
    McOptions opt;
    opt.threads = threads;
    FineGrainedResult res = fine_grained_sweep(
        sc->s, sc->link.rx, d_max_m, m_e, n_ppp,
        mode == CORNER_MC_FADING ? McMode::fading : McMode::exact, n_fades,
        master_seed, d_target_m, target, opt);
    out = new corner_sweep{std::move(res)};
  });
  return rc == CORNER_OK ? out : nullptr;
}

long corner_sweep_positions(const corner_sweep* s) {
  return s ? static_cast<long>(s->res.separations.size()) : -1;
}

long corner_sweep_realizations(const corner_sweep* s) {
  return s ? static_cast<long>(s->res.outage.size()) : -1;
}

long corner_sweep_target_index(const corner_sweep* s) {
  return s ? s->res.target_index : -1;
}

double corner_sweep_separation(const corner_sweep* s, long k) {
  if (!s || k < 0 || k >= static_cast<long>(s->res.separations.size())) {
    set_error("position index out of range");
    return -1.0;
  }
  return s->res.separations[k];
}

double corner_sweep_outage(const corner_sweep* s, long i, long k) {
  if (!s || i < 0 || i >= static_cast<long>(s->res.outage.size()) || k < 0 ||
      k >= static_cast<long>(s->res.separations.size())) {
    set_error("outage index out of range");
    return -1.0;
  }
  return s->res.outage[i][k];
}

int corner_sweep_line(const corner_sweep* s, long k, double* mean_out,
                      double* cdf_at_target, double* cond_mean_good,
                      double* cond_mean_bad) {
  if (!s || k < 0 || k >= static_cast<long>(s->res.lines.size()))
    return fail(CORNER_EINVAL, "position index out of range");
  const FineGrainedLine& ln = s->res.lines[k];
  if (mean_out) *mean_out = ln.mean_out;
  if (cdf_at_target) *cdf_at_target = ln.cdf_at_target;
  if (cond_mean_good) *cond_mean_good = ln.cond_mean_good;
  if (cond_mean_bad) *cond_mean_bad = ln.cond_mean_bad;
  return CORNER_OK;
}

int corner_sweep_bimodality(const corner_sweep* s, long k, double* mass_low,
                            double* mass_high, double* mass_mid) {
  if (!s || k < 0 || k >= static_cast<long>(s->res.separations.size())) {
    set_error("position index out of range");
    return -1;
  }
  std::vector<double> col(s->res.outage.size());
  for (size_t i = 0; i < col.size(); ++i) col[i] = s->res.outage[i][k];
  const BimodalityStat st = bimodality_statistic(col, s->res.target);
  if (mass_low) *mass_low = st.mass_low;
  if (mass_high) *mass_high = st.mass_high;
  if (mass_mid) *mass_mid = st.mass_mid;
  return st.bimodal ? 1 : 0;
}

void corner_sweep_free(corner_sweep* s) { delete s; }

} // extern "C"
