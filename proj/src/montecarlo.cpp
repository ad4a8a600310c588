#include "montecarlo.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace csinr {

namespace {

struct KahanSum {
  double total = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
};

template <typename Fn>
void parallel_for(long n, int threads, const Fn& fn) {
  threads = static_cast<int>(std::min<long>(threads, n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const long lo = n * t / threads;
    const long hi = n * (t + 1) / threads;
    pool.emplace_back([lo, hi, &fn] {
      for (long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// gain from an interferer to the receiver; a coincident point contributes
// infinite interference rather than a precondition error
double interferer_gain(const ChannelParams& ch, const Position& x,
                       const Position& rx) {
  if (x.same_point(rx)) return std::numeric_limits<double>::infinity();
  return pathloss(ch, x, rx);
}

void collect_gains(const Scenario& s, const Position& rx,
                   const PppRealization& rz, std::vector<double>& gains) {
  gains.clear();
  gains.reserve(rz.xs.size() + rz.ys.size());
  for (double t : rz.xs)
    gains.push_back(interferer_gain(s.channel, Position::horizontal(t), rx));
  for (double t : rz.ys)
    gains.push_back(interferer_gain(s.channel, Position::vertical(t), rx));
}

double exact_from_gains(const Scenario& s, double bprime,
                        const std::vector<double>& gains) {
  double p = std::exp(-bprime * s.radio.gamma0());
  for (double g : gains) p /= 1.0 + bprime * g;
  return p;
}

double fading_from_gains(const Scenario& s, double serving_gain,
                         const std::vector<double>& gains, RngStream& fades,
                         int n_fades) {
  const double beta = s.radio.beta_lin();
  const double gamma0 = s.radio.gamma0();
  long hits = 0;
  for (int j = 0; j < n_fades; ++j) {
    const double f0 = fades.exponential();
    double interference = 0.0;
    for (double g : gains) interference += fades.exponential() * g;
    if (f0 * serving_gain >= beta * (interference + gamma0)) ++hits;
  }
  return static_cast<double>(hits) / n_fades;
}

} // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CORNER_SINR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

PppRealization sample_realization(const Scenario& s, uint64_t master_seed,
                                  uint64_t index) {
  RngStream rng(master_seed, index, kTagRealization);
  PppRealization rz;
  const double p = s.roads.tx_prob;
  const uint64_t nx =
      rng.poisson(p * s.roads.intensity_x * 2.0 * s.roads.half_len_x_m);
  rz.xs.resize(nx);
  for (auto& v : rz.xs)
    v = rng.uniform(-s.roads.half_len_x_m, s.roads.half_len_x_m);
  const uint64_t ny =
      rng.poisson(p * s.roads.intensity_y * 2.0 * s.roads.half_len_y_m);
  rz.ys.resize(ny);
  for (auto& v : rz.ys)
    v = rng.uniform(-s.roads.half_len_y_m, s.roads.half_len_y_m);
  return rz;
}

double conditional_success_exact(const Scenario& s, const Link& link,
                                 const PppRealization& rz) {
  const double bprime = beta_prime(s, link);
  std::vector<double> gains;
  collect_gains(s, link.rx, rz, gains);
  return exact_from_gains(s, bprime, gains);
}

double conditional_success_fading(const Scenario& s, const Link& link,
                                  const PppRealization& rz, RngStream& fades,
                                  int n_fades) {
  if (n_fades <= 0) throw std::invalid_argument("n_fades must be positive");
  const double serving = pathloss(s.channel, link.tx, link.rx);
  std::vector<double> gains;
  collect_gains(s, link.rx, rz, gains);
  return fading_from_gains(s, serving, gains, fades, n_fades);
}

std::optional<BetaFit> beta_fit(double moment1, double moment2) {
  if (!(moment1 > 0.0 && moment1 < 1.0)) return std::nullopt;
  const double var = moment2 - moment1 * moment1;
  if (!(var > 0.0) || !(moment2 < moment1)) return std::nullopt;
  BetaFit f;
  f.a = moment1 * (moment1 - moment2) / var;
  f.b = f.a * (1.0 - moment1) / moment1;
  return f;
}

double MetaEstimate::cdf_at(double p) const {
  if (samples.empty()) return 0.0;
  long n = 0;
  for (double v : samples)
    if (v >= p) ++n;
  return static_cast<double>(n) / static_cast<double>(samples.size());
}

MetaEstimate meta_distribution(const Scenario& s, const Link& link,
                               long n_ppp, McMode mode, int n_fades,
                               int n_bins, uint64_t master_seed,
                               const McOptions& opt) {
  if (n_ppp <= 0) throw std::invalid_argument("n_ppp must be positive");
  if (n_bins <= 0) throw std::invalid_argument("n_bins must be positive");
  if (mode == McMode::fading && n_fades <= 0)
    throw std::invalid_argument("n_fades must be positive");
  // trip link preconditions before entering worker threads
  (void)pathloss(s.channel, link.tx, link.rx);

  MetaEstimate est;
  est.samples.assign(n_ppp, 0.0);
  const int threads = resolve_threads(opt.threads);
  parallel_for(n_ppp, threads, [&](long i) {
    const PppRealization rz =
        sample_realization(s, master_seed, static_cast<uint64_t>(i));
    if (mode == McMode::exact) {
      est.samples[i] = conditional_success_exact(s, link, rz);
    } else {
      RngStream fades(master_seed, static_cast<uint64_t>(i), kTagFading);
      est.samples[i] = conditional_success_fading(s, link, rz, fades, n_fades);
    }
  });

  est.histogram.assign(n_bins, 0);
  KahanSum m1, m2;
  for (double v : est.samples) {
    const long bin = std::min<long>(n_bins - 1,
                                    static_cast<long>(v * n_bins));
    ++est.histogram[bin];
    m1.add(v);
    m2.add(v * v);
  }
  est.moment1 = m1.total / n_ppp;
  est.moment2 = m2.total / n_ppp;
  est.beta = beta_fit(est.moment1, est.moment2);
  return est;
}

FineGrainedResult fine_grained_sweep(const Scenario& s, const Position& rx,
                                     double d_max, int m_e, long n_ppp,
                                     McMode mode, int n_fades,
                                     uint64_t master_seed, double d_target,
                                     double target, const McOptions& opt) {
  if (n_ppp <= 0) throw std::invalid_argument("n_ppp must be positive");
  if (m_e <= 0) throw std::invalid_argument("m_e must be positive");
  if (mode == McMode::fading && n_fades <= 0)
    throw std::invalid_argument("n_fades must be positive");
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("target must lie in (0, 1)");

  const bool mirrored = rx.coord_m > 0.0;
  const double r = rx.junction_dist();

  FineGrainedResult res;
  res.target = target;
  res.separations.resize(m_e);
  std::vector<Position> txs(m_e);
  std::vector<double> bprimes(m_e);
  for (int k = 1; k <= m_e; ++k) {
    Position tx = tx_grid(k, m_e, d_max, r);
    if (mirrored && tx.road == RoadAxis::horizontal) tx.coord_m = -tx.coord_m;
    txs[k - 1] = tx;
    res.separations[k - 1] = k * d_max / m_e;
    bprimes[k - 1] = s.radio.beta_lin() / pathloss(s.channel, tx, rx);
  }

  res.target_index = 0;
  for (int k = 1; k < m_e; ++k)
    if (std::abs(res.separations[k] - d_target) <
        std::abs(res.separations[res.target_index] - d_target))
      res.target_index = k;

  res.outage.assign(n_ppp, std::vector<double>(m_e, 0.0));
  const int threads = resolve_threads(opt.threads);
  parallel_for(n_ppp, threads, [&](long i) {
    const PppRealization rz =
        sample_realization(s, master_seed, static_cast<uint64_t>(i));
    std::vector<double> gains;
    collect_gains(s, rx, rz, gains);
    std::vector<double>& row = res.outage[i];
    if (mode == McMode::exact) {
      for (int k = 0; k < m_e; ++k)
        row[k] = 1.0 - exact_from_gains(s, bprimes[k], gains);
    } else {
      // one fade stream per realization, consumed in fixed position order
      RngStream fades(master_seed, static_cast<uint64_t>(i), kTagFading);
      for (int k = 0; k < m_e; ++k) {
        const double serving = s.radio.beta_lin() / bprimes[k];
        row[k] = 1.0 - fading_from_gains(s, serving, gains, fades, n_fades);
      }
    }
  });

  const double max_out = 1.0 - target;
  res.meets_target.resize(n_ppp);
  for (long i = 0; i < n_ppp; ++i)
    res.meets_target[i] = res.outage[i][res.target_index] <= max_out ? 1 : 0;

  res.lines.resize(m_e);
  for (int k = 0; k < m_e; ++k) {
    KahanSum all, good, bad;
    long n_good = 0, n_ok = 0;
    for (long i = 0; i < n_ppp; ++i) {
      const double o = res.outage[i][k];
      all.add(o);
      if (o <= max_out) ++n_ok;
      if (res.meets_target[i]) {
        good.add(o);
        ++n_good;
      } else {
        bad.add(o);
      }
    }
    FineGrainedLine& ln = res.lines[k];
    ln.separation_m = res.separations[k];
    ln.mean_out = all.total / n_ppp;
    ln.cdf_at_target = static_cast<double>(n_ok) / n_ppp;
    const long n_bad = n_ppp - n_good;
    ln.cond_mean_good = n_good > 0
                            ? good.total / n_good
                            : std::numeric_limits<double>::quiet_NaN();
    ln.cond_mean_bad = n_bad > 0 ? bad.total / n_bad
                                 : std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

BimodalityStat bimodality_statistic(const std::vector<double>& outages,
                                    double target) {
  BimodalityStat st;
  if (outages.empty()) return st;
  KahanSum sum;
  for (double o : outages) sum.add(o);
  const double mean = sum.total / outages.size();
  const double hi_edge = 2.0 * (1.0 - target);
  long lo = 0, hi = 0, mid = 0;
  for (double o : outages) {
    if (o < 0.05) ++lo;
    if (o > hi_edge) ++hi;
    if (std::abs(o - mean) <= 0.05) ++mid;
  }
  const double n = static_cast<double>(outages.size());
  st.mass_low = lo / n;
  st.mass_high = hi / n;
  st.mass_mid = mid / n;
  st.bimodal = st.mass_low + st.mass_high > st.mass_mid;
  return st;
}

} // namespace csinr
