// corner-sinr: reliability of a V2V link near a road junction.
//
// Talks to the library exclusively through the C interface.  Every command
// writes its tabular results under --out plus a <command>_manifest.json
// recording the resolved scenario and scale knobs of the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cornersinr.h"
#include "json.hpp"

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Globals {
  std::string config;
  unsigned long long seed = 1;
  std::string out = ".";
  std::string format = "csv";
};

struct ScenarioHandle {
  corner_scenario* sc = nullptr;
  ScenarioHandle() = default;
  ScenarioHandle(const ScenarioHandle&) = delete;
  ScenarioHandle& operator=(const ScenarioHandle&) = delete;
  ~ScenarioHandle() { corner_scenario_free(sc); }
};

[[noreturn]] void die(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(code);
}

void load_scenario(ScenarioHandle& h, const Globals& g) {
  if (g.config.empty()) {
    h.sc = corner_scenario_default(CORNER_ENV_SUBURBAN);
    if (!h.sc) die(kExitDomain, corner_last_error());
  } else {
    h.sc = corner_scenario_load(g.config.c_str());
    if (!h.sc) die(kExitUsage, corner_last_error());
  }
}

std::string describe(const corner_scenario* sc) {
  const int n = corner_scenario_describe(sc, nullptr, 0);
  if (n < 0) die(kExitDomain, corner_last_error());
  std::string buf(static_cast<size_t>(n) + 1, '\0');
  corner_scenario_describe(sc, buf.data(), buf.size());
  buf.resize(static_cast<size_t>(n));
  return buf;
}

int fetch_diagnostics(const corner_scenario* sc, std::string& text) {
  char probe[1];
  const int v = corner_scenario_validate(sc, probe, 0);
  if (v < 0) die(kExitDomain, corner_last_error());
  std::string buf(1 << 16, '\0');
  corner_scenario_validate(sc, buf.data(), buf.size());
  buf.resize(std::strlen(buf.c_str()));
  text = buf;
  return v;
}

// Warnings go to stderr; hard violations abort the run.
void ensure_valid(const corner_scenario* sc) {
  std::string text;
  const int violations = fetch_diagnostics(sc, text);
  if (!text.empty()) std::cerr << text;
  if (violations > 0) die(kExitDomain, "scenario has validation violations");
}

struct Table {
  std::vector<std::string> cols;
  std::vector<ordered_json> rows;
};

std::string cell_to_csv(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) return fmt_num(v.get<double>());
  if (v.is_null()) return "nan";
  return v.dump();
}

std::string write_table(const fs::path& dir, const std::string& stem,
                        const std::string& format, const Table& t) {
  const std::string name = stem + (format == "json" ? ".json" : ".csv");
  std::ofstream f(dir / name);
  if (!f) die(kExitDomain, "cannot write " + (dir / name).string());
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : t.rows) arr.push_back(r);
    f << arr.dump(2) << '\n';
  } else {
    for (size_t c = 0; c < t.cols.size(); ++c)
      f << (c ? "," : "") << t.cols[c];
    f << '\n';
    for (const auto& r : t.rows) {
      for (size_t c = 0; c < t.cols.size(); ++c)
        f << (c ? "," : "") << cell_to_csv(r.at(t.cols[c]));
      f << '\n';
    }
  }
  return name;
}

std::string write_json_file(const fs::path& dir, const std::string& name,
                            const ordered_json& j) {
  std::ofstream f(dir / name);
  if (!f) die(kExitDomain, "cannot write " + (dir / name).string());
  f << j.dump(2) << '\n';
  return name;
}

class Run {
 public:
  Run(std::string cmd, const Globals& g)
      : cmd_(std::move(cmd)), g_(g), start_(std::chrono::steady_clock::now()) {
    std::error_code ec;
    fs::create_directories(g.out, ec);
    if (ec) die(kExitDomain, "cannot create output directory " + g.out);
  }

  const fs::path dir() const { return g_.out; }

  void output(std::string name) { outputs_.push_back(std::move(name)); }

  void finish(const corner_scenario* sc, ordered_json parameters,
              ordered_json scale) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    ordered_json m;
    m["command"] = cmd_;
    m["tool_version"] = corner_version();
    m["master_seed"] = g_.seed;
    m["scenario"] = ordered_json::parse(describe(sc));
    m["parameters"] = std::move(parameters);
    m["scale"] = std::move(scale);
    m["outputs"] = outputs_;
    m["wall_clock_s"] = wall;
    write_json_file(dir(), cmd_ + "_manifest.json", m);
  }

 private:
  std::string cmd_;
  Globals g_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

const char* region_label(int region) {
  switch (region) {
    case CORNER_REGION_LOS: return "LOS";
    case CORNER_REGION_WLOS: return "WLOS";
    case CORNER_REGION_NLOS: return "NLOS";
  }
  return "?";
}

std::vector<double> parse_double_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(cur, &used);
      if (used != cur.size()) throw std::invalid_argument(cur);
      out.push_back(v);
    } catch (const std::exception&) {
      die(kExitUsage, std::string(what) + ": not a number: '" + cur + "'");
    }
  }
  if (out.empty()) die(kExitUsage, std::string(what) + ": empty list");
  return out;
}

int mode_code(const std::string& mode) {
  return mode == "fading" ? CORNER_MC_FADING : CORNER_MC_EXACT;
}

// Solve for the transmit probability and install it on the scenario.
corner_design_point apply_design(corner_scenario* sc, double target,
                                 double d_target) {
  corner_design_point dp;
  if (corner_design(sc, target, d_target, -1.0, &dp) != CORNER_OK)
    die(kExitDomain, corner_last_error());
  if (!dp.feasible)
    std::cerr << "warning: target " << fmt_num(target)
              << " is infeasible at this range; using tx_prob "
              << fmt_num(dp.p_star) << "\n";
  if (corner_scenario_set_tx_prob(sc, dp.p_star) != CORNER_OK)
    die(kExitDomain, corner_last_error());
  return dp;
}

int run_validate(const Globals& g) {
  ScenarioHandle h;
  load_scenario(h, g);
  Run run("validate", g);
  std::string text;
  const int violations = fetch_diagnostics(h.sc, text);
  if (text.empty())
    std::cout << "ok\n";
  else
    std::cout << text;
  run.finish(h.sc, ordered_json::object(), ordered_json::object());
  return violations > 0 ? kExitDomain : 0;
}

int run_analytic(const Globals& g, double d_target, int m_e) {
  if (m_e <= 0) die(kExitUsage, "--sweep-separations must be positive");
  if (!(d_target > 0.0)) die(kExitUsage, "--d-target must be positive");
  ScenarioHandle h;
  load_scenario(h, g);
  ensure_valid(h.sc);
  Run run("analytic", g);
  const double d_max = 1.4 * d_target;

  Table t;
  t.cols = {"separation_m", "region", "p_noint", "p_x", "p_y", "p_c",
            "outage"};
  for (int k = 1; k <= m_e; ++k) {
    if (corner_scenario_set_grid_tx(h.sc, k, m_e, d_max) != CORNER_OK)
      die(kExitDomain, corner_last_error());
    const int region = corner_link_region(h.sc);
    if (region < 0) die(kExitDomain, corner_last_error());
    corner_breakdown b;
    if (corner_reliability(h.sc, &b) != CORNER_OK)
      die(kExitDomain, corner_last_error());
    ordered_json row;
    row["separation_m"] = k * d_max / m_e;
    row["region"] = region_label(region);
    row["p_noint"] = b.p_noint;
    row["p_x"] = b.p_x;
    row["p_y"] = b.p_y;
    row["p_c"] = b.p_c;
    row["outage"] = 1.0 - b.p_c;
    t.rows.push_back(std::move(row));
  }
  run.output(write_table(run.dir(), "analytic", g.format, t));
  run.finish(h.sc,
             ordered_json{{"d_target_m", d_target}, {"d_max_m", d_max},
                          {"format", g.format}},
             ordered_json{{"m_e", m_e}});
  return 0;
}

int run_design(const Globals& g, double target, double d_target,
               const std::string& r_grid) {
  if (!(target > 0.0 && target < 1.0))
    die(kExitUsage, "--target must lie in (0, 1)");
  if (!(d_target > 0.0)) die(kExitUsage, "--d-target must be positive");
  const std::vector<double> grid = parse_double_list(r_grid, "--r-grid");
  ScenarioHandle h;
  load_scenario(h, g);
  ensure_valid(h.sc);
  Run run("design", g);

  Table t;
  t.cols = {"R_m", "p_star_raw", "p_star_clamped", "p_inf", "feasible"};
  for (double R : grid) {
    corner_design_point dp;
    if (corner_design(h.sc, target, d_target, R, &dp) != CORNER_OK)
      die(kExitDomain, corner_last_error());
    ordered_json row;
    row["R_m"] = dp.half_len_m;
    row["p_star_raw"] = dp.p_star_raw;
    row["p_star_clamped"] = dp.p_star;
    row["p_inf"] = dp.p_inf;
    row["feasible"] = dp.feasible != 0;
    t.rows.push_back(std::move(row));
  }
  run.output(write_table(run.dir(), "design", g.format, t));
  run.finish(h.sc,
             ordered_json{{"target", target}, {"d_target_m", d_target},
                          {"r_grid_m", grid}, {"format", g.format}},
             ordered_json::object());
  return 0;
}

int run_meta(const Globals& g, bool design, double target, double d_target,
             long n_ppp, const std::string& mode, int n_fades, int n_bins) {
  if (n_ppp <= 0) die(kExitUsage, "--n-ppp must be positive");
  if (n_fades <= 0) die(kExitUsage, "--n-f must be positive");
  if (n_bins <= 0) die(kExitUsage, "--bins must be positive");
  ScenarioHandle h;
  load_scenario(h, g);
  ensure_valid(h.sc);
  Run run("meta", g);

  corner_design_point dp{};
  if (design) dp = apply_design(h.sc, target, d_target);

  corner_meta* m = corner_meta_run(h.sc, n_ppp, mode_code(mode), n_fades,
                                   n_bins, g.seed, 0);
  if (!m) die(kExitDomain, corner_last_error());

  Table hist;
  hist.cols = {"bin_lo", "bin_hi", "count"};
  const long bins = corner_meta_bins(m);
  for (long i = 0; i < bins; ++i) {
    ordered_json row;
    row["bin_lo"] = static_cast<double>(i) / bins;
    row["bin_hi"] = static_cast<double>(i + 1) / bins;
    row["count"] = corner_meta_bin_count(m, i);
    hist.rows.push_back(std::move(row));
  }
  run.output(write_table(run.dir(), "meta_hist", g.format, hist));

  Table samples;
  samples.cols = {"realization_id", "p_c"};
  const long n = corner_meta_count(m);
  for (long i = 0; i < n; ++i) {
    ordered_json row;
    row["realization_id"] = i;
    row["p_c"] = corner_meta_sample(m, i);
    samples.rows.push_back(std::move(row));
  }
  run.output(write_table(run.dir(), "meta_samples", g.format, samples));

  const double m1 = corner_meta_moment1(m);
  const double m2 = corner_meta_moment2(m);
  ordered_json summary;
  summary["n_ppp"] = n_ppp;
  summary["mode"] = mode;
  if (mode == "fading") summary["n_fades"] = n_fades;
  summary["n_bins"] = n_bins;
  summary["design_applied"] = design;
  if (design) {
    summary["p_star"] = dp.p_star;
    summary["p_inf"] = dp.p_inf;
  }
  summary["target"] = target;
  summary["d_target_m"] = d_target;
  summary["moment1"] = m1;
  summary["moment2"] = m2;
  summary["variance"] = m2 - m1 * m1;
  summary["mean_outage"] = 1.0 - m1;
  summary["cdf_at_target"] = corner_meta_cdf_at(m, target);
  double a = 0.0, b = 0.0;
  if (corner_meta_beta(m, &a, &b) == CORNER_OK)
    summary["beta"] = ordered_json{{"a", a}, {"b", b}};
  else
    summary["beta"] = nullptr;
  run.output(write_json_file(run.dir(), "meta_summary.json", summary));

  corner_meta_free(m);
  run.finish(h.sc,
             ordered_json{{"mode", mode}, {"design", design},
                          {"target", target}, {"d_target_m", d_target},
                          {"format", g.format}},
             ordered_json{{"n_ppp", n_ppp}, {"n_fades", n_fades},
                          {"n_bins", n_bins}});
  return 0;
}

int run_finegrained(const Globals& g, bool design, double target,
                    double d_target, long n_ppp, int m_e,
                    const std::string& mode, int n_fades, long lines) {
  if (n_ppp <= 0) die(kExitUsage, "--n-ppp must be positive");
  if (m_e <= 0) die(kExitUsage, "--m-e must be positive");
  if (n_fades <= 0) die(kExitUsage, "--n-f must be positive");
  if (lines < 0) die(kExitUsage, "--lines must be nonnegative");
  ScenarioHandle h;
  load_scenario(h, g);
  ensure_valid(h.sc);
  Run run("finegrained", g);
  const double d_max = 1.4 * d_target;

  corner_design_point dp{};
  if (design) dp = apply_design(h.sc, target, d_target);

  corner_sweep* sw = corner_sweep_run(h.sc, d_max, m_e, n_ppp,
                                      mode_code(mode), n_fades, g.seed,
                                      d_target, target, 0);
  if (!sw) die(kExitDomain, corner_last_error());
  const long n_pos = corner_sweep_positions(sw);
  const long n_real = corner_sweep_realizations(sw);

  // one contiguous outage curve per exported realization
  const long n_export = std::min<long>(lines, n_real);
  Table matrix;
  matrix.cols = {"realization_id", "separation_m", "p_out"};
  for (long i = 0; i < n_export; ++i) {
    for (long k = 0; k < n_pos; ++k) {
      ordered_json row;
      row["realization_id"] = i;
      row["separation_m"] = corner_sweep_separation(sw, k);
      row["p_out"] = corner_sweep_outage(sw, i, k);
      matrix.rows.push_back(std::move(row));
    }
  }
  run.output(write_table(run.dir(), "finegrained_matrix", g.format, matrix));

  Table agg;
  agg.cols = {"separation_m", "mean_out", "cdf_at_target", "cond_mean_good",
              "cond_mean_bad"};
  for (long k = 0; k < n_pos; ++k) {
    double mean_out, cdf, good, bad;
    if (corner_sweep_line(sw, k, &mean_out, &cdf, &good, &bad) != CORNER_OK)
      die(kExitDomain, corner_last_error());
    ordered_json row;
    row["separation_m"] = corner_sweep_separation(sw, k);
    row["mean_out"] = mean_out;
    row["cdf_at_target"] = cdf;
    row["cond_mean_good"] = good;
    row["cond_mean_bad"] = bad;
    agg.rows.push_back(std::move(row));
  }
  run.output(write_table(run.dir(), "finegrained_aggregate", g.format, agg));

  corner_sweep_free(sw);
  ordered_json params{{"mode", mode},         {"design", design},
                      {"target", target},     {"d_target_m", d_target},
                      {"d_max_m", d_max},     {"format", g.format},
                      {"lines", lines}};
  if (design) params["p_star"] = dp.p_star;
  run.finish(h.sc, params,
             ordered_json{{"n_ppp", n_ppp}, {"m_e", m_e},
                          {"n_fades", n_fades}});
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average and fine-grained reliability of a V2V link at a "
               "road junction"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config, "Scenario INI file");
  app.add_option("--seed", g.seed, "Master seed for Monte Carlo streams")
      ->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--format", g.format, "Tabular output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* validate = app.add_subcommand(
      "validate", "Check scenario parameters and report diagnostics");
  validate->fallthrough();

  double an_d_target = 100.0;
  int an_m_e = 140;
  auto* analytic = app.add_subcommand(
      "analytic", "Closed-form reliability versus TX-RX separation");
  analytic->fallthrough();
  analytic->add_option("--d-target", an_d_target,
                       "Protection range; the sweep covers 1.4x this")
      ->capture_default_str();
  analytic->add_option("--sweep-separations", an_m_e,
                       "Number of separations on the evaluation grid")
      ->capture_default_str();

  double de_target = 0.9, de_d_target = 100.0;
  std::string de_grid = "200,500,1000,2000,5000,10000";
  auto* design = app.add_subcommand(
      "design", "Largest transmit probability meeting a reliability target");
  design->fallthrough();
  design->add_option("--target", de_target, "Reliability target")
      ->capture_default_str();
  design->add_option("--d-target", de_d_target, "Protection range")
      ->capture_default_str();
  design->add_option("--r-grid", de_grid, "Road half-lengths, comma list")
      ->capture_default_str();

  bool me_design = false;
  double me_target = 0.9, me_d_target = 100.0;
  long me_n_ppp = 2000;
  std::string me_mode = "exact";
  int me_n_f = 1000, me_bins = 150;
  auto* meta = app.add_subcommand(
      "meta", "Monte Carlo meta distribution of the link reliability");
  meta->fallthrough();
  meta->add_flag("--design,!--no-design", me_design,
                 "Set tx_prob to the designed value before sampling");
  meta->add_option("--target", me_target, "Reliability target")
      ->capture_default_str();
  meta->add_option("--d-target", me_d_target, "Protection range")
      ->capture_default_str();
  meta->add_option("--n-ppp", me_n_ppp, "Number of interference realizations")
      ->capture_default_str();
  meta->add_option("--mode", me_mode, "Conditional success estimator")
      ->check(CLI::IsMember({"exact", "fading"}))
      ->capture_default_str();
  meta->add_option("--n-f", me_n_f, "Fade draws per realization (fading mode)")
      ->capture_default_str();
  meta->add_option("--bins", me_bins, "Histogram bin count")
      ->capture_default_str();

  bool fg_design = false;
  double fg_target = 0.9, fg_d_target = 100.0;
  long fg_n_ppp = 2000, fg_lines = 100;
  int fg_m_e = 140, fg_n_f = 1000;
  std::string fg_mode = "exact";
  auto* finegrained = app.add_subcommand(
      "finegrained", "Per-realization outage across TX-RX separations");
  finegrained->fallthrough();
  finegrained->add_flag("--design,!--no-design", fg_design,
                        "Set tx_prob to the designed value before sampling");
  finegrained->add_option("--target", fg_target, "Reliability target")
      ->capture_default_str();
  finegrained->add_option("--d-target", fg_d_target, "Protection range")
      ->capture_default_str();
  finegrained->add_option("--n-ppp", fg_n_ppp,
                          "Number of interference realizations")
      ->capture_default_str();
  finegrained->add_option("--m-e", fg_m_e,
                          "Number of separations on the evaluation grid")
      ->capture_default_str();
  finegrained->add_option("--mode", fg_mode, "Conditional success estimator")
      ->check(CLI::IsMember({"exact", "fading"}))
      ->capture_default_str();
  finegrained->add_option("--n-f", fg_n_f,
                          "Fade draws per realization (fading mode)")
      ->capture_default_str();
  finegrained->add_option(
      "--lines", fg_lines,
      "Per-realization outage curves to export in the matrix file")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (app.got_subcommand(validate)) return run_validate(g);
  if (app.got_subcommand(analytic))
    return run_analytic(g, an_d_target, an_m_e);
  if (app.got_subcommand(design))
    return run_design(g, de_target, de_d_target, de_grid);
  if (app.got_subcommand(meta))
    return run_meta(g, me_design, me_target, me_d_target, me_n_ppp, me_mode,
                    me_n_f, me_bins);
  if (app.got_subcommand(finegrained))
    return run_finegrained(g, fg_design, fg_target, fg_d_target, fg_n_ppp,
                           fg_m_e, fg_mode, fg_n_f, fg_lines);
  return kExitUsage;
}
