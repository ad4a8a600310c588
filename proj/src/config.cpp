#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace csinr {

double default_a0_db(double alpha) { return -37.86 + 10.0 * alpha; }

double default_a0p_db(double alpha, double breakpoint_m) {
  return -38.32 + (7.0 + 10.0 * std::log10(breakpoint_m)) * alpha;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

using Section = std::map<std::string, std::string>;

std::map<std::string, Section> parse_ini(const std::string& text) {
  std::map<std::string, Section> out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) +
                          ": empty section name");
      out[section]; // register even if empty
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key outside any section");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!out[section].emplace(key, val).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        key + "' in [" + section + "]");
  }
  return out;
}

class SectionReader {
 public:
  SectionReader(const std::string& name, const Section& sec)
      : name_(name), sec_(sec) {}

  std::optional<std::string> raw(const std::string& key) {
    seen_.insert(key);
    const auto it = sec_.find(key);
    if (it == sec_.end()) return std::nullopt;
    return it->second;
  }

  double number(const std::string& key, double fallback) {
    const auto v = raw(key);
    if (!v) return fallback;
    return parse_number(key, *v);
  }

  std::optional<double> number_opt(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    return parse_number(key, *v);
  }

  void finish() const {
    for (const auto& [key, _] : sec_)
      if (!seen_.count(key))
        throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
  }

 private:
  double parse_number(const std::string& key, const std::string& v) const {
    try {
      size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size() || !std::isfinite(d))
        throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError("[" + name_ + "] " + key + ": not a number: '" + v +
                        "'");
    }
  }

  std::string name_;
  const Section& sec_;
  std::set<std::string> seen_;
};

RoadAxis parse_axis(const std::string& where, const std::string& v) {
  if (v == "horizontal") return RoadAxis::horizontal;
  if (v == "vertical") return RoadAxis::vertical;
  throw ConfigError(where + ": expected horizontal or vertical, got '" + v +
                    "'");
}

} // namespace

LoadedConfig default_config(Environment kind) {
  LoadedConfig c;
  if (kind == Environment::suburban) {
    c.scenario.channel = ChannelParams::suburban(2.0, default_a0_db(2.0));
  } else {
    const double alpha = 1.68, bp = 15.0;
    c.scenario.channel = ChannelParams::urban(alpha, default_a0_db(alpha),
                                              default_a0p_db(alpha, bp), bp);
  }
  return c;
}

LoadedConfig parse_config(const std::string& text) {
  auto ini = parse_ini(text);
  for (const char* required : {"radio", "channel", "roads", "link"})
    if (!ini.count(required))
      throw ConfigError(std::string("missing mandatory section [") + required +
                        "]");
  for (const auto& [name, _] : ini)
    if (name != "radio" && name != "channel" && name != "roads" &&
        name != "link")
      throw ConfigError("unknown section [" + name + "]");

  LoadedConfig c;

  {
    SectionReader radio("radio", ini["radio"]);
    c.scenario.radio.tx_power_dbm = radio.number("tx_power_dbm", 20.0);
    c.scenario.radio.noise_dbm = radio.number("noise_dbm", -99.0);
    c.scenario.radio.sinr_threshold_db = radio.number("sinr_threshold_db", 8.0);
    radio.finish();
  }

  {
    SectionReader channel("channel", ini["channel"]);
    Environment kind = Environment::suburban;
    if (const auto v = channel.raw("kind")) {
      if (*v == "suburban")
        kind = Environment::suburban;
      else if (*v == "urban")
        kind = Environment::urban;
      else
        throw ConfigError("[channel] kind: expected suburban or urban, got '" +
                          *v + "'");
    }
    const double alpha = channel.number(
        "alpha", kind == Environment::urban ? 1.68 : 2.0);
    const double bp = channel.number("breakpoint_m", 15.0);
    const double a0 = channel.number("a0_db", default_a0_db(alpha));
    const double a0p = channel.number("a0p_db", default_a0p_db(alpha, bp));
    channel.finish();
    c.scenario.channel = (kind == Environment::urban)
                             ? ChannelParams::urban(alpha, a0, a0p, bp)
                             : ChannelParams::suburban(alpha, a0);
  }

  {
    SectionReader roads("roads", ini["roads"]);
    auto& rd = c.scenario.roads;
    rd.half_len_x_m = roads.number("half_len_x_m", 200.0);
    rd.half_len_y_m = roads.number("half_len_y_m", 200.0);
    rd.intensity_x = roads.number("intensity_x", 0.01);
    rd.intensity_y = roads.number("intensity_y", 0.01);
    rd.tx_prob = roads.number("tx_prob", 0.02);
    roads.finish();
  }

  {
    SectionReader link("link", ini["link"]);
    if (const auto v = link.raw("tx_road"))
      c.link.tx.road = parse_axis("[link] tx_road", *v);
    if (const auto v = link.number_opt("tx_coord_m")) c.link.tx.coord_m = *v;
    if (const auto v = link.raw("rx_road"))
      c.link.rx.road = parse_axis("[link] rx_road", *v);
    if (const auto v = link.number_opt("rx_coord_m")) c.link.rx.coord_m = *v;
    link.finish();
  }

  if (c.link.rx.road != RoadAxis::horizontal && c.link.rx.coord_m != 0.0)
    throw ConfigError("[link] receiver must lie on the horizontal road");
  if (c.link.tx.same_point(c.link.rx))
    throw ConfigError("[link] transmitter and receiver coincide");
  return c;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

} // namespace csinr
