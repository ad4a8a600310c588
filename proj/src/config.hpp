#pragma once

// INI-style scenario files.  Four sections are mandatory ([radio],
// [channel], [roads], [link]); keys may be omitted and fall back to the
// reference parameter set, with the channel coefficients derived from the
// exponent and break point when not given explicitly.  Unknown sections or
// keys are errors, as are malformed values.

#include <stdexcept>
#include <string>

#include "scene.hpp"

namespace csinr {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct LoadedConfig {
  Scenario scenario;
  Link link;
};

LoadedConfig parse_config(const std::string& text);
LoadedConfig load_config(const std::string& path);
LoadedConfig default_config(Environment kind);

// reference coefficients as functions of exponent and break point
double default_a0_db(double alpha);
double default_a0p_db(double alpha, double breakpoint_m);

} // namespace csinr
