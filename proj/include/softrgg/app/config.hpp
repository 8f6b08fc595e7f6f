#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "softrgg/montecarlo.hpp"

namespace srgg::app {

/// Flattened "section.key" -> value view of an INI-style config.
using ConfigMap = std::map<std::string, std::string>;

/// Malformed, unknown or invalid configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

/// Applies "section.key=value".
void apply_override(ConfigMap& config, const std::string& assignment);

/// "4,5,6" or "start:stop:step" (inclusive of stop up to rounding).
std::vector<double> parse_value_list(const std::string& text);

/// Recognized keys, e.g. "system.L", "sweep.values".
const std::vector<std::string>& known_config_keys();

/// Builds the connection function from family name and parameters:
/// waxman | rayleigh | genexp | hard | tabulated ("r:h,r:h,..." knots).
ConnectionFunction build_connection(const std::string& family, double beta, double eta,
                                    double rc, double scale, const std::string& knots = {});

/// Validates every key and value; throws ConfigError.
SweepConfig build_sweep_config(const ConfigMap& config);

/// Output directory chosen by the config, else $SOFTRGG_OUTPUT_DIR, else ".".
std::string default_output_dir(const ConfigMap& config);

}  // namespace srgg::app
