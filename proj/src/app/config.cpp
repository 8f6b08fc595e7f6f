#include "softrgg/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "softrgg/app/csv.hpp"
#include "softrgg/error.hpp"

namespace srgg::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

ConfigMap flatten(const boost::property_tree::ptree& tree) {
  ConfigMap out;
  for (const auto& [section, body] : tree) {
    if (body.empty())
      throw ConfigError("config key '" + section + "' must live inside a [section]");
    for (const auto& [key, value] : body) {
      if (!value.empty()) throw ConfigError("nested config keys are not supported");
      out[section + "." + key] = trim(value.data());
    }
  }
  return out;
}

double number(const ConfigMap& c, const std::string& key, double fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  try {
    return parse_number(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + it->second + "' is not a number");
  }
}

std::string text(const ConfigMap& c, const std::string& key, const std::string& fallback) {
  auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

bool flag(const ConfigMap& c, const std::string& key, bool fallback) {
  const std::string v = text(c, key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + v + "'");
}

std::uint64_t integer(const ConfigMap& c, const std::string& key, std::uint64_t fallback) {
  auto it = c.find(key);
  if (it == c.end()) return fallback;
  const std::string& v = it->second;
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw ConfigError("config key '" + key + "': '" + v + "' is not a nonnegative integer");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + v + "' is out of range");
  }
}

std::vector<Knot> parse_knots(const std::string& spec) {
  std::vector<Knot> knots;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("tabulated knot '" + item + "' must be r:h");
    try {
      knots.push_back({parse_number(trim(item.substr(0, colon))), parse_number(trim(item.substr(colon + 1)))});
    } catch (const InvalidParameter&) {
      throw ConfigError("tabulated knot '" + item + "' is not numeric");
    }
  }
  return knots;
}

}  // namespace

ConfigMap parse_config_text(const std::string& content) {
  std::istringstream in(content);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return flatten(tree);
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(ConfigMap& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' must be section.key=value");
  const std::string key = trim(assignment.substr(0, eq));
  if (key.find('.') == std::string::npos)
    throw ConfigError("override key '" + key + "' must be section.key");
  config[key] = trim(assignment.substr(eq + 1));
}

std::vector<double> parse_value_list(const std::string& spec) {
  std::vector<double> values;
  try {
    if (spec.find(':') != std::string::npos) {
      std::vector<double> parts;
      std::istringstream in(spec);
      std::string item;
      while (std::getline(in, item, ':')) parts.push_back(parse_number(trim(item)));
      if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
        throw ConfigError("range '" + spec + "' must be start:stop:step with step > 0");
      const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
      for (long i = 0; i <= count; ++i) values.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    } else {
      std::istringstream in(spec);
      std::string item;
      while (std::getline(in, item, ',')) values.push_back(parse_number(trim(item)));
    }
  } catch (const InvalidParameter& e) {
    throw ConfigError("value list '" + spec + "': " + e.what());
  }
  if (values.empty()) throw ConfigError("value list is empty");
  return values;
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys{
      "system.L",           "system.boundary",   "connection.family", "connection.beta",
      "connection.eta",     "connection.rc",     "connection.scale",  "connection.knots",
      "sweep.axis",         "sweep.values",      "sweep.trials",      "sweep.seed",
      "sweep.tail_epsilon", "sweep.gamma_kind",  "sweep.cv_bound",    "sweep.ucg_bound",
      "output.dir"};
  return keys;
}

ConnectionFunction build_connection(const std::string& family, double beta, double eta,
                                    double rc, double scale, const std::string& knots) {
  try {
    ConnectionFunction base = ConnectionFunction::waxman(1.0);
    if (family == "waxman")
      base = ConnectionFunction::waxman(rc, beta);
    else if (family == "rayleigh")
      base = ConnectionFunction::rayleigh(rc, beta);
    else if (family == "genexp")
      base = ConnectionFunction::generalized_exponential(beta, rc, eta);
    else if (family == "hard")
      base = ConnectionFunction::hard(rc);
    else if (family == "tabulated")
      base = ConnectionFunction::tabulated(parse_knots(knots));
    else
      throw ConfigError("unknown connection family '" + family +
                        "' (waxman, rayleigh, genexp, hard, tabulated)");
    return with_scale(base, scale);
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("connection: ") + e.what());
  }
}

SweepConfig build_sweep_config(const ConfigMap& config) {
  const auto& known = known_config_keys();
  for (const auto& [key, value] : config) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");
  }

  SweepConfig out;
  try {
    out.length = number(config, "system.L", 1000.0);
    out.boundary = parse_boundary(text(config, "system.boundary", "line"));
    out.connection = build_connection(
        text(config, "connection.family", "waxman"), number(config, "connection.beta", 1.0),
        number(config, "connection.eta", 1.0), number(config, "connection.rc", 1.0),
        number(config, "connection.scale", 1.0), text(config, "connection.knots", ""));
    out.axis = parse_sweep_axis(text(config, "sweep.axis", "mean_degree"));
    if (config.count("sweep.values") == 0) throw ConfigError("config needs sweep.values");
    out.values = parse_value_list(config.at("sweep.values"));
    out.trials_per_point = integer(config, "sweep.trials", 1000);
    out.master_seed = integer(config, "sweep.seed", 1);
    out.tail_epsilon = number(config, "sweep.tail_epsilon", kDefaultTailEpsilon);
    const std::string kind = text(config, "sweep.gamma_kind", "isolated");
    if (kind == "isolated")
      out.gamma_kind = ScalingKind::IsolatedNodes;
    else if (kind == "ucg")
      out.gamma_kind = ScalingKind::UncrossedGaps;
    else
      throw ConfigError("sweep.gamma_kind must be isolated or ucg");
    out.record.cv_bound = flag(config, "sweep.cv_bound", true);
    out.record.ucg_bound = flag(config, "sweep.ucg_bound", true);
    out.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  return out;
}

std::string default_output_dir(const ConfigMap& config) {
  if (auto it = config.find("output.dir"); it != config.end() && !it->second.empty()) return it->second;
  if (const char* env = std::getenv("SOFTRGG_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return ".";
}

}  // namespace srgg::app
