#include "softrgg/app/manifest.hpp"

#include <chrono>
#include <ctime>

namespace srgg::app {

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : m.config) config[key] = value;
  return {{"command", m.command},         {"config", config},
          {"master_seed", m.master_seed}, {"version", m.version},
          {"started_at", m.started_at},   {"finished_at", m.finished_at},
          {"parallelism", m.parallelism}, {"outputs", m.outputs}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    for (const auto& [key, value] : j.at("config").items()) m.config[key] = value.get<std::string>();
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.version = j.value("version", std::string{});
    m.started_at = j.value("started_at", std::string{});
    m.finished_at = j.value("finished_at", std::string{});
    m.parallelism = j.value("parallelism", 1u);
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace srgg::app
