#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "softrgg/app/config.hpp"

namespace srgg::app {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to reproduce a set of output files.
struct RunManifest {
  std::string command;  // "sweep" or "figure"
  ConfigMap config;     // full snapshot after overrides
  std::uint64_t master_seed = 0;
  std::string version = kVersion;
  std::string started_at;
  std::string finished_at;
  unsigned parallelism = 1;
  std::vector<std::string> outputs;  // file names relative to the manifest
};

nlohmann::json to_json(const RunManifest& manifest);
/// Throws ConfigError when fields are missing.
RunManifest manifest_from_json(const nlohmann::json& j);

/// ISO-8601 UTC time, second resolution.
std::string utc_timestamp();

}  // namespace srgg::app
