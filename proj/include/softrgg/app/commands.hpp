#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "softrgg/app/config.hpp"
#include "softrgg/montecarlo.hpp"

namespace srgg::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // usage or configuration error
inline constexpr int kExitRuntime = 3;  // failure while running

struct OutputFile {
  std::string name;
  std::string content;
};

/// Files produced by one run, held in memory until written.
struct ProducedRun {
  std::vector<OutputFile> files;  // CSV data files
  nlohmann::json summary;
};

/// sweep.csv from a sweep config snapshot. Throws ConfigError on bad keys.
ProducedRun produce_sweep(const ConfigMap& config, unsigned parallelism,
                          const ProgressCallback& progress = {});

/// Figure data files from a "figure.*" config snapshot.
ProducedRun produce_figure(const ConfigMap& config, unsigned parallelism,
                           const ProgressCallback& progress = {});

struct SweepCommand {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;  // empty: config output.dir, then $SOFTRGG_OUTPUT_DIR, then "."
  unsigned parallelism = 1;
  bool quiet = false;
};
int cmd_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err);

struct TheoryCommand {
  std::string quantity;
  std::string family = "waxman";
  double beta = 1.0;
  double scale = 1.0;
  std::string knots;
  std::string boundary = "torus";
  std::string kind = "isolated";
  std::vector<double> rc, eta, length, kbar, gamma, a, y, x, alpha, delta, range_scale, tau, C;
  std::optional<double> l1;
  std::string format = "csv";
  std::string out_path;
};
int cmd_theory(const TheoryCommand& cmd, std::ostream& out, std::ostream& err);

/// Names accepted by `theory --quantity`.
const std::vector<std::string>& theory_quantities();

struct FigureCommand {
  std::string id;  // fig3 or fig5
  double length = 1000.0;
  std::uint64_t trials = 2000;
  std::string families;  // default: waxman for fig3, waxman,rayleigh for fig5
  std::string boundary;  // default: line for fig3, torus for fig5
  double kmin = 4.0;
  double kmax = 10.0;
  double kstep = 0.5;
  std::uint64_t seed = 1;
  double tail_epsilon = kDefaultTailEpsilon;
  std::string out_dir;
  unsigned parallelism = 1;
  bool quiet = false;
};
int cmd_figure(const FigureCommand& cmd, std::ostream& out, std::ostream& err);

/// Re-runs the manifest at `path` and diffs every recorded output file.
int cmd_verify_manifest(const std::string& path, unsigned parallelism, std::ostream& out,
                        std::ostream& err);

struct SampleCommand {
  double length = 100.0;
  std::string boundary = "line";
  std::string family = "waxman";
  double beta = 1.0;
  double eta = 1.0;
  double rc = 1.0;
  double scale = 1.0;
  std::string knots;
  std::optional<double> kbar;
  std::uint64_t seed = 1;
  double tail_epsilon = kDefaultTailEpsilon;
  std::string out_path;
};
/// Writes one graph dump and prints its diagnosis to `err`.
int cmd_sample(const SampleCommand& cmd, std::ostream& out, std::ostream& err);

/// Full command line front end.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srgg::app
