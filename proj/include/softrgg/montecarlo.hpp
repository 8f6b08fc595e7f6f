#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "softrgg/analysis.hpp"
#include "softrgg/connection.hpp"
#include "softrgg/graph.hpp"
#include "softrgg/point_process.hpp"
#include "softrgg/theory.hpp"

namespace srgg {

enum class SweepAxis { MeanDegree, LinkRange, Gamma };

std::string_view to_string(SweepAxis axis) noexcept;
SweepAxis parse_sweep_axis(std::string_view text);

/// Which theory predictions to evaluate per point.
struct RecordModes {
  bool cv_bound = true;  // torus mode only
  bool ucg_bound = true;
};

struct SweepConfig {
  double length = 1000.0;
  BoundaryMode boundary = BoundaryMode::Line;
  ConnectionFunction connection = ConnectionFunction::waxman(1.0);
  SweepAxis axis = SweepAxis::MeanDegree;
  ScalingKind gamma_kind = ScalingKind::IsolatedNodes;  // used by the Gamma axis
  std::vector<double> values;
  std::uint64_t trials_per_point = 1000;
  std::uint64_t master_seed = 1;
  double tail_epsilon = kDefaultTailEpsilon;
  RecordModes record;

  /// Throws InvalidParameter on an empty/unsorted axis, zero trials, etc.
  void validate() const;
};

/// One sweep point after its connection function has been fixed.
struct ResolvedPoint {
  std::size_t index = 0;
  double axis_value = 0.0;
  ConnectionFunction connection = ConnectionFunction::waxman(1.0);
  double r_c_used = 0.0;  // range parameter times scale
  double mean_degree = 0.0;
};

/// Resolves the connection function of sweep point `index`: solved for the
/// target mean degree, given r_c directly, or rescaled by scaling_R(gamma).
ResolvedPoint resolve_point(const SweepConfig& config, std::size_t index);

struct TrialOutcome {
  DiagnosisReport diagnosis;
  std::size_t n_points = 0;
  std::size_t n_edges = 0;
};

/// PPP -> graph -> diagnosis with the stream derive(master_seed, point, trial).
TrialOutcome run_trial(const SweepConfig& config, const ResolvedPoint& point,
                       std::uint64_t trial_index);

struct ProportionEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double p = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  double half_width() const noexcept { return 0.5 * (hi - lo); }
};

inline constexpr double kWilsonZ95 = 1.959963984540054;

/// Wilson score interval. Throws InvalidParameter if successes > trials or
/// trials == 0.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z = kWilsonZ95);

ProportionEstimate estimate_proportion(std::uint64_t successes, std::uint64_t trials,
                                       double z = kWilsonZ95);

struct EmpiricalSummary {
  ProportionEstimate p_dis;
  ProportionEstimate p_iso;
  ProportionEstimate p_ucg;
  ProportionEstimate p_iso_or_ucg;
  ProportionEstimate p_split;
  double mean_n_iso = 0.0;
  double var_n_iso = 0.0;  // unbiased
  double se_mean_n_iso = 0.0;
  double mean_n_points = 0.0;
  double mean_n_edges = 0.0;
  // Restricted to trials with at least two nodes.
  std::uint64_t trials_multi_node = 0;
  std::uint64_t disconnected_multi_node = 0;
  std::uint64_t isolated_multi_node = 0;
};

struct PointResult {
  std::size_t index = 0;
  double axis_value = 0.0;
  double r_c_used = 0.0;
  double mean_degree = 0.0;
  std::optional<std::string> error;  // set when the point could not run
  EmpiricalSummary empirical;
  TheoryPrediction theory;
  std::vector<std::uint32_t> n_iso_per_trial;
};

struct SweepResult {
  SweepConfig config;
  std::vector<PointResult> points;
};

/// Called after each point with (finished points, total points).
using ProgressCallback = std::function<void(std::size_t, std::size_t)>;

/// Runs every sweep point; trials are split over `parallelism` workers by
/// contiguous index range and merged in index order, so the result does not
/// depend on the worker count. A point whose target is infeasible records
/// its error and the sweep continues.
SweepResult run_sweep(const SweepConfig& config, unsigned parallelism,
                      const ProgressCallback& progress = {});

/// Runs trials [0, trials) of one point and aggregates them.
PointResult run_point(const SweepConfig& config, const ResolvedPoint& point,
                      unsigned parallelism);

struct ComparisonRow {
  double axis_value = 0.0;
  double mean_degree = 0.0;
  double empirical_p_iso = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double poisson_p_iso = 0.0;
  double abs_gap = 0.0;
  bool covered = false;
};

/// Empirical P(N_iso >= 1) against 1 - exp(-L e^{-kbar}) at every point.
std::vector<ComparisonRow> compare_theory(const SweepResult& result);

}  // namespace srgg
