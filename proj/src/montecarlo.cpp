#include "softrgg/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "softrgg/error.hpp"

namespace srgg {

namespace {

struct TrialSummary {
  std::uint32_t n_points = 0;
  std::uint32_t n_edges = 0;
  std::uint32_t n_isolated = 0;
  bool connected = true;
  bool has_gap = false;
  bool has_split = false;
};

TrialSummary summarize(const TrialOutcome& o) {
  TrialSummary s;
  s.n_points = static_cast<std::uint32_t>(o.n_points);
  s.n_edges = static_cast<std::uint32_t>(o.n_edges);
  s.n_isolated = static_cast<std::uint32_t>(o.diagnosis.n_isolated);
  s.connected = o.diagnosis.is_connected;
  s.has_gap = o.diagnosis.n_uncrossed_gaps > 0;
  s.has_split = o.diagnosis.has_split;
  return s;
}

EmpiricalSummary aggregate(const std::vector<TrialSummary>& trials) {
  EmpiricalSummary e;
  const std::uint64_t n = trials.size();
  std::uint64_t dis = 0, iso = 0, ucg = 0, either = 0, split = 0;
  long double sum_iso = 0.0L, sum_points = 0.0L, sum_edges = 0.0L;
  for (const TrialSummary& t : trials) {
    const bool has_iso = t.n_isolated > 0;
    dis += !t.connected;
    iso += has_iso;
    ucg += t.has_gap;
    either += has_iso || t.has_gap;
    split += t.has_split;
    sum_iso += t.n_isolated;
    sum_points += t.n_points;
    sum_edges += t.n_edges;
    if (t.n_points >= 2) {
      ++e.trials_multi_node;
      e.disconnected_multi_node += !t.connected;
      e.isolated_multi_node += has_iso;
    }
  }
  e.p_dis = estimate_proportion(dis, n);
  e.p_iso = estimate_proportion(iso, n);
  e.p_ucg = estimate_proportion(ucg, n);
  e.p_iso_or_ucg = estimate_proportion(either, n);
  e.p_split = estimate_proportion(split, n);

  const long double mean = sum_iso / n;
  long double ss = 0.0L;
  for (const TrialSummary& t : trials) {
    const long double d = t.n_isolated - mean;
    ss += d * d;
  }
  e.mean_n_iso = static_cast<double>(mean);
  e.var_n_iso = n > 1 ? static_cast<double>(ss / (n - 1)) : 0.0;
  e.se_mean_n_iso = std::sqrt(e.var_n_iso / static_cast<double>(n));
  e.mean_n_points = static_cast<double>(sum_points / n);
  e.mean_n_edges = static_cast<double>(sum_edges / n);
  return e;
}

}  // namespace

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::MeanDegree: return "mean_degree";
    case SweepAxis::LinkRange: return "link_range";
    case SweepAxis::Gamma: return "gamma";
  }
  return "mean_degree";
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "mean_degree") return SweepAxis::MeanDegree;
  if (text == "link_range") return SweepAxis::LinkRange;
  if (text == "gamma") return SweepAxis::Gamma;
  throw InvalidParameter("unknown sweep axis '" + std::string(text) +
                         "' (expected mean_degree, link_range or gamma)");
}

void SweepConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidParameter("L must be positive");
  if (values.empty()) throw InvalidParameter("sweep values must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw InvalidParameter("sweep values must be finite");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw InvalidParameter("sweep values must be strictly ascending");
  }
  if (trials_per_point < 1) throw InvalidParameter("trials per point must be at least 1");
  if (trials_per_point > std::numeric_limits<std::uint32_t>::max())
    throw InvalidParameter("too many trials per point");
  if (!(tail_epsilon >= 0.0 && tail_epsilon < 1.0))
    throw InvalidParameter("tail_epsilon must lie in [0, 1)");
  if (axis == SweepAxis::Gamma && gamma_kind == ScalingKind::UncrossedGaps &&
      !connection.is_generalized_exponential())
    throw InvalidParameter("uncrossed-gap scaling needs the generalized exponential family");
}

ResolvedPoint resolve_point(const SweepConfig& config, std::size_t index) {
  ResolvedPoint out;
  out.index = index;
  out.axis_value = config.values.at(index);
  switch (config.axis) {
    case SweepAxis::MeanDegree:
      out.connection =
          solve_for_mean_degree(config.connection, out.axis_value, config.length, config.boundary);
      break;
    case SweepAxis::LinkRange:
      if (!(out.axis_value > 0.0)) throw InvalidParameter("link range must be positive");
      out.connection = config.connection.with_range(out.axis_value);
      break;
    case SweepAxis::Gamma: {
      double eta = 1.0;
      if (const auto* g = std::get_if<GeneralizedExponential>(&config.connection.family()))
        eta = g->eta;
      const double R = scaling_R(config.gamma_kind, config.length, out.axis_value, eta);
      out.connection = with_scale(config.connection, R);
      break;
    }
  }
  out.r_c_used = out.connection.characteristic_range();
  out.mean_degree = mean_degree(out.connection, config.length, config.boundary);
  return out;
}

TrialOutcome run_trial(const SweepConfig& config, const ResolvedPoint& point,
                       std::uint64_t trial_index) {
  RandomStream rng = RandomStream::derive(config.master_seed, point.index, trial_index);
  const PointSet points = sample_ppp(config.length, config.boundary, rng);
  const GraphSample graph = sample_graph(points, point.connection, rng, config.tail_epsilon);
  TrialOutcome out;
  out.n_points = points.size();
  out.n_edges = graph.edges.size();
  out.diagnosis = diagnose(graph);
  return out;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z) {
  if (trials == 0) throw InvalidParameter("Wilson interval needs at least one trial");
  if (successes > trials) throw InvalidParameter("successes exceed trials");
  if (!(z > 0.0)) throw InvalidParameter("z must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double lo = std::max(0.0, centre - half);
  double hi = std::min(1.0, centre + half);
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {lo, hi};
}

ProportionEstimate estimate_proportion(std::uint64_t successes, std::uint64_t trials, double z) {
  ProportionEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.p = static_cast<double>(successes) / static_cast<double>(trials);
  std::tie(e.lo, e.hi) = wilson_interval(successes, trials, z);
  return e;
}

PointResult run_point(const SweepConfig& config, const ResolvedPoint& point,
                      unsigned parallelism) {
  const std::uint64_t n = config.trials_per_point;
  std::vector<TrialSummary> trials(n);
  const auto workers =
      static_cast<std::uint64_t>(std::clamp<std::uint64_t>(parallelism, 1, n));

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) trials[t] = summarize(run_trial(config, point, t));
  };

  if (workers == 1) {
    run_range(0, n);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = n * w / workers;
        const std::uint64_t end = n * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
          try {
            run_range(begin, end);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& f : failures)
      if (f) std::rethrow_exception(f);
  }

  PointResult result;
  result.index = point.index;
  result.axis_value = point.axis_value;
  result.r_c_used = point.r_c_used;
  result.mean_degree = point.mean_degree;
  result.empirical = aggregate(trials);
  result.n_iso_per_trial.reserve(n);
  for (const TrialSummary& t : trials) result.n_iso_per_trial.push_back(t.n_isolated);

  PredictionOptions options;
  options.cv_bound = config.record.cv_bound && config.boundary == BoundaryMode::Torus;
  options.ucg_bound = config.record.ucg_bound;
  result.theory = predict(point.connection, config.length, config.boundary, options);
  return result;
}

SweepResult run_sweep(const SweepConfig& config, unsigned parallelism,
                      const ProgressCallback& progress) {
  config.validate();
  SweepResult result;
  result.config = config;
  const std::size_t total = config.values.size();
  for (std::size_t i = 0; i < total; ++i) {
    try {
      result.points.push_back(run_point(config, resolve_point(config, i), parallelism));
    } catch (const Error& e) {
      PointResult failed;
      failed.index = i;
      failed.axis_value = config.values[i];
      failed.error = e.what();
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      failed.r_c_used = failed.mean_degree = nan;
      result.points.push_back(std::move(failed));
    }
    if (progress) progress(i + 1, total);
  }
  return result;
}

std::vector<ComparisonRow> compare_theory(const SweepResult& result) {
  std::vector<ComparisonRow> rows;
  for (const PointResult& p : result.points) {
    if (p.error) continue;
    ComparisonRow row;
    row.axis_value = p.axis_value;
    row.mean_degree = p.mean_degree;
    row.empirical_p_iso = p.empirical.p_iso.p;
    row.lo = p.empirical.p_iso.lo;
    row.hi = p.empirical.p_iso.hi;
    row.poisson_p_iso = poisson_approx_prob_iso(result.config.length, p.mean_degree);
    row.abs_gap = std::abs(row.empirical_p_iso - row.poisson_p_iso);
    row.covered = row.lo <= row.poisson_p_iso && row.poisson_p_iso <= row.hi;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace srgg
