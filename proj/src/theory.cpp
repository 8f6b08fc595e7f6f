#include "softrgg/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "softrgg/error.hpp"
#include "softrgg/quadrature.hpp"

namespace srgg {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw InvalidParameter(std::string(what) + " must be positive and finite");
}

void require_unbounded_support(const ConnectionFunction& cf) {
  if (cf.is_hard())
    throw AssumptionViolated("the hard profile has bounded support (monotone, unbounded support required)");
  if (!cf.has_unbounded_support())
    throw AssumptionViolated("profile must have unbounded support");
}

// Breakpoints origin + k * ell for a geometric ladder of k, clipped to [lo, hi].
void add_ladder(std::vector<double>& pts, double origin, double ell, double lo, double hi) {
  for (double k : {0.25, 1.0, 4.0, 16.0, 64.0}) {
    const double p = origin + k * ell;
    if (p > lo && p < hi) pts.push_back(p);
  }
}

}  // namespace

double prob_isolation_at_point(const ConnectionFunction& cf, double length) {
  return std::exp(-mean_degree(cf, length, BoundaryMode::Torus));
}

double expected_isolated(const ConnectionFunction& cf, double length) {
  return length * prob_isolation_at_point(cf, length);
}

double cv_squared_upper_bound(const ConnectionFunction& cf, double length) {
  const double mean_iso = expected_isolated(cf, length);
  if (!(mean_iso > 0.0))
    throw DegenerateInput("expected number of isolated nodes is zero; c_V^2 is undefined");

  const double half = 0.5 * length;
  const double ell = std::max(cf.characteristic_range(), 1e-12 * length);
  const std::vector<double> radii = nonsmooth_radii(cf);
  auto ring = [&](double x, double z) {
    return cf(detail::distance_unchecked(x, z, length, BoundaryMode::Torus));
  };
  // Adds c, c - L and c + L when they fall inside (lo, hi).
  auto add_periodic = [&](std::vector<double>& pts, double c, double lo, double hi) {
    for (double p : {c - length, c, c + length})
      if (p > lo && p < hi) pts.push_back(p);
  };

  // Beyond `reach` the profile is below 1e-20 H(0). When the reach is short
  // against the ring, the correlation vanishes for x > 2 reach and the inner
  // integrand vanishes for z > reach; both domains are cut there.
  const double h0 = cf.value_at_zero();
  const double reach = h0 > 0.0 ? generalized_inverse(cf, 1e-20 * h0) : 0.0;
  const bool local = 4.0 * reach < length;
  const double outer_hi = local ? 2.0 * reach : half;

  auto correlation = [&](double x) {
    const double lo = 0.5 * x;
    const double hi = local ? std::max(lo, reach) : 0.5 * x + half;
    if (!(hi > lo)) return 0.0;
    std::vector<double> pts{lo, hi};
    add_periodic(pts, x, lo, hi);
    add_periodic(pts, half, lo, hi);
    add_ladder(pts, lo, ell, lo, hi);
    add_ladder(pts, x, ell, lo, hi);
    add_ladder(pts, half, -ell, lo, hi);
    for (double k : radii)
      for (double c : {k, -k, x + k, x - k}) add_periodic(pts, c, lo, hi);
    add_periodic(pts, x + half, lo, hi);
    auto integrand = [&](double z) { return ring(0.0, z) * ring(x, z); };
    return 2.0 * numeric::integrate_pieces(integrand, std::move(pts), 1e-10);
  };

  std::vector<double> outer{0.0, outer_hi};
  add_ladder(outer, 0.0, ell, 0.0, outer_hi);
  add_ladder(outer, 0.0, 0.5 * ell, 0.0, outer_hi);
  // The correlation of two profiles with kinks at radii a, b has kinks at
  // |a - b| and a + b.
  for (double a : radii) {
    add_periodic(outer, a, 0.0, outer_hi);
    add_periodic(outer, length - a, 0.0, outer_hi);
    for (double b : radii)
      for (double c : {std::abs(a - b), a + b}) {
        add_periodic(outer, c, 0.0, outer_hi);
        add_periodic(outer, length - c, 0.0, outer_hi);
      }
  }
  const double excess = numeric::integrate_pieces(
      [&](double x) { return std::expm1(correlation(x)); }, std::move(outer), 1e-9);
  return 1.0 / mean_iso + 2.0 / length * excess;
}

double poisson_approx_prob_iso(double length, double mean_degree) {
  require_positive(length, "length");
  if (std::isnan(mean_degree)) throw InvalidParameter("mean degree is NaN");
  return -std::expm1(-length * std::exp(-mean_degree));
}

double critical_gamma(const ConnectionFunction& cf) { return 1.0 / (2.0 * l1_norm(cf)); }

double tau_range_scale(const ConnectionFunction& cf, double length, double tau) {
  require_positive(length, "length");
  require_positive(tau, "tau");
  const double log_term = std::log(tau * length);
  if (!(log_term > 0.0)) throw InvalidParameter("tau * L must exceed 1");
  return log_term / (2.0 * l1_norm(cf));
}

double mean_degree_from_tau(double length, double tau) {
  require_positive(length, "length");
  require_positive(tau, "tau");
  return std::log(tau * length);
}

double tau_from_mean_degree(double length, double mean_degree) {
  require_positive(length, "length");
  return std::exp(mean_degree) / length;
}

double ucg_theta(double eta) {
  require_positive(eta, "eta");
  return std::max(1.0 / eta, 2.0 / eta - 1.0);
}

double scaling_R(ScalingKind kind, double length, double gamma, double eta) {
  require_positive(length, "length");
  require_positive(gamma, "gamma");
  require_positive(eta, "eta");
  const double log_l = std::log(length);
  if (kind == ScalingKind::IsolatedNodes) {
    if (!(log_l > 0.0)) throw InvalidParameter("isolated-node scaling needs L > 1");
    return gamma * log_l;
  }
  const double log_log_l = log_l > 0.0 ? std::log(log_l) : -1.0;
  if (!(log_log_l > 0.0)) throw InvalidParameter("uncrossed-gap scaling needs L > e");
  return gamma * log_l / std::pow(log_log_l, ucg_theta(eta));
}

double expected_ucg_lower_bound(const ConnectionFunction& cf, double length) {
  require_positive(length, "length");
  if (cf.is_hard())
    throw AssumptionViolated(
        "uncrossed-gap bound needs a monotone profile with unbounded support; hard profile given");

  constexpr double kTailCut = 1e-14;
  auto tail = [&](double y) { return tail_integral(cf, y); };
  const double ell = cf.characteristic_range();

  double stop = ell;
  while (tail(stop) >= kTailCut) stop *= 2.0;

  std::vector<double> pts{0.0, stop};
  for (double y = 0.125 * ell; y < stop; y *= 2.0) pts.push_back(y);
  for (double k : nonsmooth_radii(cf))
    if (k < stop) pts.push_back(k);
  const double crossing = numeric::integrate_pieces(
      [&](double y) { return -std::expm1(-tail(y)); }, std::move(pts), 1e-12);
  const double exponent = crossing - std::expm1(-tail(0.0));
  return length * std::exp(-exponent);
}

double incomplete_gamma_upper(double a, double y, const SpecialFunctionAccuracy& acc) {
  return upper_incomplete_gamma(a, y, acc);
}

double tail_moment_bound(const ConnectionFunction& cf, double x) {
  const auto* g = std::get_if<GeneralizedExponential>(&cf.family());
  if (g == nullptr)
    throw UnsupportedFamily("tail moment closed form needs the generalized exponential family");
  if (!(x >= 0.0)) throw InvalidParameter("x must be nonnegative");
  const double ell = g->range * cf.scale();
  return g->beta * ell * ell / g->eta * upper_incomplete_gamma(2.0 / g->eta, std::pow(x / ell, g->eta));
}

double chernoff_rate(double alpha, double delta) {
  require_positive(alpha, "alpha");
  require_positive(delta, "delta");
  return -delta * std::log(alpha / delta) + alpha - delta;
}

double conditional_crossing_mean(const ConnectionFunction& cf, double scale) {
  require_unbounded_support(cf);
  require_positive(scale, "scale");
  const ConnectionFunction h = with_scale(cf, scale);
  const double ell = h.characteristic_range();
  const double reach = generalized_inverse(h, 1e-17 * h.value_at_zero());

  std::vector<double> grid{0.0, reach};
  add_ladder(grid, 0.0, ell, 0.0, reach);

  auto crossing_intensity = [&](double x) {
    auto integrand = [&](double z) { return (1.0 - h(z)) * h(x + z); };
    return numeric::integrate_pieces(integrand, grid, 1e-11);
  };
  return numeric::integrate_pieces(
      [&](double x) { return (1.0 - h(x)) * -std::expm1(-crossing_intensity(x)); }, grid, 1e-9);
}

double conditional_crossing_gamma_floor(const ConnectionFunction& cf) {
  require_unbounded_support(cf);
  return 0.5 * generalized_inverse(with_scale(cf, 1.0), 0.5);
}

CrossoverLength crossover_L_star(double l1_norm_value, double eta, double C) {
  require_positive(l1_norm_value, "||H||_1");
  require_positive(C, "C");
  require_positive(eta, "eta");
  if (eta < 1.0)
    throw UnsupportedRegime("the L* closed form holds for eta >= 1 only (theta = 1/eta)");
  CrossoverLength out;
  out.log_log = std::pow(2.0 * l1_norm_value / C, eta);
  const double log_l = std::exp(out.log_log);
  if (log_l < std::log(std::numeric_limits<double>::max())) out.value = std::exp(log_l);
  return out;
}

CrossoverLength crossover_L_star(const ConnectionFunction& cf, double C) {
  const auto* g = std::get_if<GeneralizedExponential>(&cf.family());
  if (g == nullptr) throw UnsupportedFamily("L* needs the generalized exponential family");
  return crossover_L_star(l1_norm(cf), g->eta, C);
}

TheoryPrediction predict(const ConnectionFunction& cf, double length, BoundaryMode boundary,
                         const PredictionOptions& options) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  TheoryPrediction out;
  out.mean_degree = mean_degree(cf, length, boundary);
  out.expected_isolated = expected_isolated(cf, length);
  out.prob_iso_poisson = poisson_approx_prob_iso(length, out.mean_degree);
  out.cv_squared_upper = nan;
  if (options.cv_bound && out.expected_isolated > 0.0)
    out.cv_squared_upper = cv_squared_upper_bound(cf, length);
  out.expected_ucg_lower = nan;
  if (options.ucg_bound && !cf.is_hard()) out.expected_ucg_lower = expected_ucg_lower_bound(cf, length);
  out.scaling_regime.kind = ScalingKind::IsolatedNodes;
  out.scaling_regime.range_scale = cf.scale();
  if (length > 1.0) out.scaling_regime.gamma = cf.scale() / std::log(length);
  return out;
}

}  // namespace srgg
