#pragma once

#include <optional>

#include "softrgg/connection.hpp"
#include "softrgg/point_process.hpp"
#include "softrgg/special_functions.hpp"

namespace srgg {

enum class ScalingKind { IsolatedNodes, UncrossedGaps };

struct ScalingRegime {
  double gamma = 0.0;
  double range_scale = 0.0;  // R_L
  ScalingKind kind = ScalingKind::IsolatedNodes;
};

/// Analytic predictions attached to one parameter point.
struct TheoryPrediction {
  double expected_isolated = 0.0;
  double mean_degree = 0.0;
  double prob_iso_poisson = 0.0;
  double cv_squared_upper = 0.0;    // NaN when not evaluated
  double expected_ucg_lower = 0.0;  // NaN when the profile has bounded support
  ScalingRegime scaling_regime;
};

// ---------------------------------------------------------------------------
// Isolated nodes (torus distance throughout)
// ---------------------------------------------------------------------------

/// Probability that a node at any fixed location is isolated:
/// exp(-mean_degree(cf, L, Torus)).
double prob_isolation_at_point(const ConnectionFunction& cf, double length);

/// E[N_iso] = L exp(-2 int_0^{L/2} H).
double expected_isolated(const ConnectionFunction& cf, double length);

/// Upper bound on the squared coefficient of variation of N_iso:
///
///   1 / E[N_iso] + (1/L) int_0^L (exp(g(x)) - 1) dx,
///   g(x) = int_0^L h(0, z) h(x, z) dz,
///
/// with h the torus-distance profile. g is a circular autocorrelation; it is
/// symmetric about x = L/2 and its integrand is symmetric about z = x/2, so
/// both integrals run over half their domain. Throws DegenerateInput when
/// E[N_iso] underflows to zero.
double cv_squared_upper_bound(const ConnectionFunction& cf, double length);

/// 1 - exp(-L e^{-kbar}): probability of at least one isolated node under
/// the Poisson approximation.
double poisson_approx_prob_iso(double length, double mean_degree);

/// gamma = 1 / (2 ||H||_1); pass the profile at unit scale.
double critical_gamma(const ConnectionFunction& cf);

/// Range scale R_L = ln(tau L) / (2 ||H||_1) for which E[N_iso] -> 1/tau.
double tau_range_scale(const ConnectionFunction& cf, double length, double tau);
/// Asymptotic mean degree ln(tau L) of the tau parameterization.
double mean_degree_from_tau(double length, double tau);
/// Inverse of mean_degree_from_tau: tau = e^kbar / L.
double tau_from_mean_degree(double length, double mean_degree);

// ---------------------------------------------------------------------------
// Scaling regimes
// ---------------------------------------------------------------------------

/// theta = max(1/eta, 2/eta - 1).
double ucg_theta(double eta);

/// IsolatedNodes: gamma ln L. UncrossedGaps: gamma ln L / (ln ln L)^theta,
/// which needs L > e.
double scaling_R(ScalingKind kind, double length, double gamma, double eta);

// ---------------------------------------------------------------------------
// Uncrossed gaps
// ---------------------------------------------------------------------------

/// Jensen lower bound on the expected number of uncrossed gaps:
///
///   L exp(-( int_0^inf (1 - exp(-T(y))) dy + 1 - exp(-T(0)) )),
///   T(y) = int_y^inf H.
///
/// The outer integral stops where T drops below 1e-14. Throws
/// AssumptionViolated for the hard profile.
double expected_ucg_lower_bound(const ConnectionFunction& cf, double length);

/// Gamma(a, y) = int_y^inf z^(a-1) e^-z dz.
double incomplete_gamma_upper(double a, double y, const SpecialFunctionAccuracy& acc = {});

/// int_x^inf z H(z) dz = (beta r_c^2 / eta) Gamma(2/eta, (x / r_c)^eta), with
/// r_c including the scale. Generalized exponential only.
double tail_moment_bound(const ConnectionFunction& cf, double x);

/// Poisson lower-tail rate I_alpha(delta) = -delta ln(alpha / delta) + alpha - delta.
double chernoff_rate(double alpha, double delta);

/// Expected number of nodes on (0, inf) with a neighbour on (-inf, 0), given
/// an isolated node at the origin, for the profile rescaled to R:
///
///   int_0^inf (1 - H(x/R)) (1 - exp(-int_0^inf (1 - H(z/R)) H((x + z)/R) dz)) dx.
///
/// The scale of cf is replaced by R.
double conditional_crossing_mean(const ConnectionFunction& cf, double scale);

/// Lower limit of conditional_crossing_mean / R: H^{-1}(1/2) / 2 at unit scale.
double conditional_crossing_gamma_floor(const ConnectionFunction& cf);

struct CrossoverLength {
  double log_log = 0.0;         // ln ln L*
  std::optional<double> value;  // L* when representable as a double
};

/// L* = exp(exp((2 ||H||_1 / C)^eta)) for eta >= 1. C has no default.
CrossoverLength crossover_L_star(double l1_norm_value, double eta, double C);
CrossoverLength crossover_L_star(const ConnectionFunction& cf, double C);

// ---------------------------------------------------------------------------

struct PredictionOptions {
  bool cv_bound = true;
  bool ucg_bound = true;
};

/// Bundles the predictions for one point. mean_degree uses the given
/// boundary; the isolation quantities use the torus formulas.
TheoryPrediction predict(const ConnectionFunction& cf, double length, BoundaryMode boundary,
                         const PredictionOptions& options = {});

}  // namespace srgg
