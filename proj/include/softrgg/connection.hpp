#pragma once

#include <string>
#include <variant>
#include <vector>

#include "softrgg/point_process.hpp"

namespace srgg {

/// beta * exp(-(r / range)^eta). Waxman is eta = 1, Rayleigh eta = 2.
struct GeneralizedExponential {
  double beta = 1.0;
  double range = 1.0;  // r_c
  double eta = 1.0;
};

/// 1{r <= range}: the hard (Gilbert) model.
struct Hard {
  double range = 1.0;
};

struct Knot {
  double r = 0.0;
  double h = 0.0;
};

/// Piecewise-linear profile through knots, zero beyond the last knot.
/// The first knot sits at r = 0 and values are nonincreasing.
struct Tabulated {
  std::vector<Knot> knots;
};

/// Edge-probability profile H(r), evaluated as H(r / scale).
class ConnectionFunction {
 public:
  using Family = std::variant<GeneralizedExponential, Hard, Tabulated>;

  /// Validates parameters (and table monotonicity); throws InvalidParameter.
  explicit ConnectionFunction(Family family, double scale = 1.0);

  static ConnectionFunction waxman(double range, double beta = 1.0);
  static ConnectionFunction rayleigh(double range, double beta = 1.0);
  static ConnectionFunction generalized_exponential(double beta, double range, double eta);
  static ConnectionFunction hard(double range);
  static ConnectionFunction tabulated(std::vector<Knot> knots);

  const Family& family() const noexcept { return family_; }
  double scale() const noexcept { return scale_; }

  bool is_generalized_exponential() const noexcept {
    return std::holds_alternative<GeneralizedExponential>(family_);
  }
  bool is_hard() const noexcept { return std::holds_alternative<Hard>(family_); }
  bool is_tabulated() const noexcept { return std::holds_alternative<Tabulated>(family_); }

  /// Integrable with unbounded support; only the generalized exponential qualifies.
  bool has_unbounded_support() const noexcept { return is_generalized_exponential(); }

  /// Family range parameter times scale (last knot times scale for tables).
  double characteristic_range() const noexcept;

  /// Copy with the family range parameter replaced (tables: scale replaced).
  ConnectionFunction with_range(double range) const;

  /// H(0).
  double value_at_zero() const noexcept;

  /// H(r / scale) without argument validation. r >= 0.
  double operator()(double r) const noexcept;

  std::string describe() const;

 private:
  Family family_;
  double scale_;
};

/// H(r / scale); throws InvalidParameter for r < 0.
double eval(const ConnectionFunction& cf, double r);

/// Copy with scale replaced by R (> 0).
ConnectionFunction with_scale(const ConnectionFunction& cf, double scale);

/// Radii (scale included) where H is not smooth: the hard threshold or
/// table knots. Empty for the generalized exponential.
std::vector<double> nonsmooth_radii(const ConnectionFunction& cf);

/// ||H||_1 = int_0^inf H(r) dr, including the scale.
double l1_norm(const ConnectionFunction& cf);

/// int_0^x H(r) dr.
double partial_integral(const ConnectionFunction& cf, double x);

/// int_x^inf H(r) dr.
double tail_integral(const ConnectionFunction& cf, double x);

/// int_0^x r H(r) dr.
double partial_first_moment(const ConnectionFunction& cf, double x);

/// sup{ r : H(r) >= p } for p in (0, H(0)].
double generalized_inverse(const ConnectionFunction& cf, double p);

/// Expected degree of a node. Torus: 2 int_0^{L/2} H. Line: the degree
/// averaged over node position, (1/L) int int H(|x - y|) dy dx.
double mean_degree(const ConnectionFunction& cf, double length, BoundaryMode boundary);

/// Supremum of mean_degree over all ranges (beta * L for the families here).
double max_mean_degree(const ConnectionFunction& cf, double length);

/// Copy of cf whose range (tables: scale) makes mean_degree equal target.
/// Bisection; throws InfeasibleTarget when target is out of reach.
ConnectionFunction solve_for_mean_degree(const ConnectionFunction& cf, double target,
                                         double length, BoundaryMode boundary);

/// r_c of a generalized exponential profile with the given beta, eta whose
/// mean degree is target_kbar.
double solve_rc_for_mean_degree(double target_kbar, double beta, double eta, double length,
                                BoundaryMode boundary);

/// r_c of the hard profile whose mean degree is target_kbar.
double solve_hard_rc_for_mean_degree(double target_kbar, double length, BoundaryMode boundary);

}  // namespace srgg
