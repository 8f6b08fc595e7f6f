#pragma once

namespace srgg {

/// Convergence control for the series / continued-fraction evaluations.
struct SpecialFunctionAccuracy {
  double rel_tol = 1e-10;
  int max_iterations = 2000;

  /// Throws InvalidParameter unless 0 < rel_tol < 1e-6 and max_iterations > 0.
  void validate() const;
};

/// Complete Gamma function for a > 0.
double gamma_function(double a);

/// gamma(a, y) = int_0^y z^(a-1) e^(-z) dz.
double lower_incomplete_gamma(double a, double y, const SpecialFunctionAccuracy& acc = {});

/// Gamma(a, y) = int_y^inf z^(a-1) e^(-z) dz.
///
/// Series expansion of the lower function for y < a + 1, modified Lentz
/// continued fraction for the upper function otherwise. Throws
/// InvalidParameter for a <= 0 or y < 0.
double upper_incomplete_gamma(double a, double y, const SpecialFunctionAccuracy& acc = {});

}  // namespace srgg
