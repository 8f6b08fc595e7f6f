#include "softrgg/special_functions.hpp"

#include <cmath>
#include <limits>

#include "softrgg/error.hpp"

namespace srgg {

namespace {

void check_arguments(double a, double y) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw InvalidParameter("incomplete gamma requires a > 0");
  if (!(y >= 0.0)) throw InvalidParameter("incomplete gamma requires y >= 0");
}

// y^a e^-y, evaluated in log space.
double prefactor(double a, double y) { return std::exp(a * std::log(y) - y); }

double lower_series(double a, double y, const SpecialFunctionAccuracy& acc) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n <= acc.max_iterations; ++n) {
    term *= y / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * acc.rel_tol * 1e-3) return prefactor(a, y) * sum;
  }
  throw Error("incomplete gamma series failed to converge");
}

double upper_continued_fraction(double a, double y, const SpecialFunctionAccuracy& acc) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = y + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= acc.max_iterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < acc.rel_tol * 1e-3) return prefactor(a, y) * h;
  }
  throw Error("incomplete gamma continued fraction failed to converge");
}

}  // namespace

void SpecialFunctionAccuracy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-6))
    throw InvalidParameter("special-function rel_tol must lie in (0, 1e-6)");
  if (max_iterations <= 0) throw InvalidParameter("max_iterations must be positive");
}

double gamma_function(double a) {
  if (!(a > 0.0)) throw InvalidParameter("gamma function requires a > 0");
  return std::tgamma(a);
}

double lower_incomplete_gamma(double a, double y, const SpecialFunctionAccuracy& acc) {
  acc.validate();
  check_arguments(a, y);
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return std::tgamma(a);
  if (y < a + 1.0) return lower_series(a, y, acc);
  return std::tgamma(a) - upper_continued_fraction(a, y, acc);
}

double upper_incomplete_gamma(double a, double y, const SpecialFunctionAccuracy& acc) {
  acc.validate();
  check_arguments(a, y);
  if (y == 0.0) return std::tgamma(a);
  if (std::isinf(y)) return 0.0;
  if (y < a + 1.0) return std::tgamma(a) - lower_series(a, y, acc);
  return upper_continued_fraction(a, y, acc);
}

}  // namespace srgg
