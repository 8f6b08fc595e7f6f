#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace srgg::numeric {

/// Adaptive 31-point Gauss-Kronrod integral of f over [a, b].
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-11) {
  if (!(b > a)) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 25, rel_tol,
                                                                       &error);
}

/// Sum of adaptive integrals over consecutive breakpoints. Breakpoints are
/// sorted and deduplicated first; kinks of the integrand belong here.
template <class F>
double integrate_pieces(F&& f, std::vector<double> breakpoints, double rel_tol = 1e-11) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  double total = 0.0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    total += integrate(f, breakpoints[i - 1], breakpoints[i], rel_tol);
  return total;
}

}  // namespace srgg::numeric
