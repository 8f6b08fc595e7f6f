#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "softrgg/connection.hpp"
#include "softrgg/error.hpp"

using namespace srgg;

namespace {

double quad_l1(const ConnectionFunction& cf) {
  return oracle::integrate_to_inf([&](double r) { return cf(r); }, 0.0);
}

// Torus: 2 int_0^{L/2} H. Line: (1/L) int_0^L int_0^L H(|x - y|) dy dx,
// reduced to (2/L) int_0^L (L - r) H(r) dr.
// Kinks of piecewise profiles are passed as breakpoints.
double quad_mean_degree(const ConnectionFunction& cf, double L, BoundaryMode mode, std::vector<double> kinks = {}) {
  const double top = mode == BoundaryMode::Torus ? L / 2 : L;
  kinks.push_back(0.0);
  kinks.push_back(top);
  std::sort(kinks.begin(), kinks.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < kinks.size(); ++k) {
    const double a = std::min(kinks[k], top), b = std::min(kinks[k + 1], top);
    if (mode == BoundaryMode::Torus)
      s += 2.0 * oracle::integrate([&](double r) { return cf(r); }, a, b);
    else
      s += 2.0 / L * oracle::integrate([&](double r) { return (L - r) * cf(r); }, a, b);
  }
  return s;
}

}  // namespace

TEST_CASE("eval examples") {
  CHECK(eval(ConnectionFunction::waxman(1.0), 0.0) == 1.0);
  CHECK(eval(ConnectionFunction::rayleigh(1.0), 1.0) == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK(eval(ConnectionFunction::hard(2.0), 2.000001) == 0.0);
  CHECK(eval(ConnectionFunction::hard(2.0), 2.0) == 1.0);
  CHECK_THROWS_AS(eval(ConnectionFunction::waxman(1.0), -0.5), InvalidParameter);
}

TEST_CASE("construction is validated") {
  CHECK_THROWS_AS(ConnectionFunction::waxman(0.0), InvalidParameter);
  CHECK_THROWS_AS(ConnectionFunction::waxman(1.0, 1.5), InvalidParameter);
  CHECK_THROWS_AS(ConnectionFunction::generalized_exponential(1.0, 1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(ConnectionFunction::tabulated({{0.0, 0.5}, {1.0, 0.7}}), InvalidParameter);
  CHECK_THROWS_AS(ConnectionFunction::tabulated({{0.0, 1.2}, {1.0, 0.0}}), InvalidParameter);
  CHECK_THROWS_AS(ConnectionFunction(Hard{1.0}, -1.0), InvalidParameter);
}

TEST_CASE("values are probabilities and nonincreasing") {
  const std::vector<ConnectionFunction> cfs{
      ConnectionFunction::waxman(2.0, 0.7), ConnectionFunction::rayleigh(1.0),
      ConnectionFunction::generalized_exponential(0.5, 3.0, 4.0), ConnectionFunction::hard(1.5),
      ConnectionFunction::tabulated({{0.0, 1.0}, {1.0, 0.6}, {2.0, 0.6}, {3.0, 0.0}})};
  for (const auto& cf : cfs) {
    double prev = eval(cf, 0.0);
    for (double r = 0.01; r < 10.0; r += 0.01) {
      const double h = eval(cf, r);
      REQUIRE(h >= 0.0);
      REQUIRE(h <= 1.0);
      REQUIRE(h <= prev);
      prev = h;
    }
  }
}

TEST_CASE("tabulated interpolation") {
  const auto cf = ConnectionFunction::tabulated({{0.0, 1.0}, {2.0, 0.5}, {4.0, 0.0}});
  CHECK(eval(cf, 1.0) == doctest::Approx(0.75));
  CHECK(eval(cf, 3.0) == doctest::Approx(0.25));
  CHECK(eval(cf, 5.0) == 0.0);
  CHECK(l1_norm(cf) == doctest::Approx(2.0));
  CHECK(eval(with_scale(cf, 2.0), 2.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(l1_norm(ConnectionFunction::tabulated({{0.0, 1.0}, {1.0, 0.5}})), InvalidParameter);
}

TEST_CASE("l1 norm examples") {
  CHECK(l1_norm(ConnectionFunction::waxman(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(l1_norm(ConnectionFunction::rayleigh(1.0)) - 0.8862269255) < 1e-9);
  CHECK(std::abs(quad_l1(ConnectionFunction::rayleigh(1.0)) - 0.8862269255) < 1e-9);
  CHECK(l1_norm(ConnectionFunction::hard(2.5)) == doctest::Approx(2.5));
  for (double s : {0.3, 2.0, 7.0}) {
    const auto cf = ConnectionFunction::generalized_exponential(0.8, 1.3, 1.7);
    CHECK(l1_norm(with_scale(cf, s)) / l1_norm(cf) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("closed forms agree with quadrature on the parameter grid") {
  for (double beta : {0.5, 1.0})
    for (double eta : {1.0, 2.0, 4.0})
      for (double rc : {0.5, 1.0, 5.0}) {
        const auto cf = ConnectionFunction::generalized_exponential(beta, rc, eta);
        CAPTURE(beta);
        CAPTURE(eta);
        CAPTURE(rc);
        CHECK(l1_norm(cf) == doctest::Approx(quad_l1(cf)).epsilon(1e-8));
        for (double L : {3.0, 20.0, 500.0})
          for (auto mode : {BoundaryMode::Torus, BoundaryMode::Line})
            CHECK(mean_degree(cf, L, mode) == doctest::Approx(quad_mean_degree(cf, L, mode)).epsilon(1e-8));
        for (double x : {0.0, 0.7, 3.0, 12.0}) {
          CHECK(partial_integral(cf, x) ==
                doctest::Approx(oracle::integrate([&](double r) { return cf(r); }, 0.0, x)).epsilon(1e-9));
          CHECK(partial_first_moment(cf, x) ==
                doctest::Approx(oracle::integrate([&](double r) { return r * cf(r); }, 0.0, x)).epsilon(1e-9));
        }
      }
}

TEST_CASE("mean degree examples") {
  CHECK(std::abs(mean_degree(ConnectionFunction::waxman(1.0), 1e4, BoundaryMode::Torus) - 2.0) < 1e-6);
  CHECK(mean_degree(ConnectionFunction::hard(1.0), 10.0, BoundaryMode::Torus) == 2.0);
  CHECK(mean_degree(ConnectionFunction::hard(8.0), 10.0, BoundaryMode::Torus) == doctest::Approx(10.0));
  const auto tab = ConnectionFunction::tabulated({{0.0, 1.0}, {1.0, 0.5}, {3.0, 0.0}});
  CHECK(mean_degree(tab, 40.0, BoundaryMode::Line) ==
        doctest::Approx(quad_mean_degree(tab, 40.0, BoundaryMode::Line, {1.0, 3.0})).epsilon(1e-8));
  for (const auto& cf : {ConnectionFunction::waxman(3.0), ConnectionFunction::rayleigh(0.2),
                         ConnectionFunction::hard(4.0), tab})
    for (double L : {1.0, 10.0, 1000.0}) {
      CHECK(mean_degree(cf, L, BoundaryMode::Torus) <= 2.0 * l1_norm(cf) * (1 + 1e-12));
      CHECK(mean_degree(cf, L, BoundaryMode::Line) <= mean_degree(cf, L, BoundaryMode::Torus) * (1 + 1e-12));
    }
}

TEST_CASE("generalized inverse") {
  CHECK(generalized_inverse(ConnectionFunction::waxman(1.0), std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  const auto rayleigh = ConnectionFunction::rayleigh(1.0);
  CHECK(generalized_inverse(rayleigh, 0.5) == doctest::Approx(0.832555).epsilon(1e-6));
  CHECK(generalized_inverse(rayleigh, 0.5) ==
        doctest::Approx(oracle::bisect_inverse([&](double r) { return eval(rayleigh, r); }, 0.5, 1.0)).epsilon(1e-10));
  CHECK(generalized_inverse(ConnectionFunction::hard(2.0), 0.5) == 2.0);
  const auto tab = ConnectionFunction::tabulated({{0.0, 1.0}, {1.0, 0.6}, {2.0, 0.6}, {3.0, 0.0}});
  CHECK(generalized_inverse(tab, 0.6) == doctest::Approx(2.0));
  CHECK_THROWS_AS(generalized_inverse(rayleigh, 0.0), InvalidParameter);
  CHECK_THROWS_AS(generalized_inverse(ConnectionFunction::waxman(1.0, 0.5), 0.7), InvalidParameter);
  for (const auto& cf : {ConnectionFunction::waxman(2.0, 0.9), rayleigh,
                         ConnectionFunction::generalized_exponential(1.0, 0.5, 4.0)})
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.8})
      CHECK(eval(cf, generalized_inverse(cf, p)) >= p - 1e-10);
}

TEST_CASE("solving for a mean degree") {
  const double rc = solve_rc_for_mean_degree(std::log(1000.0), 1.0, 1.0, 1000.0, BoundaryMode::Torus);
  CHECK(rc == doctest::Approx(3.45388).epsilon(1e-5));
  CHECK(2.0 * rc * (1.0 - std::exp(-1000.0 / (2 * rc))) == doctest::Approx(std::log(1000.0)).epsilon(1e-9));
  CHECK(solve_hard_rc_for_mean_degree(4.0, 1000.0, BoundaryMode::Torus) == doctest::Approx(2.0).epsilon(1e-9));
  for (double k : {2.0, 5.0, 10.0})
    for (auto mode : {BoundaryMode::Torus, BoundaryMode::Line})
      for (const auto& cf : {ConnectionFunction::waxman(1.0), ConnectionFunction::rayleigh(1.0),
                             ConnectionFunction::hard(1.0),
                             ConnectionFunction::tabulated({{0.0, 1.0}, {1.0, 0.0}})}) {
        const auto solved = solve_for_mean_degree(cf, k, 200.0, mode);
        CHECK(mean_degree(solved, 200.0, mode) == doctest::Approx(k).epsilon(1e-7));
      }
  CHECK_THROWS_AS(solve_for_mean_degree(ConnectionFunction::waxman(1.0, 0.5), 60.0, 100.0, BoundaryMode::Torus),
                  InfeasibleTarget);
  CHECK_THROWS_AS(solve_for_mean_degree(ConnectionFunction::waxman(1.0), -1.0, 100.0, BoundaryMode::Torus),
                  InfeasibleTarget);
}

TEST_CASE("scaling") {
  const auto cf = ConnectionFunction::waxman(1.0);
  CHECK(eval(with_scale(cf, 3.0), 3.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(l1_norm(with_scale(cf, 5.0)) == doctest::Approx(5.0 * l1_norm(cf)).epsilon(1e-12));
  const auto same = with_scale(ConnectionFunction::rayleigh(1.7), 1.0);
  for (double r = 0.0; r < 6.0; r += 0.1) CHECK(eval(same, r) == eval(ConnectionFunction::rayleigh(1.7), r));
  CHECK_THROWS_AS(with_scale(cf, 0.0), InvalidParameter);
}
