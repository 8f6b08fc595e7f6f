#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "softrgg/error.hpp"
#include "softrgg/point_process.hpp"

using namespace srgg;

TEST_CASE("count is Poisson with mean and variance L") {
  RandomStream rng(11);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double c = static_cast<double>(sample_ppp(10.0, BoundaryMode::Line, rng).size());
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / n;
  const double var = (sum2 - n * mean * mean) / (n - 1);
  CHECK(std::abs(mean - 10.0) < 0.1);
  CHECK(std::abs(var - 10.0) < 0.45);
}

TEST_CASE("fixed seed reproduces the point set") {
  for (auto mode : {BoundaryMode::Line, BoundaryMode::Torus}) {
    RandomStream a(5), b(5);
    CHECK(sample_ppp(50.0, mode, a) == sample_ppp(50.0, mode, b));
  }
}

TEST_CASE("positions strictly ascending inside [0, L)") {
  RandomStream rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    const auto pts = sample_ppp(100.0, rep % 2 ? BoundaryMode::Torus : BoundaryMode::Line, rng);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      REQUIRE(pts[i] >= 0.0);
      REQUIRE(pts[i] < 100.0);
      if (i > 0) REQUIRE(pts[i - 1] < pts[i]);
    }
  }
}

TEST_CASE("pooled positions pass a Kolmogorov-Smirnov test against uniform") {
  RandomStream rng(21);
  std::vector<double> pooled;
  while (pooled.size() < 20000) {
    const auto pts = sample_ppp(10.0, BoundaryMode::Line, rng);
    for (double x : pts.positions()) pooled.push_back(x / 10.0);
  }
  std::sort(pooled.begin(), pooled.end());
  const double n = static_cast<double>(pooled.size());
  double d = 0.0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    d = std::max(d, std::abs((i + 1) / n - pooled[i]));
    d = std::max(d, std::abs(pooled[i] - i / n));
  }
  // Asymptotic critical value at significance 0.001.
  CHECK(d < 1.9495 / std::sqrt(n));
}

TEST_CASE("distance examples") {
  CHECK(distance(0.1, 9.9, 10.0, BoundaryMode::Torus) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(distance(0.1, 9.9, 10.0, BoundaryMode::Line) == doctest::Approx(9.8).epsilon(1e-12));
  for (auto mode : {BoundaryMode::Line, BoundaryMode::Torus}) CHECK(distance(3.3, 3.3, 10.0, mode) == 0.0);
  CHECK_THROWS_AS(distance(-0.1, 1.0, 10.0, BoundaryMode::Line), InvalidParameter);
  CHECK_THROWS_AS(distance(0.1, 10.0, 10.0, BoundaryMode::Torus), InvalidParameter);
}

TEST_CASE("torus distance is symmetric and translation invariant") {
  RandomStream rng(4);
  const double L = 37.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform() * L, y = rng.uniform() * L, s = rng.uniform() * L;
    const double d = distance(x, y, L, BoundaryMode::Torus);
    CHECK(d == distance(y, x, L, BoundaryMode::Torus));
    CHECK(d <= L / 2);
    const double d2 = distance(std::fmod(x + s, L), std::fmod(y + s, L), L, BoundaryMode::Torus);
    CHECK(std::abs(d - d2) < 1e-12);
  }
}

TEST_CASE("invalid inputs") {
  RandomStream rng(1);
  CHECK_THROWS_AS(sample_ppp(0.0, BoundaryMode::Line, rng), InvalidParameter);
  CHECK_THROWS_AS(sample_ppp(-1.0, BoundaryMode::Line, rng), InvalidParameter);
  CHECK_THROWS_AS(PointSet::from_positions(10.0, BoundaryMode::Line, {2.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(PointSet::from_positions(10.0, BoundaryMode::Line, {1.0, 10.0}), InvalidParameter);
  CHECK_THROWS_AS(parse_boundary("ring"), InvalidParameter);
  CHECK(parse_boundary("torus") == BoundaryMode::Torus);
  CHECK(to_string(BoundaryMode::Line) == "line");
}
