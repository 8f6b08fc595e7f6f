#include "softrgg/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "softrgg/error.hpp"

namespace srgg {

std::string_view to_string(BoundaryMode mode) noexcept {
  return mode == BoundaryMode::Torus ? "torus" : "line";
}

BoundaryMode parse_boundary(std::string_view text) {
  if (text == "line") return BoundaryMode::Line;
  if (text == "torus") return BoundaryMode::Torus;
  throw InvalidParameter("unknown boundary mode '" + std::string(text) +
                         "' (expected line or torus)");
}

PointSet PointSet::from_positions(double length, BoundaryMode boundary,
                                  std::vector<double> positions, std::uint64_t seed) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw InvalidParameter("point set length must be positive and finite");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double x = positions[i];
    if (!(x >= 0.0 && x < length))
      throw InvalidParameter("position " + std::to_string(x) + " outside [0, L)");
    if (i > 0 && !(positions[i - 1] < x))
      throw InvalidParameter("positions must be strictly ascending");
  }
  return PointSet(length, boundary, std::move(positions), seed);
}

PointSet sample_ppp(double length, BoundaryMode boundary, RandomStream& rng) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw InvalidParameter("PPP length must be positive and finite");

  std::poisson_distribution<std::uint64_t> count_dist(length);
  const std::uint64_t count = count_dist(rng);

  // Largest double strictly below L; u * L can round up to L.
  const double below_length = std::nextafter(length, 0.0);
  std::vector<double> positions;
  positions.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    double x = rng.uniform() * length;
    if (x >= length) x = boundary == BoundaryMode::Torus ? 0.0 : below_length;
    positions.push_back(x);
  }
  std::sort(positions.begin(), positions.end());
  // Exact ties have probability ~2^-53 per pair; keep strict ordering anyway.
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  return PointSet(length, boundary, std::move(positions), rng.seed());
}

double distance(double x, double y, double length, BoundaryMode boundary) {
  if (!(length > 0.0)) throw InvalidParameter("length must be positive");
  if (!(x >= 0.0 && x < length) || !(y >= 0.0 && y < length))
    throw InvalidParameter("distance arguments must lie in [0, L)");
  return detail::distance_unchecked(x, y, length, boundary);
}

}  // namespace srgg
