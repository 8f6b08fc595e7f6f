#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "softrgg/rng.hpp"

namespace srgg {

/// Line treats [0, L) as a segment; Torus identifies 0 with L.
enum class BoundaryMode { Line, Torus };

std::string_view to_string(BoundaryMode mode) noexcept;
/// Accepts "line" or "torus"; throws InvalidParameter otherwise.
BoundaryMode parse_boundary(std::string_view text);

/// Sorted node positions of one realization on [0, L).
class PointSet {
 public:
  PointSet() = default;

  /// Validates that positions are strictly ascending and inside [0, L).
  static PointSet from_positions(double length, BoundaryMode boundary,
                                 std::vector<double> positions, std::uint64_t seed = 0);

  double length() const noexcept { return length_; }
  BoundaryMode boundary() const noexcept { return boundary_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  std::span<const double> positions() const noexcept { return positions_; }
  double operator[](std::size_t i) const noexcept { return positions_[i]; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  PointSet(double length, BoundaryMode boundary, std::vector<double> positions,
           std::uint64_t seed)
      : length_(length), boundary_(boundary), seed_(seed), positions_(std::move(positions)) {}

  double length_ = 1.0;
  BoundaryMode boundary_ = BoundaryMode::Line;
  std::uint64_t seed_ = 0;
  std::vector<double> positions_;

  friend PointSet sample_ppp(double, BoundaryMode, RandomStream&);
};

/// Unit-intensity Poisson point process on [0, L): Poisson(L) count, then
/// sorted i.i.d. uniform positions.
PointSet sample_ppp(double length, BoundaryMode boundary, RandomStream& rng);

/// |x - y| on the line, min(|x - y|, L - |x - y|) on the torus.
double distance(double x, double y, double length, BoundaryMode boundary);

namespace detail {
inline double distance_unchecked(double x, double y, double length,
                                 BoundaryMode boundary) noexcept {
  const double d = x < y ? y - x : x - y;
  if (boundary == BoundaryMode::Torus) {
    const double wrapped = length - d;
    return wrapped < d ? wrapped : d;
  }
  return d;
}
}  // namespace detail

}  // namespace srgg
