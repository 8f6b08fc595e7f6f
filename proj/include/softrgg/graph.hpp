#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "softrgg/connection.hpp"
#include "softrgg/point_process.hpp"
#include "softrgg/rng.hpp"

namespace srgg {

/// Pairs with H(r) <= this are skipped without a Bernoulli draw by default.
inline constexpr double kDefaultTailEpsilon = 1e-12;

struct Edge {
  std::uint32_t u = 0;  // u < v, indices into the sorted point set
  std::uint32_t v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct ComponentLabels {
  std::size_t count = 0;
  std::vector<std::uint32_t> labels;  // 0..count-1, ordered by leftmost member
};

/// One realized soft random geometric graph.
struct GraphSample {
  PointSet points;
  std::vector<Edge> edges;
  std::vector<std::uint32_t> component_label;
  std::size_t component_count = 0;
  double tail_epsilon = 0.0;
  double cutoff_used = 0.0;  // window radius; 0 in exact mode
  std::uint64_t seed = 0;

  friend bool operator==(const GraphSample&, const GraphSample&) = default;
};

/// Draws an independent Bernoulli(H(r_ij)) edge for every pair, in order
/// (i ascending, j ascending). With tail_epsilon > 0 only pairs inside the
/// window r <= generalized_inverse(cf, tail_epsilon) with H(r) > tail_epsilon
/// consume a draw.
GraphSample sample_graph(const PointSet& points, const ConnectionFunction& cf, RandomStream& rng,
                         double tail_epsilon = kDefaultTailEpsilon);

/// Builds a sample from an explicit edge list (validated, components computed).
GraphSample make_graph(PointSet points, std::vector<Edge> edges, std::uint64_t seed = 0);

/// Disjoint-set union over the edges.
ComponentLabels connected_components(std::size_t node_count, std::span<const Edge> edges);

/// Per-node degree.
std::vector<std::uint32_t> degrees(const GraphSample& sample);

/// Text dump: "L boundary seed", then "node <i> <pos>" and "edge <i> <j>" lines.
void write_dump(std::ostream& out, const GraphSample& sample);
GraphSample read_dump(std::istream& in);

}  // namespace srgg
