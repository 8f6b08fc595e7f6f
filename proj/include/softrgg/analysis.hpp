#pragma once

#include <cstdint>
#include <vector>

#include "softrgg/graph.hpp"

namespace srgg {

struct IsolatedNodes {
  std::size_t count = 0;
  std::vector<std::uint32_t> indices;
};

struct UncrossedGaps {
  std::size_t count = 0;
  std::vector<std::uint32_t> indices;  // left endpoint i of the empty cut (i, i + 1)
};

/// Disconnection taxonomy of one sample.
struct DiagnosisReport {
  bool is_connected = true;
  std::size_t n_isolated = 0;
  std::vector<std::uint32_t> isolated_indices;
  bool gaps_applicable = true;  // false on the torus
  std::size_t n_uncrossed_gaps = 0;
  std::vector<std::uint32_t> gap_indices;
  bool has_split = false;  // disconnected with no isolated node and no uncrossed gap
  std::size_t component_count = 0;
};

/// Nodes of degree zero. A single-node graph reports that node.
IsolatedNodes find_isolated(const GraphSample& sample);

/// Node i (i < N - 1) marks an uncrossed gap when no edge (a, b) has
/// a <= i < b. Line boundary only; throws ModeMismatch on the torus, where one
/// uncrossed cut does not disconnect the cycle.
UncrossedGaps find_uncrossed_gaps(const GraphSample& sample);

/// Samples with N <= 1 count as connected.
DiagnosisReport diagnose(const GraphSample& sample);

}  // namespace srgg
