#include "softrgg/analysis.hpp"

#include <algorithm>

#include "softrgg/error.hpp"

namespace srgg {

IsolatedNodes find_isolated(const GraphSample& sample) {
  IsolatedNodes out;
  const auto deg = degrees(sample);
  for (std::uint32_t i = 0; i < deg.size(); ++i) {
    if (deg[i] == 0) out.indices.push_back(i);
  }
  out.count = out.indices.size();
  return out;
}

UncrossedGaps find_uncrossed_gaps(const GraphSample& sample) {
  if (sample.points.boundary() != BoundaryMode::Line)
    throw ModeMismatch("uncrossed gaps are only defined on the line");

  const std::size_t n = sample.points.size();
  UncrossedGaps out;
  if (n < 2) return out;

  // reach[a] = largest right endpoint among edges leaving a to the right.
  std::vector<std::uint32_t> reach(n);
  for (std::uint32_t i = 0; i < n; ++i) reach[i] = i;
  for (const Edge& e : sample.edges) reach[e.u] = std::max(reach[e.u], e.v);

  std::uint32_t max_reach = 0;
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    max_reach = std::max(max_reach, reach[i]);
    if (max_reach <= i) out.indices.push_back(i);
  }
  out.count = out.indices.size();
  return out;
}

DiagnosisReport diagnose(const GraphSample& sample) {
  DiagnosisReport report;
  const std::size_t n = sample.points.size();
  report.component_count = sample.component_count;
  report.is_connected = n <= 1 || sample.component_count == 1;

  auto iso = find_isolated(sample);
  report.n_isolated = iso.count;
  report.isolated_indices = std::move(iso.indices);

  report.gaps_applicable = sample.points.boundary() == BoundaryMode::Line;
  if (report.gaps_applicable) {
    auto gaps = find_uncrossed_gaps(sample);
    report.n_uncrossed_gaps = gaps.count;
    report.gap_indices = std::move(gaps.indices);
  }
  report.has_split =
      !report.is_connected && report.n_isolated == 0 && report.n_uncrossed_gaps == 0;
  return report;
}

}  // namespace srgg
