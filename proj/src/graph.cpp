#include "softrgg/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "softrgg/error.hpp"

namespace srgg {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void finish(GraphSample& g) {
  auto cc = connected_components(g.points.size(), g.edges);
  g.component_count = cc.count;
  g.component_label = std::move(cc.labels);
}

}  // namespace

ComponentLabels connected_components(std::size_t node_count, std::span<const Edge> edges) {
  DisjointSets sets(node_count);
  for (const Edge& e : edges) sets.unite(e.u, e.v);

  ComponentLabels out;
  out.labels.assign(node_count, 0);
  constexpr std::uint32_t unset = ~0u;
  std::vector<std::uint32_t> root_label(node_count, unset);
  for (std::uint32_t i = 0; i < node_count; ++i) {
    const std::uint32_t root = sets.find(i);
    if (root_label[root] == unset) root_label[root] = static_cast<std::uint32_t>(out.count++);
    out.labels[i] = root_label[root];
  }
  return out;
}

GraphSample sample_graph(const PointSet& points, const ConnectionFunction& cf, RandomStream& rng,
                         double tail_epsilon) {
  if (!(tail_epsilon >= 0.0 && tail_epsilon < 1.0))
    throw InvalidParameter("tail_epsilon must lie in [0, 1)");

  GraphSample g;
  g.points = points;
  g.tail_epsilon = tail_epsilon;
  g.seed = rng.seed();

  const auto pos = points.positions();
  const std::size_t n = pos.size();
  const double length = points.length();
  const BoundaryMode boundary = points.boundary();

  auto try_edge = [&](std::size_t i, std::size_t j, double r) {
    const double p = cf(r);
    if (tail_epsilon > 0.0 && p <= tail_epsilon) return;
    if (rng.uniform() < p)
      g.edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  };

  const bool windowed = tail_epsilon > 0.0;
  if (!windowed) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        try_edge(i, j, detail::distance_unchecked(pos[i], pos[j], length, boundary));
    finish(g);
    return g;
  }

  // Every pair has H <= epsilon: nothing to draw.
  if (cf.value_at_zero() <= tail_epsilon) {
    finish(g);
    return g;
  }

  const double cutoff = generalized_inverse(cf, tail_epsilon);
  g.cutoff_used = cutoff;
  const bool wrap = boundary == BoundaryMode::Torus;

  if (wrap && cutoff >= 0.5 * length) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        try_edge(i, j, detail::distance_unchecked(pos[i], pos[j], length, boundary));
    finish(g);
    return g;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double xi = pos[i];
    std::size_t j = i + 1;
    for (; j < n && pos[j] - xi <= cutoff; ++j) try_edge(i, j, pos[j] - xi);
    if (!wrap) continue;
    // Pairs that are close across the identified endpoint. Their direct
    // distance exceeds L/2 > cutoff, so they are disjoint from the loop above.
    const double threshold = xi + length - cutoff;
    auto first = std::lower_bound(pos.begin() + static_cast<std::ptrdiff_t>(j), pos.end(), threshold);
    for (auto it = first; it != pos.end(); ++it) {
      const auto k = static_cast<std::size_t>(it - pos.begin());
      try_edge(i, k, length - (*it - xi));
    }
  }
  finish(g);
  return g;
}

GraphSample make_graph(PointSet points, std::vector<Edge> edges, std::uint64_t seed) {
  const std::size_t n = points.size();
  std::vector<Edge> sorted = edges;
  for (const Edge& e : edges) {
    if (!(e.u < e.v) || e.v >= n)
      throw InvalidParameter("edge indices must satisfy u < v < node count");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidParameter("duplicate edge");

  GraphSample g;
  g.points = std::move(points);
  g.edges = std::move(edges);
  g.seed = seed;
  finish(g);
  return g;
}

std::vector<std::uint32_t> degrees(const GraphSample& sample) {
  std::vector<std::uint32_t> deg(sample.points.size(), 0);
  for (const Edge& e : sample.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

void write_dump(std::ostream& out, const GraphSample& sample) {
  out << format_double(sample.points.length()) << ' ' << to_string(sample.points.boundary())
      << ' ' << sample.seed << '\n';
  const auto pos = sample.points.positions();
  for (std::size_t i = 0; i < pos.size(); ++i)
    out << "node " << i << ' ' << format_double(pos[i]) << '\n';
  for (const Edge& e : sample.edges) out << "edge " << e.u << ' ' << e.v << '\n';
}

GraphSample read_dump(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameter("graph dump: missing header");
  std::istringstream header(line);
  double length = 0.0;
  std::string boundary;
  std::uint64_t seed = 0;
  if (!(header >> length >> boundary >> seed)) throw InvalidParameter("graph dump: bad header");

  std::vector<double> positions;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tag;
    row >> tag;
    if (tag == "node") {
      std::size_t idx = 0;
      double x = 0.0;
      if (!(row >> idx >> x) || idx != positions.size())
        throw InvalidParameter("graph dump: bad node line '" + line + "'");
      positions.push_back(x);
    } else if (tag == "edge") {
      Edge e;
      if (!(row >> e.u >> e.v)) throw InvalidParameter("graph dump: bad edge line '" + line + "'");
      edges.push_back(e);
    } else {
      throw InvalidParameter("graph dump: unknown record '" + tag + "'");
    }
  }
  auto points = PointSet::from_positions(length, parse_boundary(boundary), std::move(positions), seed);
  return make_graph(std::move(points), std::move(edges), seed);
}

}  // namespace srgg
