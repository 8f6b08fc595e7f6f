// Independent reference implementations used as test oracles. Nothing here
// shares code with the library beyond its public types.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "softrgg/graph.hpp"

namespace oracle {

// Double-exponential quadrature; the library itself uses Gauss-Kronrod.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  boost::math::quadrature::tanh_sinh<double> q(15);
  return q.integrate(f, a, b, tol);
}

// Finite integral split at the given interior points.
inline double integrate_split(const std::function<double(double)>& f, double a, double b,
                              std::vector<double> cuts, double tol = 1e-13) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = std::clamp(cuts[k], a, b), hi = std::clamp(cuts[k + 1], a, b);
    s += integrate(f, lo, hi, tol);
  }
  return s;
}

inline double integrate_to_inf(const std::function<double(double)>& f, double a) {
  boost::math::quadrature::exp_sinh<double> q(12);
  return q.integrate([&](double t) { return f(t); }, a, std::numeric_limits<double>::infinity(), 1e-13);
}

// Bisection for the largest r with f(r) >= p, for nonincreasing f.
inline double bisect_inverse(const std::function<double(double)>& f, double p, double hi) {
  double lo = 0.0;
  while (f(hi) >= p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= p ? lo : hi) = mid;
  }
  return lo;
}

inline std::size_t bfs_component_count(std::size_t n, const std::vector<srgg::Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto v : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          q.push(v);
        }
    }
  }
  return count;
}

// Same-component test from BFS, for checking labels pairwise.
inline std::vector<std::size_t> bfs_labels(std::size_t n, const std::vector<srgg::Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    std::queue<std::size_t> q;
    q.push(s);
    label[s] = next;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto v : adj[u])
        if (label[v] == n) {
          label[v] = next;
          q.push(v);
        }
    }
    ++next;
  }
  return label;
}

inline std::vector<std::uint32_t> adjacency_degrees(std::size_t n, const std::vector<srgg::Edge>& edges) {
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (const auto& e : edges) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  std::vector<std::uint32_t> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) deg[i] += static_cast<std::uint32_t>(adj[i][j]);
  return deg;
}

// Cut i separates {0..i} from {i+1..n-1}; checks every pair across it
// against the edge list.
inline std::vector<std::uint32_t> brute_force_gaps(std::size_t n, const std::vector<srgg::Edge>& edges) {
  std::vector<std::uint32_t> gaps;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool crossed = false;
    for (std::size_t a = 0; a <= i && !crossed; ++a)
      for (std::size_t b = i + 1; b < n && !crossed; ++b)
        for (const auto& e : edges)
          if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
            crossed = true;
            break;
          }
    if (!crossed) gaps.push_back(static_cast<std::uint32_t>(i));
  }
  return gaps;
}

// Erdos-Renyi style edge list on n nodes with edge density p.
inline std::vector<srgg::Edge> random_edges(std::mt19937_64& gen, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<srgg::Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (coin(gen)) edges.push_back({i, j});
  return edges;
}

inline std::vector<double> evenly_spaced(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
  return x;
}

}  // namespace oracle
