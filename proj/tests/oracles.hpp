#pragma once

// Brute-force reference implementations used to check the metric kernels.
// Everything here is intentionally independent of the CSR code paths in
// leograph: plain adjacency matrices and explicit path enumeration.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "leograph/graph_metrics.hpp"
#include "leograph/rng.hpp"

namespace oracle {

struct DenseGraph {
  std::uint32_t n = 0;
  std::vector<std::vector<bool>> adj;

  explicit DenseGraph(std::uint32_t nodes) : n(nodes), adj(nodes, std::vector<bool>(nodes)) {}

  void add_edge(std::uint32_t u, std::uint32_t v) {
    adj[u][v] = true;
    adj[v][u] = true;
  }
};

inline DenseGraph to_dense(const leograph::Graph& g) {
  DenseGraph d(g.node_count);
  for (std::uint32_t v = 0; v < g.node_count; ++v) {
    for (std::uint32_t w : g.adjacent(v)) d.adj[v][w] = true;
  }
  return d;
}

// All-pairs hop distances by Floyd-Warshall over the adjacency matrix.
inline std::vector<std::vector<int>> all_pairs_hops(const DenseGraph& g) {
  constexpr int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> dist(g.n, std::vector<int>(g.n, inf));
  for (std::uint32_t v = 0; v < g.n; ++v) {
    dist[v][v] = 0;
    for (std::uint32_t w = 0; w < g.n; ++w) {
      if (g.adj[v][w]) dist[v][w] = 1;
    }
  }
  for (std::uint32_t k = 0; k < g.n; ++k) {
    for (std::uint32_t i = 0; i < g.n; ++i) {
      for (std::uint32_t j = 0; j < g.n; ++j) {
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
      }
    }
  }
  return dist;
}

// Diameter and APL of the component containing the most nodes, from the
// distance matrix alone.
struct PathOracle {
  double diameter = 0.0;
  double apl = 0.0;
};

inline PathOracle largest_component_paths(const DenseGraph& g) {
  constexpr int inf = std::numeric_limits<int>::max() / 4;
  const auto dist = all_pairs_hops(g);

  // Component labels from reachability.
  std::vector<int> label(g.n, -1);
  int components = 0;
  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (label[v] >= 0) continue;
    for (std::uint32_t w = 0; w < g.n; ++w) {
      if (dist[v][w] < inf) label[w] = components;
    }
    ++components;
  }
  std::vector<std::size_t> size(static_cast<std::size_t>(components), 0);
  for (std::uint32_t v = 0; v < g.n; ++v) ++size[static_cast<std::size_t>(label[v])];
  int largest = 0;
  for (int c = 1; c < components; ++c) {
    if (size[static_cast<std::size_t>(c)] > size[static_cast<std::size_t>(largest)]) largest = c;
  }

  PathOracle out;
  std::uint64_t sum = 0;
  std::uint64_t pairs = 0;
  int max_d = 0;
  for (std::uint32_t i = 0; i < g.n; ++i) {
    if (label[i] != largest) continue;
    for (std::uint32_t j = 0; j < g.n; ++j) {
      if (i == j || label[j] != largest) continue;
      sum += static_cast<std::uint64_t>(dist[i][j]);
      ++pairs;
      max_d = std::max(max_d, dist[i][j]);
    }
  }
  out.diameter = max_d;
  out.apl = pairs > 0 ? static_cast<double>(sum) / static_cast<double>(pairs) : 0.0;
  return out;
}

// Betweenness by explicit enumeration of every shortest path. For each
// ordered pair (s, t), walks all shortest paths and tallies interior visits.
inline std::vector<double> betweenness_by_enumeration(const DenseGraph& g) {
  const auto dist = all_pairs_hops(g);
  constexpr int inf = std::numeric_limits<int>::max() / 4;
  std::vector<double> bc(g.n, 0.0);
  if (g.n <= 2) return bc;

  std::vector<std::uint32_t> path;
  std::vector<std::uint64_t> interior_visits(g.n);
  std::uint64_t total_paths = 0;

  // Depth-first walk backward from t along edges that stay on a shortest
  // path from s.
  auto walk = [&](auto&& self, std::uint32_t s, std::uint32_t node) -> void {
    if (node == s) {
      ++total_paths;
      for (std::uint32_t v : path) ++interior_visits[v];
      return;
    }
    for (std::uint32_t prev = 0; prev < g.n; ++prev) {
      if (g.adj[node][prev] && dist[s][prev] + 1 == dist[s][node]) {
        const bool interior = prev != s;
        if (interior) path.push_back(prev);
        self(self, s, prev);
        if (interior) path.pop_back();
      }
    }
  };

  for (std::uint32_t s = 0; s < g.n; ++s) {
    for (std::uint32_t t = 0; t < g.n; ++t) {
      if (s == t || dist[s][t] >= inf) continue;
      std::fill(interior_visits.begin(), interior_visits.end(), 0);
      total_paths = 0;
      path.clear();
      walk(walk, s, t);
      for (std::uint32_t v = 0; v < g.n; ++v) {
        if (v == s || v == t || interior_visits[v] == 0) continue;
        bc[v] += static_cast<double>(interior_visits[v]) / static_cast<double>(total_paths);
      }
    }
  }
  const double scale =
      1.0 / (static_cast<double>(g.n - 1) * static_cast<double>(g.n - 2));
  for (double& v : bc) v *= scale;
  return bc;
}

// Clustering by scanning all neighbor pairs against the adjacency matrix.
inline double clustering_by_triangles(const DenseGraph& g, std::uint32_t node) {
  std::vector<std::uint32_t> nbrs;
  for (std::uint32_t w = 0; w < g.n; ++w) {
    if (g.adj[node][w]) nbrs.push_back(w);
  }
  if (nbrs.size() < 2) return 0.0;
  std::uint64_t closed = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (g.adj[nbrs[i]][nbrs[j]]) ++closed;
    }
  }
  return 2.0 * static_cast<double>(closed) /
         (static_cast<double>(nbrs.size()) * static_cast<double>(nbrs.size() - 1));
}

// Random connected graph: a random spanning tree plus extra random edges.
// Deterministic in the seed.
inline std::vector<leograph::Edge> random_connected_edges(std::uint32_t n, std::uint32_t extra,
                                                          std::uint64_t seed) {
  using leograph::hash_combine;
  using leograph::uniform_below;
  std::vector<leograph::Edge> edges;
  std::uint64_t counter = 0;
  auto draw = [&](std::uint64_t bound) {
    return static_cast<std::uint32_t>(uniform_below(hash_combine(seed, counter++), bound));
  };
  std::vector<std::vector<bool>> have(n, std::vector<bool>(n, false));
  for (std::uint32_t v = 1; v < n; ++v) {
    const std::uint32_t u = draw(v);
    edges.emplace_back(u, v);
    have[u][v] = have[v][u] = true;
  }
  for (std::uint32_t k = 0; k < extra; ++k) {
    const std::uint32_t u = draw(n);
    const std::uint32_t v = draw(n);
    if (u == v || have[u][v]) continue;
    edges.emplace_back(std::min(u, v), std::max(u, v));
    have[u][v] = have[v][u] = true;
  }
  return edges;
}

}  // namespace oracle
