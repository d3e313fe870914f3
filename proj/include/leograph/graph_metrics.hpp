#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace leograph {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Shortest paths are hop counts by default; the distance mode weights every
// edge by its length in km. Both run through the same source-sweep engine.
enum class PathWeighting { hops, distance };

// Immutable undirected graph in CSR form. Adjacency lists are sorted, with
// no self-loops and no parallel edges.
struct Graph {
  std::uint32_t node_count = 0;
  std::vector<std::uint32_t> offsets;    // size node_count + 1
  std::vector<std::uint32_t> neighbors;  // both directions of every edge
  std::vector<double> weights;           // parallel to neighbors; empty = unit

  // Builds the CSR form from an undirected edge list. Throws InternalError
  // on self-loops, duplicate edges, or out-of-range endpoints.
  static Graph from_edges(std::uint32_t node_count, std::span<const Edge> edges,
                          std::span<const double> edge_weights = {});

  std::size_t edge_count() const { return neighbors.size() / 2; }
  std::uint32_t degree(std::uint32_t v) const { return offsets[v + 1] - offsets[v]; }
  bool weighted() const { return !weights.empty(); }
  std::span<const std::uint32_t> adjacent(std::uint32_t v) const {
    return {neighbors.data() + offsets[v], neighbors.data() + offsets[v + 1]};
  }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
};

struct ComponentInfo {
  std::size_t count = 0;
  std::vector<std::uint32_t> label;      // per node, labels in discovery order
  std::vector<std::size_t> sizes;        // per label
  std::vector<std::size_t> sizes_desc;   // sizes sorted descending
  std::uint32_t largest_label = 0;       // ties broken toward the lower label
};

ComponentInfo connected_components(const Graph& g);

// C_v = 2 E_v / (k_v (k_v - 1)) where E_v counts edges among the neighbors
// of v; 0 by convention for degree < 2. Throws std::out_of_range for an
// unknown node.
double local_clustering(const Graph& g, std::uint32_t node);

std::vector<double> local_clustering_all(const Graph& g, int threads = 1);

struct PathStats {
  double diameter = 0.0;  // hops, or km in distance mode
  double apl = 0.0;       // mean shortest-path length over connected pairs
};

// Exact diameter and average path length of the largest component, from a
// full sweep of single-source shortest paths. A component without edges
// reports (0, 0).
PathStats diameter_apl(const Graph& g, int threads = 1);

// Same, per component, indexed by component label.
std::vector<PathStats> diameter_apl_per_component(const Graph& g, int threads = 1);

// Normalized betweenness centrality of every node: the sum over ordered
// pairs s != v != t of sigma_st(v) / sigma_st, divided by (n-1)(n-2).
// Values land in [0, 1]. Unreachable pairs contribute nothing. n <= 2
// yields all zeros.
std::vector<double> betweenness(const Graph& g, int threads = 1);

// Uniformity index of a set of centrality values:
// (sum v)^2 / (n * sum v^2). 1 when all values are equal and positive, 1/n
// under maximal concentration, 0 when every value is zero. Throws
// std::invalid_argument on empty input.
double divergence(std::span<const double> values);

// One parallel sweep computing components, largest-component paths, and
// betweenness together. Results are identical run to run and independent of
// the thread count: sources are processed in fixed chunks and float
// accumulators are reduced in chunk order.
struct GraphAnalysis {
  ComponentInfo components;
  PathStats largest;
  std::vector<double> bc;
};

GraphAnalysis analyze_graph(const Graph& g, int threads = 1);

}  // namespace leograph
