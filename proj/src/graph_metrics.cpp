#include "leograph/graph_metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <thread>

#include "leograph/errors.hpp"

namespace leograph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixed chunking keeps float reductions in a deterministic order whatever
// the thread count is.
constexpr std::uint32_t kChunkSize = 128;

// Relative tolerance for recognizing equal-length paths in distance mode.
// Hop mode compares exactly.
constexpr double kTieEps = 1e-9;

struct SourceScratch {
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<std::uint32_t> order;  // settled order, nondecreasing distance

  explicit SourceScratch(std::uint32_t n)
      : dist(n, kInf), sigma(n, 0.0), delta(n, 0.0) {
    order.reserve(n);
  }

  void reset_touched() {
    for (std::uint32_t v : order) {
      dist[v] = kInf;
      sigma[v] = 0.0;
      delta[v] = 0.0;
    }
    order.clear();
  }
};

// Single-source shortest paths: plain BFS for unit weights, lazy-deletion
// Dijkstra otherwise. Fills dist and the settled order.
void run_sssp(const Graph& g, std::uint32_t source, SourceScratch& sp) {
  sp.reset_touched();
  sp.dist[source] = 0.0;
  if (!g.weighted()) {
    sp.order.push_back(source);
    for (std::size_t head = 0; head < sp.order.size(); ++head) {
      const std::uint32_t v = sp.order[head];
      const double next = sp.dist[v] + 1.0;
      for (std::uint32_t i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
        const std::uint32_t w = g.neighbors[i];
        if (sp.dist[w] == kInf) {
          sp.dist[w] = next;
          sp.order.push_back(w);
        }
      }
    }
    return;
  }

  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  pq.emplace(0.0, source);
  std::vector<bool> settled(g.node_count, false);
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (settled[v]) continue;
    settled[v] = true;
    sp.order.push_back(v);
    for (std::uint32_t i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
      const std::uint32_t w = g.neighbors[i];
      const double nd = d + g.weights[i];
      if (nd < sp.dist[w]) {
        sp.dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
}

inline bool on_shortest_path(double du, double edge_w, double dv, bool weighted) {
  if (!weighted) return du + edge_w == dv;
  const double lhs = du + edge_w;
  return std::abs(lhs - dv) <= kTieEps * std::max({1.0, std::abs(lhs), std::abs(dv)});
}

// Path-count and dependency sweeps over the settled order; adds this
// source's dependency of every node into bc_partial.
void accumulate_dependencies(const Graph& g, std::uint32_t source, SourceScratch& sp,
                             double* bc_partial) {
  const bool weighted = g.weighted();
  sp.sigma[source] = 1.0;
  for (std::uint32_t v : sp.order) {
    if (v == source) continue;
    const double dv = sp.dist[v];
    double paths = 0.0;
    for (std::uint32_t i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
      const std::uint32_t u = g.neighbors[i];
      const double w = weighted ? g.weights[i] : 1.0;
      if (sp.dist[u] < dv && on_shortest_path(sp.dist[u], w, dv, weighted)) {
        paths += sp.sigma[u];
      }
    }
    sp.sigma[v] = paths;
  }

  for (auto it = sp.order.rbegin(); it != sp.order.rend(); ++it) {
    const std::uint32_t v = *it;
    if (v == source) continue;
    const double coef = (1.0 + sp.delta[v]) / sp.sigma[v];
    const double dv = sp.dist[v];
    for (std::uint32_t i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
      const std::uint32_t u = g.neighbors[i];
      const double w = weighted ? g.weights[i] : 1.0;
      if (sp.dist[u] < dv && on_shortest_path(sp.dist[u], w, dv, weighted)) {
        sp.delta[u] += sp.sigma[u] * coef;
      }
    }
    bc_partial[v] += sp.delta[v];
  }
}

struct ChunkAccumulator {
  std::vector<double> bc;                 // per node, only when betweenness runs
  std::vector<double> comp_dist_sum;      // per component label
  std::vector<std::uint64_t> comp_pairs;  // ordered reachable pairs
  std::vector<double> comp_ecc;           // max eccentricity seen
};

struct EngineResult {
  std::vector<double> bc;
  std::vector<double> comp_dist_sum;
  std::vector<std::uint64_t> comp_pairs;
  std::vector<double> comp_ecc;
};

EngineResult run_source_sweep(const Graph& g, const ComponentInfo& comps, bool want_bc,
                              int threads) {
  const std::uint32_t n = g.node_count;
  const std::uint32_t num_chunks = n == 0 ? 0 : (n + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkAccumulator> chunks(num_chunks);

  std::atomic<std::uint32_t> next_chunk{0};
  auto worker = [&]() {
    SourceScratch scratch(n);
    for (;;) {
      const std::uint32_t c = next_chunk.fetch_add(1);
      if (c >= num_chunks) break;
      ChunkAccumulator& acc = chunks[c];
      if (want_bc) acc.bc.assign(n, 0.0);
      acc.comp_dist_sum.assign(comps.count, 0.0);
      acc.comp_pairs.assign(comps.count, 0);
      acc.comp_ecc.assign(comps.count, 0.0);
      const std::uint32_t begin = c * kChunkSize;
      const std::uint32_t end = std::min(n, begin + kChunkSize);
      for (std::uint32_t s = begin; s < end; ++s) {
        run_sssp(g, s, scratch);
        const std::uint32_t comp = comps.label[s];
        double sum = 0.0;
        for (std::uint32_t v : scratch.order) sum += scratch.dist[v];
        acc.comp_dist_sum[comp] += sum;
        acc.comp_pairs[comp] += scratch.order.size() - 1;
        const double ecc = scratch.dist[scratch.order.back()];
        if (ecc > acc.comp_ecc[comp]) acc.comp_ecc[comp] = ecc;
        if (want_bc) accumulate_dependencies(g, s, scratch, acc.bc.data());
      }
    }
  };

  const int worker_count = std::max(1, threads);
  if (worker_count == 1 || num_chunks <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  EngineResult out;
  if (want_bc) out.bc.assign(n, 0.0);
  out.comp_dist_sum.assign(comps.count, 0.0);
  out.comp_pairs.assign(comps.count, 0);
  out.comp_ecc.assign(comps.count, 0.0);
  for (const ChunkAccumulator& acc : chunks) {
    if (acc.comp_pairs.empty()) continue;  // untouched chunk (n == 0)
    for (std::size_t cpt = 0; cpt < comps.count; ++cpt) {
      out.comp_dist_sum[cpt] += acc.comp_dist_sum[cpt];
      out.comp_pairs[cpt] += acc.comp_pairs[cpt];
      if (acc.comp_ecc[cpt] > out.comp_ecc[cpt]) out.comp_ecc[cpt] = acc.comp_ecc[cpt];
    }
    if (want_bc) {
      for (std::uint32_t v = 0; v < n; ++v) out.bc[v] += acc.bc[v];
    }
  }
  return out;
}

std::vector<double> normalize_bc(std::vector<double> raw, std::uint32_t n) {
  if (n <= 2) {
    std::fill(raw.begin(), raw.end(), 0.0);
    return raw;
  }
  const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  for (double& v : raw) v *= scale;
  return raw;
}

PathStats stats_for(const EngineResult& er, std::uint32_t comp) {
  PathStats ps;
  ps.diameter = er.comp_ecc[comp];
  ps.apl = er.comp_pairs[comp] > 0
               ? er.comp_dist_sum[comp] / static_cast<double>(er.comp_pairs[comp])
               : 0.0;
  return ps;
}

}  // namespace

Graph Graph::from_edges(std::uint32_t node_count, std::span<const Edge> edges,
                        std::span<const double> edge_weights) {
  if (!edge_weights.empty() && edge_weights.size() != edges.size()) {
    throw InternalError("edge weight list does not match edge list");
  }
  Graph g;
  g.node_count = node_count;
  g.offsets.assign(node_count + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw InternalError("edge endpoint out of range");
    }
    if (u == v) {
      throw InternalError("self-loop at node " + std::to_string(u));
    }
    ++g.offsets[u + 1];
    ++g.offsets[v + 1];
  }
  for (std::uint32_t v = 0; v < node_count; ++v) g.offsets[v + 1] += g.offsets[v];

  g.neighbors.resize(edges.size() * 2);
  const bool weighted = !edge_weights.empty();
  if (weighted) g.weights.resize(edges.size() * 2);
  std::vector<std::uint32_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    g.neighbors[cursor[u]] = v;
    g.neighbors[cursor[v]] = u;
    if (weighted) {
      g.weights[cursor[u]] = edge_weights[e];
      g.weights[cursor[v]] = edge_weights[e];
    }
    ++cursor[u];
    ++cursor[v];
  }

  // Sort each adjacency list (weights follow their neighbor) and reject
  // parallel edges.
  std::vector<std::pair<std::uint32_t, double>> row;
  for (std::uint32_t v = 0; v < node_count; ++v) {
    const std::uint32_t b = g.offsets[v];
    const std::uint32_t e = g.offsets[v + 1];
    row.clear();
    for (std::uint32_t i = b; i < e; ++i) {
      row.emplace_back(g.neighbors[i], weighted ? g.weights[i] : 0.0);
    }
    std::sort(row.begin(), row.end());
    for (std::uint32_t i = b; i < e; ++i) {
      g.neighbors[i] = row[i - b].first;
      if (weighted) g.weights[i] = row[i - b].second;
      if (i > b && g.neighbors[i] == g.neighbors[i - 1]) {
        throw InternalError("duplicate edge " + std::to_string(v) + "-" +
                            std::to_string(g.neighbors[i]));
      }
    }
  }
  return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto adj = adjacent(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

ComponentInfo connected_components(const Graph& g) {
  ComponentInfo info;
  info.label.assign(g.node_count, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> stack;
  for (std::uint32_t start = 0; start < g.node_count; ++start) {
    if (info.label[start] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto comp = static_cast<std::uint32_t>(info.count++);
    std::size_t size = 0;
    stack.push_back(start);
    info.label[start] = comp;
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      ++size;
      for (std::uint32_t w : g.adjacent(v)) {
        if (info.label[w] == std::numeric_limits<std::uint32_t>::max()) {
          info.label[w] = comp;
          stack.push_back(w);
        }
      }
    }
    info.sizes.push_back(size);
  }
  info.sizes_desc = info.sizes;
  std::sort(info.sizes_desc.begin(), info.sizes_desc.end(), std::greater<>());
  for (std::size_t c = 0; c < info.sizes.size(); ++c) {
    if (info.sizes[c] > info.sizes[info.largest_label]) {
      info.largest_label = static_cast<std::uint32_t>(c);
    }
  }
  return info;
}

double local_clustering(const Graph& g, std::uint32_t node) {
  if (node >= g.node_count) {
    throw std::out_of_range("unknown node " + std::to_string(node));
  }
  const auto adj = g.adjacent(node);
  const std::size_t k = adj.size();
  if (k < 2) return 0.0;
  std::size_t linked = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (g.has_edge(adj[i], adj[j])) ++linked;
    }
  }
  return 2.0 * static_cast<double>(linked) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

std::vector<double> local_clustering_all(const Graph& g, int threads) {
  std::vector<double> out(g.node_count, 0.0);
  const int worker_count = std::max(1, threads);
  std::atomic<std::uint32_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint32_t begin = next.fetch_add(kChunkSize);
      if (begin >= g.node_count) break;
      const std::uint32_t end = std::min(g.node_count, begin + kChunkSize);
      for (std::uint32_t v = begin; v < end; ++v) out[v] = local_clustering(g, v);
    }
  };
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

PathStats diameter_apl(const Graph& g, int threads) {
  if (g.node_count == 0) return {};
  const ComponentInfo comps = connected_components(g);
  const EngineResult er = run_source_sweep(g, comps, /*want_bc=*/false, threads);
  return stats_for(er, comps.largest_label);
}

std::vector<PathStats> diameter_apl_per_component(const Graph& g, int threads) {
  if (g.node_count == 0) return {};
  const ComponentInfo comps = connected_components(g);
  const EngineResult er = run_source_sweep(g, comps, /*want_bc=*/false, threads);
  std::vector<PathStats> out(comps.count);
  for (std::uint32_t c = 0; c < comps.count; ++c) out[c] = stats_for(er, c);
  return out;
}

std::vector<double> betweenness(const Graph& g, int threads) {
  if (g.node_count == 0) return {};
  const ComponentInfo comps = connected_components(g);
  EngineResult er = run_source_sweep(g, comps, /*want_bc=*/true, threads);
  return normalize_bc(std::move(er.bc), g.node_count);
}

double divergence(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("divergence undefined for an empty value set");
  }
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) return 0.0;
  return sum * sum / (static_cast<double>(values.size()) * sum_sq);
}

GraphAnalysis analyze_graph(const Graph& g, int threads) {
  GraphAnalysis out;
  out.components = connected_components(g);
  if (g.node_count == 0) return out;
  EngineResult er = run_source_sweep(g, out.components, /*want_bc=*/true, threads);
  out.largest = stats_for(er, out.components.largest_label);
  out.bc = normalize_bc(std::move(er.bc), g.node_count);
  return out;
}

}  // namespace leograph
