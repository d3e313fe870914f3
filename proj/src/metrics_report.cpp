#include "leograph/metrics_report.hpp"

#include <cmath>

#include "leograph/errors.hpp"

namespace leograph {

namespace {

ClassAverages averages_over_classes(const SnapshotGraph& sg, const std::vector<double>& values) {
  ClassAverages out;
  const std::uint32_t n = sg.graph.node_count;
  if (sg.sat_count > 0) {
    double sum = 0.0;
    for (std::uint32_t v = 0; v < sg.sat_count; ++v) sum += values[v];
    out.sat = sum / sg.sat_count;
  }
  if (n > sg.sat_count) {
    double sum = 0.0;
    for (std::uint32_t v = sg.sat_count; v < n; ++v) sum += values[v];
    out.gs = sum / (n - sg.sat_count);
  }
  return out;
}

}  // namespace

void MetricsReport::validate() const {
  if (apl > diameter + 1e-9) {
    throw InternalError("metrics invariant breach: apl exceeds diameter");
  }
  const std::size_t nodes = sat_count + station_pos.size();
  if (weighting == PathWeighting::hops && nodes > 0 &&
      diameter > static_cast<double>(nodes - 1)) {
    throw InternalError("metrics invariant breach: diameter exceeds node count - 1");
  }
  if (nodes > 0 && bc.size() != nodes) {
    throw InternalError("metrics invariant breach: betweenness size mismatch");
  }
  for (double v : bc) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-9)) {
      throw InternalError("metrics invariant breach: betweenness outside [0, 1]");
    }
  }
  if (div_bc.has_value()) {
    bool any_positive = false;
    for (std::size_t i = 0; i < station_pos.size(); ++i) {
      if (bc[sat_count + i] > 0.0) any_positive = true;
    }
    if (any_positive) {
      const double lo = 1.0 / static_cast<double>(station_pos.size());
      if (*div_bc < lo - 1e-12 || *div_bc > 1.0 + 1e-12) {
        throw InternalError("metrics invariant breach: divergence outside [1/n_g, 1]");
      }
    }
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < component_sizes.size(); ++i) {
    if (i > 0 && component_sizes[i] > component_sizes[i - 1]) {
      throw InternalError("metrics invariant breach: component sizes not descending");
    }
    total += component_sizes[i];
  }
  if (total != nodes) {
    throw InternalError("metrics invariant breach: component sizes do not cover the graph");
  }
}

ClassAverages degree_stats(const SnapshotGraph& sg) {
  std::vector<double> degrees(sg.graph.node_count);
  for (std::uint32_t v = 0; v < sg.graph.node_count; ++v) {
    degrees[v] = sg.graph.degree(v);
  }
  return averages_over_classes(sg, degrees);
}

ClassAverages clustering_stats(const SnapshotGraph& sg, int threads) {
  return averages_over_classes(sg, local_clustering_all(sg.graph, threads));
}

MetricsReport compute_metrics(const TopologySnapshot& snapshot, PathWeighting weighting,
                              int threads, const FrameGeometry* frame,
                              std::span<const Vec3> station_ecef) {
  const SnapshotGraph sg = snapshot_graph(snapshot, weighting, frame, station_ecef);

  MetricsReport report;
  report.time_s = snapshot.time_s;
  report.sat_count = sg.sat_count;
  report.station_pos = sg.station_pos;
  report.weighting = weighting;

  const ClassAverages deg = degree_stats(sg);
  report.avg_degree_sat = deg.sat;
  report.avg_degree_gs = deg.gs;
  const ClassAverages clust = clustering_stats(sg, threads);
  report.avg_clustering_sat = clust.sat;
  report.avg_clustering_gs = clust.gs;

  GraphAnalysis analysis = analyze_graph(sg.graph, threads);
  report.component_count = analysis.components.count;
  report.component_sizes = std::move(analysis.components.sizes_desc);
  report.diameter = analysis.largest.diameter;
  report.apl = analysis.largest.apl;
  report.bc = std::move(analysis.bc);

  report.isolated_gs_count = 0;
  for (std::uint32_t i = 0; i < sg.station_pos.size(); ++i) {
    if (sg.graph.degree(sg.sat_count + i) == 0) ++report.isolated_gs_count;
  }

  if (!sg.station_pos.empty()) {
    std::span<const double> station_bc{report.bc.data() + sg.sat_count, sg.station_pos.size()};
    report.div_bc = divergence(station_bc);
  }

  report.validate();
  return report;
}

}  // namespace leograph
