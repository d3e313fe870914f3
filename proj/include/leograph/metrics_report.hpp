#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leograph/link_engine.hpp"

namespace leograph {

struct ClassAverages {
  std::optional<double> sat;  // absent when the class is empty
  std::optional<double> gs;
};

// Per-snapshot metric bundle. Betweenness values are indexed like the
// snapshot graph: satellites by flat index, then active stations in
// station_pos order.
struct MetricsReport {
  double time_s = 0.0;
  std::optional<double> avg_degree_sat;
  std::optional<double> avg_degree_gs;
  std::optional<double> avg_clustering_sat;
  std::optional<double> avg_clustering_gs;
  std::size_t component_count = 0;
  std::vector<std::size_t> component_sizes;  // descending
  double diameter = 0.0;                     // largest component
  double apl = 0.0;                          // largest component
  std::vector<double> bc;
  std::optional<double> div_bc;  // absent when no station is active
  std::size_t isolated_gs_count = 0;

  std::uint32_t sat_count = 0;
  std::vector<std::uint32_t> station_pos;  // bc node sat_count+i -> catalog position
  PathWeighting weighting = PathWeighting::hops;

  // Sanity constraints every emitted report must satisfy. Throws
  // InternalError on breach.
  void validate() const;
};

ClassAverages degree_stats(const SnapshotGraph& sg);
ClassAverages clustering_stats(const SnapshotGraph& sg, int threads = 1);

// Runs the full metric suite over one snapshot. Distance weighting needs
// the frame at the snapshot time plus station positions.
MetricsReport compute_metrics(const TopologySnapshot& snapshot, PathWeighting weighting,
                              int threads, const FrameGeometry* frame = nullptr,
                              std::span<const Vec3> station_ecef = {});

}  // namespace leograph
