#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "leograph/constellation.hpp"
#include "leograph/graph_metrics.hpp"
#include "leograph/ground_segment.hpp"

namespace leograph {

enum class IslStyle {
  grid4,  // in-plane ring + same-slot links to both adjacent planes
  tri3,   // in-plane ring + one cross-plane link per satellite
};

enum class SeamMode {
  wrap,  // plane ring closed: plane P-1 links across to plane 0
  cut,   // cross-seam links omitted
};

struct IslConfig {
  IslStyle style = IslStyle::grid4;
  SeamMode seam = SeamMode::wrap;
};

enum class FeederKind {
  max_elevation,  // fill capacity in globally descending elevation order
  random_above,   // seeded uniform draw among satellites above a threshold
};

struct FeederPolicy {
  FeederKind kind = FeederKind::max_elevation;
  double gs_threshold_deg = 25.0;      // feeder links require at least this elevation
  double random_threshold_deg = 40.0;  // candidate floor for random_above
  int sat_capacity = 2;                // feeder links one satellite can terminate
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// A feeder link: (satellite flat index, station catalog position).
using FeederEdge = std::pair<std::uint32_t, std::uint32_t>;

// Satellite positions at one instant, Earth-fixed frame.
struct FrameGeometry {
  double time_s = 0.0;
  std::vector<Vec3> sat_ecef;
};

FrameGeometry frame_at(const Constellation& constellation, double t_s);

// Station positions never change in the Earth-fixed frame.
std::vector<Vec3> station_ecef_positions(const StationCatalog& catalog);

// Intra-shell ISL wiring. Position-independent: the edge set depends only on
// plane/slot indices, so it holds for every simulation time. Cross-plane
// adjacency pairs equal slot indices; the Walker phase offset is already in
// the generated elements. tri3 keeps the ring and adds the eastward link
// (p,s)-(p+1,s) only where p+s is even, which hands every satellite exactly
// one cross-plane terminal on even-plane shells. Shells never share ISLs.
// Throws ConfigError if a shell has fewer than 3 satellites per plane.
std::vector<Edge> build_isls(const Constellation& constellation, const IslConfig& config);

// One feeder-assignment step:
//  1. keep every previous link whose station is still active and whose
//     elevation is still at or above the threshold (handover only on
//     violation),
//  2. fill spare capacity per the policy.
// Contention under max_elevation resolves in globally descending elevation
// order, ties toward the lower (station id, satellite index). Returns the
// new link set sorted by (satellite, station).
std::vector<FeederEdge> assign_feeder_links(const FrameGeometry& frame,
                                            const StationCatalog& catalog,
                                            std::span<const Vec3> station_ecef,
                                            std::span<const std::uint32_t> active_stations,
                                            const FeederPolicy& policy,
                                            std::span<const FeederEdge> previous);

// Immutable undirected graph of the whole system at one instant. Nodes are
// all satellites plus the active stations; dropped stations are absent.
struct TopologySnapshot {
  double time_s = 0.0;
  const Constellation* constellation = nullptr;
  const StationCatalog* catalog = nullptr;
  std::vector<std::uint32_t> active_stations;  // catalog positions, ascending
  std::shared_ptr<const std::vector<Edge>> isl_edges;
  std::vector<FeederEdge> fl_edges;  // sorted by (satellite, station)

  std::size_t node_count() const {
    return constellation->size() + active_stations.size();
  }
};

// Assembles a snapshot and checks every structural invariant (undirected,
// no self-loops or duplicates, capacities respected, feeder elevations at or
// above threshold). Violations throw InternalError: they indicate a bug, not
// bad input.
TopologySnapshot compose_snapshot(double t_s, const Constellation& constellation,
                                  const StationCatalog& catalog,
                                  std::vector<std::uint32_t> active_stations,
                                  std::shared_ptr<const std::vector<Edge>> isl_edges,
                                  std::vector<FeederEdge> fl_edges,
                                  const FeederPolicy& policy, const FrameGeometry& frame,
                                  std::span<const Vec3> station_ecef);

// Snapshot rendered as a metric-ready graph: satellites keep their flat
// indices, active stations follow in [sat_count, node_count).
struct SnapshotGraph {
  Graph graph;
  std::uint32_t sat_count = 0;
  std::vector<std::uint32_t> station_pos;  // graph node sat_count+i -> catalog position
};

// Distance weighting needs the frame and station positions to measure link
// lengths; hop weighting ignores them (pass nullptr).
SnapshotGraph snapshot_graph(const TopologySnapshot& snapshot, PathWeighting weighting,
                             const FrameGeometry* frame = nullptr,
                             std::span<const Vec3> station_ecef = {});

}  // namespace leograph
