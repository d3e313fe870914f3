#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leograph/coverage.hpp"
#include "leograph/metrics_report.hpp"
#include "leograph/sim_config.hpp"

namespace leograph {

struct RunOptions {
  int threads = 1;
  std::string output_dir;  // overrides the config's when non-empty
};

// Timeline run with the full catalog: one MetricsReport per metric-interval
// tick after warmup. Writes metrics.csv and betweenness.csv.
std::vector<MetricsReport> run_baseline(const SimulationConfig& config,
                                        const RunOptions& options);

struct RobustnessRow {
  double probability = 0.0;
  int window = 0;
  MetricsReport report;
};

// Across-window means for one dropout probability. Optional fields follow
// the per-window reports: absent when no window defined them.
struct RobustnessMeans {
  double probability = 0.0;
  std::optional<double> avg_degree_sat;
  std::optional<double> avg_degree_gs;
  std::optional<double> avg_clustering_sat;
  std::optional<double> avg_clustering_gs;
  double component_count = 0.0;
  double diameter = 0.0;
  double apl = 0.0;
  std::optional<double> div_bc;
  double isolated_gs = 0.0;
};

struct RobustnessResult {
  std::vector<RobustnessRow> rows;     // sweep-major, window-minor order
  std::vector<RobustnessMeans> means;  // one per sweep probability
};

// Dropout sweep: for each probability, rerun the timeline with the active
// station set redrawn every resample interval and measure once per window
// (at window start + warmup). Writes robustness.csv.
RobustnessResult run_robustness(const SimulationConfig& config, const RunOptions& options);

// Writes coverage.csv.
CoverageProfile run_coverage(const SimulationConfig& config, const RunOptions& options);

struct SnapshotResult {
  MetricsReport report;
  TopologySnapshot snapshot;
};

// Simulates the timeline up to t and evaluates one snapshot there. Writes
// metrics.csv and betweenness.csv, plus edges.csv when dump_edges is set.
SnapshotResult snapshot_at(const SimulationConfig& config, double t_s,
                           const RunOptions& options, bool dump_edges = false);

// Writes satellites.csv (one row per generated satellite).
Constellation write_constellation_inventory(const SimulationConfig& config,
                                            const RunOptions& options);

// Measurement times used by the runs, exposed for tests.
std::vector<double> baseline_tick_times(const SimulationConfig& config);
std::vector<double> robustness_tick_times(const SimulationConfig& config);

}  // namespace leograph
