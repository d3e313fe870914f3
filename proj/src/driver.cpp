#include "leograph/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "leograph/errors.hpp"

namespace leograph {

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v.has_value() ? format_number(*v) : std::string();
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);  // '\n' endings on every platform
  if (!out) {
    throw DataError("cannot open output file '" + (dir / name).string() + "'");
  }
  return out;
}

std::filesystem::path output_dir(const SimulationConfig& config, const RunOptions& options) {
  return options.output_dir.empty() ? config.output_dir : options.output_dir;
}

constexpr char kMetricColumns[] =
    "avg_deg_sat,avg_deg_gs,clust_sat,clust_gs,components,diameter,apl,div_bc,isolated_gs";

std::string metric_cells(const MetricsReport& r) {
  std::string row;
  row += format_optional(r.avg_degree_sat);
  row += ',';
  row += format_optional(r.avg_degree_gs);
  row += ',';
  row += format_optional(r.avg_clustering_sat);
  row += ',';
  row += format_optional(r.avg_clustering_gs);
  row += ',';
  row += std::to_string(r.component_count);
  row += ',';
  row += format_number(r.diameter);
  row += ',';
  row += format_number(r.apl);
  row += ',';
  row += format_optional(r.div_bc);
  row += ',';
  row += std::to_string(r.isolated_gs_count);
  return row;
}

void write_metrics_csv(std::ofstream& out, const std::vector<MetricsReport>& reports) {
  out << "t," << kMetricColumns << "\n";
  for (const auto& r : reports) {
    out << format_number(r.time_s) << ',' << metric_cells(r) << "\n";
  }
}

void write_betweenness_csv(std::ofstream& out, const Constellation& constellation,
                           const StationCatalog& catalog,
                           const std::vector<MetricsReport>& reports) {
  out << "t,node_kind,node_id,bc\n";
  for (const auto& r : reports) {
    const std::string t = format_number(r.time_s);
    for (std::uint32_t v = 0; v < r.sat_count; ++v) {
      const SatelliteId id = constellation.sat_id(v);
      out << t << ",sat," << id.shell << ':' << id.plane << ':' << id.slot << ','
          << format_number(r.bc[v]) << "\n";
    }
    for (std::size_t i = 0; i < r.station_pos.size(); ++i) {
      out << t << ",gs," << catalog.stations[r.station_pos[i]].id << ','
          << format_number(r.bc[r.sat_count + i]) << "\n";
    }
  }
}

void write_edges_csv(std::ofstream& out, const TopologySnapshot& snapshot) {
  const std::string t = format_number(snapshot.time_s);
  auto sat_label = [&](std::uint32_t flat) {
    const SatelliteId id = snapshot.constellation->sat_id(flat);
    return std::to_string(id.shell) + ':' + std::to_string(id.plane) + ':' +
           std::to_string(id.slot);
  };
  out << "t,src_kind,src_id,dst_kind,dst_id,kind\n";
  for (const auto& [a, b] : *snapshot.isl_edges) {
    out << t << ",sat," << sat_label(a) << ",sat," << sat_label(b) << ",isl\n";
  }
  for (const auto& [sat, gs] : snapshot.fl_edges) {
    out << t << ",sat," << sat_label(sat) << ",gs," << snapshot.catalog->stations[gs].id
        << ",fl\n";
  }
}

// Step-by-step feeder-link evolution. The timeline is strictly sequential:
// links persist across steps and are re-evaluated at every step time.
class Timeline {
 public:
  Timeline(const SimulationConfig& config, const Constellation& constellation,
           const StationCatalog& catalog, const DropoutSchedule& schedule)
      : config_(config),
        constellation_(constellation),
        catalog_(catalog),
        schedule_(schedule),
        station_ecef_(station_ecef_positions(catalog)),
        isl_edges_(std::make_shared<const std::vector<Edge>>(
            build_isls(constellation, config.isl))) {}

  // Advances to step index k (time k * step), applying every intermediate
  // step. Steps must be visited in order.
  void advance_to_step(std::int64_t k) {
    while (next_step_ <= k) {
      const double t = static_cast<double>(next_step_) * config_.step_s;
      frame_ = frame_at(constellation_, t);
      active_ = catalog_.empty() ? std::vector<std::uint32_t>{}
                                 : active_set(catalog_, schedule_, t);
      fl_ = assign_feeder_links(frame_, catalog_, station_ecef_, active_, config_.feeder, fl_);
      ++next_step_;
    }
  }

  TopologySnapshot snapshot() const {
    return compose_snapshot(frame_.time_s, constellation_, catalog_, active_, isl_edges_, fl_,
                            config_.feeder, frame_, station_ecef_);
  }

  MetricsReport measure(int threads) const {
    const TopologySnapshot snap = snapshot();
    return compute_metrics(snap, config_.path_weighting, threads, &frame_, station_ecef_);
  }

  const FrameGeometry& frame() const { return frame_; }
  std::span<const Vec3> station_ecef() const { return station_ecef_; }

 private:
  const SimulationConfig& config_;
  const Constellation& constellation_;
  const StationCatalog& catalog_;
  DropoutSchedule schedule_;
  std::vector<Vec3> station_ecef_;
  std::shared_ptr<const std::vector<Edge>> isl_edges_;
  std::vector<FeederEdge> fl_;
  std::vector<std::uint32_t> active_;
  FrameGeometry frame_;
  std::int64_t next_step_ = 0;
};

std::int64_t steps_of(double time_s, double step_s) {
  return std::llround(time_s / step_s);
}

StationCatalog load_catalog(const SimulationConfig& config) {
  if (config.station_catalog.empty()) return {};
  return load_stations_file(config.station_catalog);
}

DropoutSchedule schedule_for(const SimulationConfig& config, double probability) {
  DropoutSchedule s;
  s.probability = probability;
  s.resample_interval_s = config.dropout_resample_interval_s;
  s.seed = config.dropout_seed;
  return s;
}

void accumulate_mean(std::optional<double>& mean, std::size_t& count,
                     const std::optional<double>& value) {
  if (!value.has_value()) return;
  mean = mean.value_or(0.0) + *value;
  ++count;
}

RobustnessMeans means_over_windows(double probability,
                                   std::span<const RobustnessRow> rows) {
  RobustnessMeans m;
  m.probability = probability;
  std::size_t n_deg_sat = 0, n_deg_gs = 0, n_cl_sat = 0, n_cl_gs = 0, n_div = 0;
  for (const auto& row : rows) {
    const MetricsReport& r = row.report;
    accumulate_mean(m.avg_degree_sat, n_deg_sat, r.avg_degree_sat);
    accumulate_mean(m.avg_degree_gs, n_deg_gs, r.avg_degree_gs);
    accumulate_mean(m.avg_clustering_sat, n_cl_sat, r.avg_clustering_sat);
    accumulate_mean(m.avg_clustering_gs, n_cl_gs, r.avg_clustering_gs);
    accumulate_mean(m.div_bc, n_div, r.div_bc);
    m.component_count += static_cast<double>(r.component_count);
    m.diameter += r.diameter;
    m.apl += r.apl;
    m.isolated_gs += static_cast<double>(r.isolated_gs_count);
  }
  const auto n = static_cast<double>(rows.size());
  if (n_deg_sat > 0) *m.avg_degree_sat /= static_cast<double>(n_deg_sat);
  if (n_deg_gs > 0) *m.avg_degree_gs /= static_cast<double>(n_deg_gs);
  if (n_cl_sat > 0) *m.avg_clustering_sat /= static_cast<double>(n_cl_sat);
  if (n_cl_gs > 0) *m.avg_clustering_gs /= static_cast<double>(n_cl_gs);
  if (n_div > 0) *m.div_bc /= static_cast<double>(n_div);
  if (!rows.empty()) {
    m.component_count /= n;
    m.diameter /= n;
    m.apl /= n;
    m.isolated_gs /= n;
  }
  return m;
}

}  // namespace

std::vector<double> baseline_tick_times(const SimulationConfig& config) {
  const double duration = config.baseline_duration();
  if (duration < config.warmup_s) {
    throw ConfigError("duration must be >= warmup");
  }
  std::vector<double> ticks;
  const std::int64_t warmup_steps = steps_of(config.warmup_s, config.step_s);
  const std::int64_t interval_steps = steps_of(config.metric_interval_s, config.step_s);
  const std::int64_t total_steps = steps_of(duration, config.step_s);
  for (std::int64_t k = warmup_steps + interval_steps; k <= total_steps; k += interval_steps) {
    ticks.push_back(static_cast<double>(k) * config.step_s);
  }
  return ticks;
}

std::vector<double> robustness_tick_times(const SimulationConfig& config) {
  const double duration = config.robustness_duration();
  if (config.warmup_s >= config.dropout_resample_interval_s) {
    throw ConfigError("robustness measurement requires warmup < dropout_resample_interval");
  }
  const auto windows =
      static_cast<std::int64_t>(std::floor(duration / config.dropout_resample_interval_s));
  std::vector<double> ticks;
  for (std::int64_t w = 0; w < windows; ++w) {
    const double t = static_cast<double>(w) * config.dropout_resample_interval_s +
                     config.warmup_s;
    if (t <= duration) ticks.push_back(t);
  }
  return ticks;
}

std::vector<MetricsReport> run_baseline(const SimulationConfig& config,
                                        const RunOptions& options) {
  config.validate();
  const Constellation constellation = generate_constellation(config.shells);
  const StationCatalog catalog = load_catalog(config);
  Timeline timeline(config, constellation, catalog, schedule_for(config, 0.0));

  std::vector<MetricsReport> reports;
  for (double t : baseline_tick_times(config)) {
    timeline.advance_to_step(steps_of(t, config.step_s));
    reports.push_back(timeline.measure(options.threads));
  }

  const auto dir = output_dir(config, options);
  auto metrics = open_output(dir, "metrics.csv");
  write_metrics_csv(metrics, reports);
  auto bc = open_output(dir, "betweenness.csv");
  write_betweenness_csv(bc, constellation, catalog, reports);
  return reports;
}

RobustnessResult run_robustness(const SimulationConfig& config, const RunOptions& options) {
  config.validate();
  const Constellation constellation = generate_constellation(config.shells);
  const StationCatalog catalog = load_catalog(config);
  const std::vector<double> ticks = robustness_tick_times(config);

  RobustnessResult result;
  for (double p : config.dropout_sweep) {
    Timeline timeline(config, constellation, catalog, schedule_for(config, p));
    const std::size_t first_row = result.rows.size();
    int window = 0;
    for (double t : ticks) {
      timeline.advance_to_step(steps_of(t, config.step_s));
      result.rows.push_back({p, window++, timeline.measure(options.threads)});
    }
    result.means.push_back(means_over_windows(
        p, std::span<const RobustnessRow>(result.rows).subspan(first_row)));
  }

  auto out = open_output(output_dir(config, options), "robustness.csv");
  out << "dropout_p,window,t," << kMetricColumns << "\n";
  const std::size_t per_level = ticks.size();
  for (std::size_t lvl = 0; lvl < config.dropout_sweep.size(); ++lvl) {
    for (std::size_t w = 0; w < per_level; ++w) {
      const auto& row = result.rows[lvl * per_level + w];
      out << format_number(row.probability) << ',' << row.window << ','
          << format_number(row.report.time_s) << ',' << metric_cells(row.report) << "\n";
    }
    const RobustnessMeans& m = result.means[lvl];
    out << format_number(m.probability) << ",mean,," << format_optional(m.avg_degree_sat) << ','
        << format_optional(m.avg_degree_gs) << ',' << format_optional(m.avg_clustering_sat)
        << ',' << format_optional(m.avg_clustering_gs) << ',' << format_number(m.component_count)
        << ',' << format_number(m.diameter) << ',' << format_number(m.apl) << ','
        << format_optional(m.div_bc) << ',' << format_number(m.isolated_gs) << "\n";
  }
  return result;
}

CoverageProfile run_coverage(const SimulationConfig& config, const RunOptions& options) {
  config.validate();
  const Constellation constellation = generate_constellation(config.shells);
  CoverageOptions cov = config.coverage;
  cov.threads = options.threads;
  const CoverageProfile profile = coverage_density(constellation, cov);

  auto out = open_output(output_dir(config, options), "coverage.csv");
  out << "lat_deg,shell,mean_visible\n";
  for (std::size_t b = 0; b < profile.bin_count(); ++b) {
    const std::string lat = format_number(profile.bin_center_deg(b));
    for (std::size_t s = 0; s < profile.shell_names.size(); ++s) {
      out << lat << ',' << profile.shell_names[s] << ','
          << format_number(profile.shell_mean[s][b]) << "\n";
    }
    out << lat << ",combined," << format_number(profile.combined_mean[b]) << "\n";
  }
  return profile;
}

SnapshotResult snapshot_at(const SimulationConfig& config, double t_s,
                           const RunOptions& options, bool dump_edges) {
  config.validate();
  const double duration = config.baseline_duration();
  if (t_s < 0.0 || t_s > duration) {
    throw ConfigError("snapshot time must be in [0, duration]");
  }
  if (std::abs(t_s / config.step_s - std::round(t_s / config.step_s)) > 1e-9) {
    throw ConfigError("snapshot time must be a multiple of step");
  }
  const Constellation constellation = generate_constellation(config.shells);
  const StationCatalog catalog = load_catalog(config);
  Timeline timeline(config, constellation, catalog, schedule_for(config, 0.0));
  timeline.advance_to_step(steps_of(t_s, config.step_s));

  SnapshotResult result{timeline.measure(options.threads), timeline.snapshot()};

  const auto dir = output_dir(config, options);
  std::vector<MetricsReport> one{result.report};
  auto metrics = open_output(dir, "metrics.csv");
  write_metrics_csv(metrics, one);
  auto bc = open_output(dir, "betweenness.csv");
  write_betweenness_csv(bc, constellation, catalog, one);
  if (dump_edges) {
    auto edges = open_output(dir, "edges.csv");
    write_edges_csv(edges, result.snapshot);
  }
  return result;
}

Constellation write_constellation_inventory(const SimulationConfig& config,
                                            const RunOptions& options) {
  config.validate();
  Constellation constellation = generate_constellation(config.shells);
  auto out = open_output(output_dir(config, options), "satellites.csv");
  out << "shell,plane,slot,raan_deg,phase_deg,altitude_km,inclination_deg\n";
  for (std::uint32_t v = 0; v < constellation.size(); ++v) {
    const SatelliteId id = constellation.sat_id(v);
    const OrbitalElements& el = constellation.elements(v);
    const ShellSpec& spec = constellation.shells()[static_cast<std::size_t>(id.shell)];
    out << spec.name << ',' << id.plane << ',' << id.slot << ','
        << format_number(rad_to_deg(el.raan_rad)) << ','
        << format_number(rad_to_deg(el.initial_phase_rad)) << ','
        << format_number(spec.altitude_km) << ',' << format_number(spec.inclination_deg)
        << "\n";
  }
  return constellation;
}

}  // namespace leograph
