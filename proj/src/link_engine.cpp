#include "leograph/link_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

#include "leograph/errors.hpp"
#include "leograph/rng.hpp"
#include "leograph/spatial_index.hpp"

namespace leograph {

namespace {

Edge normalized(std::uint32_t a, std::uint32_t b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Extra query margin over the visibility cap, in degrees, absorbing grid
// quantization.
constexpr double kQuerySlopDeg = 1.0;

double max_sat_altitude_km(std::span<const Vec3> sat_ecef) {
  double max_r = kEarthRadiusKm;
  for (const Vec3& p : sat_ecef) max_r = std::max(max_r, norm(p));
  return max_r - kEarthRadiusKm;
}

}  // namespace

void FeederPolicy::validate() const {
  if (gs_threshold_deg < 0.0 || gs_threshold_deg >= 90.0) {
    throw ConfigError("feeder gs_threshold must be in [0, 90), got " +
                      std::to_string(gs_threshold_deg));
  }
  if (random_threshold_deg < 0.0 || random_threshold_deg >= 90.0) {
    throw ConfigError("feeder random_threshold must be in [0, 90), got " +
                      std::to_string(random_threshold_deg));
  }
  if (sat_capacity < 1) {
    throw ConfigError("feeder sat_capacity must be >= 1, got " + std::to_string(sat_capacity));
  }
}

FrameGeometry frame_at(const Constellation& constellation, double t_s) {
  return {t_s, constellation.positions_ecef(t_s)};
}

std::vector<Vec3> station_ecef_positions(const StationCatalog& catalog) {
  std::vector<Vec3> out(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    out[i] = geodetic_to_ecef(catalog.stations[i].location);
  }
  return out;
}

std::vector<Edge> build_isls(const Constellation& constellation, const IslConfig& config) {
  std::vector<Edge> edges;
  for (std::size_t shell = 0; shell < constellation.shell_count(); ++shell) {
    const ShellSpec& spec = constellation.shells()[shell];
    const int planes = spec.num_planes;
    const int slots = spec.sats_per_plane;
    if (slots < 3) {
      throw ConfigError("shell '" + spec.name +
                        "': ISL ring undefined with fewer than 3 satellites per plane");
    }
    const std::uint32_t base = constellation.shell_begin(static_cast<int>(shell));
    auto sat = [&](int p, int s) {
      return base + static_cast<std::uint32_t>(p * slots + s);
    };

    // In-plane rings are always closed.
    for (int p = 0; p < planes; ++p) {
      for (int s = 0; s < slots; ++s) {
        edges.push_back(normalized(sat(p, s), sat(p, (s + 1) % slots)));
      }
    }

    if (planes < 2) continue;
    const int last_plane = config.seam == SeamMode::wrap ? planes : planes - 1;
    for (int p = 0; p < last_plane; ++p) {
      const int pe = (p + 1) % planes;
      for (int s = 0; s < slots; ++s) {
        if (config.style == IslStyle::tri3 && (p + s) % 2 != 0) continue;
        const std::uint32_t a = sat(p, s);
        const std::uint32_t b = sat(pe, s);
        if (a != b) edges.push_back(normalized(a, b));
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<FeederEdge> assign_feeder_links(const FrameGeometry& frame,
                                            const StationCatalog& catalog,
                                            std::span<const Vec3> station_ecef,
                                            std::span<const std::uint32_t> active_stations,
                                            const FeederPolicy& policy,
                                            std::span<const FeederEdge> previous) {
  policy.validate();
  const std::size_t n_sats = frame.sat_ecef.size();
  std::vector<int> sat_links(n_sats, 0);
  std::vector<int> gs_links(catalog.size(), 0);
  std::vector<char> active(catalog.size(), 0);
  for (std::uint32_t pos : active_stations) active[pos] = 1;

  std::vector<FeederEdge> result;
  std::vector<std::vector<std::uint32_t>> sats_of_gs(catalog.size());

  // Retention: links survive while the elevation holds and the station stays
  // active. Processed in (station, satellite) order so a capacity reduction
  // truncates deterministically.
  std::vector<FeederEdge> prev(previous.begin(), previous.end());
  std::sort(prev.begin(), prev.end(), [](const FeederEdge& a, const FeederEdge& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  for (const auto& [sat, gs] : prev) {
    if (!active[gs]) continue;
    if (gs_links[gs] >= catalog.stations[gs].max_links) continue;
    if (sat_links[sat] >= policy.sat_capacity) continue;
    if (elevation_angle_deg(station_ecef[gs], frame.sat_ecef[sat]) < policy.gs_threshold_deg) {
      continue;
    }
    result.emplace_back(sat, gs);
    ++gs_links[gs];
    ++sat_links[sat];
    sats_of_gs[gs].push_back(sat);
  }

  // Fill spare capacity.
  const double cap_deg =
      max_central_angle_deg(max_sat_altitude_km(frame.sat_ecef), policy.gs_threshold_deg) +
      kQuerySlopDeg;
  const SphereGrid grid(frame.sat_ecef);
  std::vector<std::uint32_t> candidates;

  auto already_linked = [&](std::uint32_t gs, std::uint32_t sat) {
    const auto& linked = sats_of_gs[gs];
    return std::find(linked.begin(), linked.end(), sat) != linked.end();
  };

  if (policy.kind == FeederKind::max_elevation) {
    struct Candidate {
      double elevation;
      std::uint32_t gs_id;
      std::uint32_t gs_pos;
      std::uint32_t sat;
    };
    std::vector<Candidate> pool;
    for (std::uint32_t gs : active_stations) {
      if (gs_links[gs] >= catalog.stations[gs].max_links) continue;
      candidates.clear();
      grid.query(station_ecef[gs], cap_deg, candidates);
      for (std::uint32_t sat : candidates) {
        if (already_linked(gs, sat)) continue;
        const double elev = elevation_angle_deg(station_ecef[gs], frame.sat_ecef[sat]);
        if (elev >= policy.gs_threshold_deg) {
          pool.push_back({elev, catalog.stations[gs].id, gs, sat});
        }
      }
    }
    std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
      if (a.elevation != b.elevation) return a.elevation > b.elevation;
      return std::tie(a.gs_id, a.sat) < std::tie(b.gs_id, b.sat);
    });
    for (const Candidate& c : pool) {
      if (gs_links[c.gs_pos] >= catalog.stations[c.gs_pos].max_links) continue;
      if (sat_links[c.sat] >= policy.sat_capacity) continue;
      result.emplace_back(c.sat, c.gs_pos);
      ++gs_links[c.gs_pos];
      ++sat_links[c.sat];
      sats_of_gs[c.gs_pos].push_back(c.sat);
    }
  } else {
    // Stations draw in ascending id order; every draw is keyed on
    // (seed, time, station, draw#) so runs replay exactly.
    std::vector<std::uint32_t> order(active_stations.begin(), active_stations.end());
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return catalog.stations[a].id < catalog.stations[b].id;
    });
    const std::uint64_t time_key =
        hash_combine(policy.seed, std::bit_cast<std::uint64_t>(frame.time_s));
    for (std::uint32_t gs : order) {
      const int spare = catalog.stations[gs].max_links - gs_links[gs];
      if (spare <= 0) continue;
      candidates.clear();
      grid.query(station_ecef[gs], cap_deg, candidates);
      std::vector<std::uint32_t> eligible;
      for (std::uint32_t sat : candidates) {
        if (sat_links[sat] >= policy.sat_capacity) continue;
        if (already_linked(gs, sat)) continue;
        if (elevation_angle_deg(station_ecef[gs], frame.sat_ecef[sat]) >=
            policy.random_threshold_deg) {
          eligible.push_back(sat);
        }
      }
      std::sort(eligible.begin(), eligible.end());
      const std::uint64_t gs_key = hash_combine(time_key, catalog.stations[gs].id);
      for (int k = 0; k < spare && !eligible.empty(); ++k) {
        const std::uint64_t draw = hash_combine(gs_key, static_cast<std::uint64_t>(k));
        const auto pick = static_cast<std::size_t>(uniform_below(draw, eligible.size()));
        const std::uint32_t sat = eligible[pick];
        result.emplace_back(sat, gs);
        ++gs_links[gs];
        ++sat_links[sat];
        sats_of_gs[gs].push_back(sat);
        eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
  }

  std::sort(result.begin(), result.end());
  return result;
}

TopologySnapshot compose_snapshot(double t_s, const Constellation& constellation,
                                  const StationCatalog& catalog,
                                  std::vector<std::uint32_t> active_stations,
                                  std::shared_ptr<const std::vector<Edge>> isl_edges,
                                  std::vector<FeederEdge> fl_edges, const FeederPolicy& policy,
                                  const FrameGeometry& frame,
                                  std::span<const Vec3> station_ecef) {
  if (frame.time_s != t_s) {
    throw InternalError("snapshot geometry computed at a different time than the snapshot");
  }
  if (frame.sat_ecef.size() != constellation.size()) {
    throw InternalError("snapshot geometry does not cover the constellation");
  }

  std::sort(active_stations.begin(), active_stations.end());
  if (std::adjacent_find(active_stations.begin(), active_stations.end()) !=
      active_stations.end()) {
    throw InternalError("duplicate active station in snapshot");
  }
  for (std::uint32_t pos : active_stations) {
    if (pos >= catalog.size()) throw InternalError("active station out of catalog range");
  }

  const std::uint32_t n_sats = constellation.size();
  Edge last{0, 0};
  bool first = true;
  for (const auto& [a, b] : *isl_edges) {
    if (a >= n_sats || b >= n_sats) throw InternalError("ISL endpoint out of range");
    if (a >= b) throw InternalError("ISL edge not normalized");
    if (!first && Edge{a, b} <= last) throw InternalError("ISL edges not sorted/unique");
    last = {a, b};
    first = false;
  }

  std::sort(fl_edges.begin(), fl_edges.end());
  std::vector<int> sat_links(n_sats, 0);
  std::vector<int> gs_links(catalog.size(), 0);
  std::vector<char> active(catalog.size(), 0);
  for (std::uint32_t pos : active_stations) active[pos] = 1;
  FeederEdge prev_fl{0, 0};
  first = true;
  for (const auto& [sat, gs] : fl_edges) {
    if (sat >= n_sats) throw InternalError("feeder link satellite out of range");
    if (gs >= catalog.size() || !active[gs]) {
      throw InternalError("feeder link references an inactive station");
    }
    if (!first && FeederEdge{sat, gs} == prev_fl) throw InternalError("duplicate feeder link");
    prev_fl = {sat, gs};
    first = false;
    if (++sat_links[sat] > policy.sat_capacity) {
      throw InternalError("satellite feeder capacity exceeded");
    }
    if (++gs_links[gs] > catalog.stations[gs].max_links) {
      throw InternalError("station feeder capacity exceeded");
    }
    const double elev = elevation_angle_deg(station_ecef[gs], frame.sat_ecef[sat]);
    if (elev < policy.gs_threshold_deg) {
      throw InternalError("feeder link below the elevation threshold");
    }
  }

  TopologySnapshot snap;
  snap.time_s = t_s;
  snap.constellation = &constellation;
  snap.catalog = &catalog;
  snap.active_stations = std::move(active_stations);
  snap.isl_edges = std::move(isl_edges);
  snap.fl_edges = std::move(fl_edges);
  return snap;
}

SnapshotGraph snapshot_graph(const TopologySnapshot& snapshot, PathWeighting weighting,
                             const FrameGeometry* frame, std::span<const Vec3> station_ecef) {
  SnapshotGraph out;
  out.sat_count = snapshot.constellation->size();
  out.station_pos = snapshot.active_stations;

  std::vector<std::uint32_t> node_of_station(snapshot.catalog->size(), 0);
  for (std::uint32_t i = 0; i < out.station_pos.size(); ++i) {
    node_of_station[out.station_pos[i]] = out.sat_count + i;
  }

  std::vector<Edge> edges;
  edges.reserve(snapshot.isl_edges->size() + snapshot.fl_edges.size());
  edges.insert(edges.end(), snapshot.isl_edges->begin(), snapshot.isl_edges->end());
  for (const auto& [sat, gs] : snapshot.fl_edges) {
    edges.emplace_back(sat, node_of_station[gs]);
  }

  const auto node_count =
      static_cast<std::uint32_t>(out.sat_count + out.station_pos.size());
  if (weighting == PathWeighting::hops) {
    out.graph = Graph::from_edges(node_count, edges);
    return out;
  }

  if (frame == nullptr || frame->time_s != snapshot.time_s) {
    throw InternalError("distance weighting requires geometry at the snapshot time");
  }
  std::vector<double> weights;
  weights.reserve(edges.size());
  for (const auto& [a, b] : *snapshot.isl_edges) {
    weights.push_back(norm(frame->sat_ecef[a] - frame->sat_ecef[b]));
  }
  for (const auto& [sat, gs] : snapshot.fl_edges) {
    weights.push_back(slant_range_km(station_ecef[gs], frame->sat_ecef[sat]));
  }
  out.graph = Graph::from_edges(node_count, edges, weights);
  return out;
}

}  // namespace leograph
