#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "leograph/geometry.hpp"

namespace leograph {

struct GroundStation {
  std::uint32_t id = 0;
  std::string name;
  GeodeticPoint location;
  int max_links = 8;  // simultaneous feeder links the site can terminate
};

struct StationCatalog {
  std::vector<GroundStation> stations;  // source row order preserved

  std::size_t size() const { return stations.size(); }
  bool empty() const { return stations.empty(); }
};

// Randomized outage model: each station is independently excluded with the
// given probability, redrawn once per resample window.
struct DropoutSchedule {
  double probability = 0.0;
  double resample_interval_s = 1000.0;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// Reads a catalog in CSV form. Header required; columns `name`, `lat_deg`,
// `lon_deg` mandatory, `id`, `alt_m`, `max_links` optional (defaults: row
// index, 0, 8). Throws DataError with the offending line number.
StationCatalog load_stations(std::istream& source);

StationCatalog load_stations_file(const std::string& path);

// Indices (catalog positions) of the stations operational at time t.
// Deterministic in (seed, floor(t / resample_interval)): the same window
// always yields the same subset.
std::vector<std::uint32_t> active_set(const StationCatalog& catalog,
                                      const DropoutSchedule& schedule, double t_s);

}  // namespace leograph
