#include "leograph/ground_segment.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "leograph/errors.hpp"
#include "leograph/rng.hpp"

namespace leograph {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const char* what, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": malformed " + what + " value '" + s + "'");
  }
}

long parse_long(const std::string& s, const char* what, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": malformed " + what + " value '" + s + "'");
  }
}

}  // namespace

void DropoutSchedule::validate() const {
  if (probability < 0.0 || probability > 1.0) {
    throw ConfigError("dropout probability must be in [0, 1], got " + std::to_string(probability));
  }
  if (!(resample_interval_s > 0.0)) {
    throw ConfigError("dropout resample interval must be > 0");
  }
}

StationCatalog load_stations(std::istream& source) {
  std::string line;
  if (!std::getline(source, line)) {
    throw DataError("line 1: missing catalog header");
  }

  static const std::set<std::string> known = {"id", "name", "lat_deg", "lon_deg", "alt_m", "max_links"};
  std::map<std::string, std::size_t> columns;
  {
    auto fields = split_csv_line(line);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      std::string col = strip(fields[i]);
      if (!known.count(col)) {
        throw DataError("line 1: unknown column '" + col + "'");
      }
      if (!columns.emplace(col, i).second) {
        throw DataError("line 1: duplicate column '" + col + "'");
      }
    }
    for (const char* required : {"name", "lat_deg", "lon_deg"}) {
      if (!columns.count(required)) {
        throw DataError(std::string("line 1: missing required column '") + required + "'");
      }
    }
  }

  StationCatalog catalog;
  std::set<std::uint32_t> seen_ids;
  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    auto fields = split_csv_line(line);
    auto cell = [&](const char* col) -> std::string {
      auto it = columns.find(col);
      if (it == columns.end()) return "";
      if (it->second >= fields.size()) {
        throw DataError("line " + std::to_string(line_no) + ": row has too few fields");
      }
      return strip(fields[it->second]);
    };

    GroundStation gs;
    const std::string id_text = cell("id");
    if (id_text.empty()) {
      gs.id = static_cast<std::uint32_t>(catalog.stations.size());
    } else {
      long id = parse_long(id_text, "id", line_no);
      if (id < 0) throw DataError("line " + std::to_string(line_no) + ": negative station id");
      gs.id = static_cast<std::uint32_t>(id);
    }
    if (!seen_ids.insert(gs.id).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate station id " +
                      std::to_string(gs.id));
    }

    gs.name = cell("name");
    gs.location.latitude_deg = parse_double(cell("lat_deg"), "lat_deg", line_no);
    gs.location.longitude_deg = parse_double(cell("lon_deg"), "lon_deg", line_no);
    const std::string alt = cell("alt_m");
    gs.location.altitude_m = alt.empty() ? 0.0 : parse_double(alt, "alt_m", line_no);
    const std::string links = cell("max_links");
    gs.max_links = links.empty() ? 8 : static_cast<int>(parse_long(links, "max_links", line_no));

    if (!gs.location.valid()) {
      throw DataError("line " + std::to_string(line_no) + ": latitude/longitude out of bounds (" +
                      std::to_string(gs.location.latitude_deg) + ", " +
                      std::to_string(gs.location.longitude_deg) + ")");
    }
    if (gs.max_links < 1) {
      throw DataError("line " + std::to_string(line_no) + ": max_links must be >= 1");
    }
    catalog.stations.push_back(std::move(gs));
  }
  return catalog;
}

StationCatalog load_stations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open station catalog '" + path + "'");
  }
  try {
    return load_stations(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<std::uint32_t> active_set(const StationCatalog& catalog,
                                      const DropoutSchedule& schedule, double t_s) {
  schedule.validate();
  const auto window = static_cast<std::uint64_t>(std::floor(t_s / schedule.resample_interval_s));
  std::vector<std::uint32_t> active;
  active.reserve(catalog.stations.size());
  const std::uint64_t window_key = hash_combine(schedule.seed, window);
  for (std::uint32_t i = 0; i < catalog.stations.size(); ++i) {
    const double u = uniform01(hash_combine(window_key, catalog.stations[i].id));
    if (u >= schedule.probability) {
      active.push_back(i);
    }
  }
  return active;
}

}  // namespace leograph
