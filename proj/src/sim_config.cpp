#include "leograph/sim_config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "leograph/errors.hpp"
#include "leograph/rng.hpp"

namespace leograph {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(context + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T field_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("invalid value for '") + key + "'");
  }
}

ShellSpec parse_shell(const json& obj) {
  if (!obj.is_object()) throw ConfigError("shell entries must be objects");
  reject_unknown_keys(obj, {"name", "altitude", "inclination", "num_planes", "sats_per_plane",
                            "phasing_factor"},
                      "shell");
  ShellSpec spec;
  for (const char* key : {"name", "altitude", "inclination", "num_planes", "sats_per_plane"}) {
    if (!obj.contains(key)) {
      throw ConfigError(std::string("shell: missing required key '") + key + "'");
    }
  }
  spec.name = field_or<std::string>(obj, "name", "");
  spec.altitude_km = field_or<double>(obj, "altitude", 0.0);
  spec.inclination_deg = field_or<double>(obj, "inclination", 0.0);
  spec.num_planes = field_or<int>(obj, "num_planes", 0);
  spec.sats_per_plane = field_or<int>(obj, "sats_per_plane", 0);
  spec.phasing_factor = field_or<int>(obj, "phasing_factor", 1);
  return spec;
}

IslStyle parse_isl_style(const std::string& s) {
  if (s == "grid4") return IslStyle::grid4;
  if (s == "tri3") return IslStyle::tri3;
  throw ConfigError("isl.style must be 'grid4' or 'tri3', got '" + s + "'");
}

SeamMode parse_seam(const std::string& s) {
  if (s == "wrap") return SeamMode::wrap;
  if (s == "cut") return SeamMode::cut;
  throw ConfigError("isl.seam must be 'wrap' or 'cut', got '" + s + "'");
}

FeederKind parse_feeder_kind(const std::string& s) {
  if (s == "max_elevation") return FeederKind::max_elevation;
  if (s == "random_above") return FeederKind::random_above;
  throw ConfigError("feeder.kind must be 'max_elevation' or 'random_above', got '" + s + "'");
}

PathWeighting parse_weighting(const std::string& s) {
  if (s == "hops") return PathWeighting::hops;
  if (s == "distance") return PathWeighting::distance;
  throw ConfigError("path_weighting must be 'hops' or 'distance', got '" + s + "'");
}

bool is_multiple(double value, double base) {
  if (base <= 0.0) return false;
  const double ratio = value / base;
  return std::abs(ratio - std::round(ratio)) < 1e-9;
}

}  // namespace

void SimulationConfig::validate() const {
  for (const auto& spec : shells) spec.validate();
  feeder.validate();
  if (!(step_s > 0.0)) throw ConfigError("step must be > 0");
  if (warmup_s < 0.0) throw ConfigError("warmup must be >= 0");
  if (duration_s.has_value() && *duration_s < warmup_s) {
    throw ConfigError("duration must be >= warmup");
  }
  if (!(metric_interval_s > 0.0) || !is_multiple(metric_interval_s, step_s)) {
    throw ConfigError("metric_interval must be a positive multiple of step");
  }
  if (!is_multiple(warmup_s, step_s)) {
    throw ConfigError("warmup must be a multiple of step");
  }
  if (!(dropout_resample_interval_s > 0.0) ||
      !is_multiple(dropout_resample_interval_s, step_s)) {
    throw ConfigError("dropout_resample_interval must be a positive multiple of step");
  }
  if (dropout_sweep.empty()) {
    throw ConfigError("dropout_sweep must not be empty");
  }
  for (double p : dropout_sweep) {
    if (p < 0.0 || p > 1.0) {
      throw ConfigError("dropout_sweep entries must be in [0, 1], got " + std::to_string(p));
    }
  }
}

SimulationConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(doc,
                      {"shells", "isl", "feeder", "station_catalog", "duration", "step", "warmup",
                       "metric_interval", "dropout_sweep", "dropout_resample_interval", "seeds",
                       "path_weighting", "output_dir", "coverage"},
                      "config");

  SimulationConfig cfg;
  if (doc.contains("shells")) {
    if (!doc["shells"].is_array()) throw ConfigError("'shells' must be an array");
    cfg.shells.clear();
    for (const auto& entry : doc["shells"]) cfg.shells.push_back(parse_shell(entry));
  }
  if (doc.contains("isl")) {
    const json& isl = doc["isl"];
    reject_unknown_keys(isl, {"style", "seam"}, "isl");
    cfg.isl.style = parse_isl_style(field_or<std::string>(isl, "style", "grid4"));
    cfg.isl.seam = parse_seam(field_or<std::string>(isl, "seam", "wrap"));
  }
  if (doc.contains("feeder")) {
    const json& feeder = doc["feeder"];
    reject_unknown_keys(feeder, {"kind", "gs_threshold", "random_threshold", "sat_capacity"},
                        "feeder");
    cfg.feeder.kind = parse_feeder_kind(field_or<std::string>(feeder, "kind", "max_elevation"));
    cfg.feeder.gs_threshold_deg = field_or<double>(feeder, "gs_threshold", 25.0);
    cfg.feeder.random_threshold_deg = field_or<double>(feeder, "random_threshold", 40.0);
    cfg.feeder.sat_capacity = field_or<int>(feeder, "sat_capacity", 2);
  }
  cfg.station_catalog = field_or<std::string>(doc, "station_catalog", "");
  if (!cfg.station_catalog.empty() && !base_dir.empty()) {
    std::filesystem::path p(cfg.station_catalog);
    if (p.is_relative()) {
      cfg.station_catalog = (std::filesystem::path(base_dir) / p).string();
    }
  }
  if (doc.contains("duration")) cfg.duration_s = field_or<double>(doc, "duration", 0.0);
  cfg.step_s = field_or<double>(doc, "step", cfg.step_s);
  cfg.warmup_s = field_or<double>(doc, "warmup", cfg.warmup_s);
  cfg.metric_interval_s = field_or<double>(doc, "metric_interval", cfg.metric_interval_s);
  if (doc.contains("dropout_sweep")) {
    cfg.dropout_sweep = field_or<std::vector<double>>(doc, "dropout_sweep", {});
  }
  cfg.dropout_resample_interval_s =
      field_or<double>(doc, "dropout_resample_interval", cfg.dropout_resample_interval_s);
  if (doc.contains("seeds")) {
    const json& seeds = doc["seeds"];
    reject_unknown_keys(seeds, {"feeder", "dropout"}, "seeds");
    cfg.feeder.seed = field_or<std::uint64_t>(seeds, "feeder", cfg.feeder.seed);
    cfg.dropout_seed = field_or<std::uint64_t>(seeds, "dropout", cfg.dropout_seed);
  }
  cfg.path_weighting = parse_weighting(field_or<std::string>(doc, "path_weighting", "hops"));
  cfg.output_dir = field_or<std::string>(doc, "output_dir", cfg.output_dir);
  if (doc.contains("coverage")) {
    const json& cov = doc["coverage"];
    reject_unknown_keys(cov,
                        {"threshold", "lat_bin", "num_longitudes", "num_time_samples",
                         "time_span"},
                        "coverage");
    cfg.coverage.threshold_deg = field_or<double>(cov, "threshold", cfg.coverage.threshold_deg);
    cfg.coverage.lat_bin_deg = field_or<double>(cov, "lat_bin", cfg.coverage.lat_bin_deg);
    cfg.coverage.num_longitudes =
        field_or<int>(cov, "num_longitudes", cfg.coverage.num_longitudes);
    cfg.coverage.num_time_samples =
        field_or<int>(cov, "num_time_samples", cfg.coverage.num_time_samples);
    cfg.coverage.time_span_s = field_or<double>(cov, "time_span", cfg.coverage.time_span_s);
  }

  cfg.validate();
  return cfg;
}

SimulationConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string base = std::filesystem::path(path).parent_path().string();
  try {
    return parse_config(buf.str(), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply_master_seed(SimulationConfig& config, std::uint64_t seed) {
  config.feeder.seed = splitmix64(seed);
  config.dropout_seed = splitmix64(seed + 1);
}

const char* to_string(IslStyle style) {
  return style == IslStyle::grid4 ? "grid4" : "tri3";
}

const char* to_string(SeamMode seam) {
  return seam == SeamMode::wrap ? "wrap" : "cut";
}

const char* to_string(FeederKind kind) {
  return kind == FeederKind::max_elevation ? "max_elevation" : "random_above";
}

const char* to_string(PathWeighting weighting) {
  return weighting == PathWeighting::hops ? "hops" : "distance";
}

}  // namespace leograph
