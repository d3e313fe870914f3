#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leograph/constellation.hpp"
#include "leograph/coverage.hpp"
#include "leograph/ground_segment.hpp"
#include "leograph/link_engine.hpp"

namespace leograph {

// Everything a run needs, loaded from one JSON document. Unknown keys are
// rejected at every level.
struct SimulationConfig {
  std::vector<ShellSpec> shells = reference_shells();
  IslConfig isl;
  FeederPolicy feeder;          // seed comes from `seeds.feeder`
  std::string station_catalog;  // path; empty means no ground segment
  std::optional<double> duration_s;
  double step_s = 10.0;
  double warmup_s = 500.0;
  double metric_interval_s = 500.0;
  std::vector<double> dropout_sweep = {0.0,  0.1,  0.3,  0.5,  0.7,  0.9,
                                       0.95, 0.96, 0.97, 0.98, 0.99};
  double dropout_resample_interval_s = 1000.0;
  std::uint64_t dropout_seed = 2;
  PathWeighting path_weighting = PathWeighting::hops;
  std::string output_dir = "out";
  CoverageOptions coverage;

  double baseline_duration() const { return duration_s.value_or(10000.0); }
  double robustness_duration() const { return duration_s.value_or(11000.0); }

  void validate() const;  // throws ConfigError
};

// Parses a config document. Relative station catalog paths resolve against
// `base_dir` (the config file's directory).
SimulationConfig parse_config(const std::string& json_text, const std::string& base_dir = "");

SimulationConfig load_config_file(const std::string& path);

// Derives the feeder and dropout seeds from one master seed.
void apply_master_seed(SimulationConfig& config, std::uint64_t seed);

const char* to_string(IslStyle style);
const char* to_string(SeamMode seam);
const char* to_string(FeederKind kind);
const char* to_string(PathWeighting weighting);

}  // namespace leograph
