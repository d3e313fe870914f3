#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "leograph/constellation.hpp"

namespace leograph {

struct CoverageOptions {
  double threshold_deg = 25.0;  // user elevation threshold
  double lat_bin_deg = 1.0;     // bins spanning [-90, 90]
  int num_longitudes = 36;
  int num_time_samples = 20;
  double time_span_s = 0.0;  // <= 0: one orbital period of the highest shell
  int threads = 1;
};

// Mean number of simultaneously visible satellites per latitude bin, one
// profile per shell plus their combined sum. Each bin is sampled at its
// center latitude across every (longitude, time) pair.
struct CoverageProfile {
  std::vector<double> bin_edges_deg;  // size bins+1, ascending from -90
  std::vector<std::string> shell_names;
  std::vector<std::vector<double>> shell_mean;     // [shell][bin]
  std::vector<std::vector<double>> shell_std_err;  // standard error of each bin mean
  std::vector<double> combined_mean;               // [bin], exact sum of shell means
  double threshold_deg = 25.0;
  std::size_t samples_per_bin = 0;

  std::size_t bin_count() const { return bin_edges_deg.empty() ? 0 : bin_edges_deg.size() - 1; }
  double bin_center_deg(std::size_t bin) const {
    return 0.5 * (bin_edges_deg[bin] + bin_edges_deg[bin + 1]);
  }
};

CoverageProfile coverage_density(const Constellation& constellation,
                                 const CoverageOptions& options);

}  // namespace leograph
