#include "leograph/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>

#include "leograph/errors.hpp"
#include "leograph/spatial_index.hpp"

namespace leograph {

namespace {

struct CountTotals {
  // Integer tallies keep shell additivity exact and make the merge order
  // irrelevant.
  std::vector<std::vector<std::int64_t>> sum;     // [shell][bin]
  std::vector<std::vector<std::int64_t>> sum_sq;  // [shell][bin]

  CountTotals(std::size_t shells, std::size_t bins)
      : sum(shells, std::vector<std::int64_t>(bins, 0)),
        sum_sq(shells, std::vector<std::int64_t>(bins, 0)) {}

  void merge(const CountTotals& other) {
    for (std::size_t s = 0; s < sum.size(); ++s) {
      for (std::size_t b = 0; b < sum[s].size(); ++b) {
        sum[s][b] += other.sum[s][b];
        sum_sq[s][b] += other.sum_sq[s][b];
      }
    }
  }
};

}  // namespace

CoverageProfile coverage_density(const Constellation& constellation,
                                 const CoverageOptions& options) {
  if (options.lat_bin_deg <= 0.0 || options.num_longitudes < 1 || options.num_time_samples < 1) {
    throw ConfigError("coverage sampling requires positive bin size and sample counts");
  }
  if (options.threshold_deg < 0.0 || options.threshold_deg >= 90.0) {
    throw ConfigError("coverage threshold must be in [0, 90)");
  }

  const auto bins = static_cast<std::size_t>(std::lround(180.0 / options.lat_bin_deg));
  CoverageProfile profile;
  profile.threshold_deg = options.threshold_deg;
  profile.bin_edges_deg.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    profile.bin_edges_deg[b] = -90.0 + static_cast<double>(b) * options.lat_bin_deg;
  }
  const std::size_t shells = constellation.shell_count();
  for (const auto& spec : constellation.shells()) profile.shell_names.push_back(spec.name);
  profile.samples_per_bin =
      static_cast<std::size_t>(options.num_longitudes) * options.num_time_samples;

  profile.shell_mean.assign(shells, std::vector<double>(bins, 0.0));
  profile.shell_std_err.assign(shells, std::vector<double>(bins, 0.0));
  profile.combined_mean.assign(bins, 0.0);
  if (constellation.size() == 0) return profile;

  double span = options.time_span_s;
  if (span <= 0.0) {
    for (std::uint32_t i = 0; i < constellation.size(); ++i) {
      span = std::max(span, orbital_period_s(constellation.elements(i)));
    }
  }

  // Shell lookup per satellite and the widest visibility cap.
  std::vector<std::uint8_t> shell_of(constellation.size());
  double cap_deg = 0.0;
  for (std::size_t s = 0; s < shells; ++s) {
    for (std::uint32_t i = constellation.shell_begin(static_cast<int>(s));
         i < constellation.shell_end(static_cast<int>(s)); ++i) {
      shell_of[i] = static_cast<std::uint8_t>(s);
    }
    cap_deg = std::max(cap_deg, max_central_angle_deg(constellation.shells()[s].altitude_km,
                                                      options.threshold_deg));
  }
  cap_deg += 1.0;  // grid slop

  // Ground sample points, one per (bin, longitude).
  std::vector<Vec3> ground(bins * static_cast<std::size_t>(options.num_longitudes));
  for (std::size_t b = 0; b < bins; ++b) {
    const double lat = profile.bin_center_deg(b);
    for (int j = 0; j < options.num_longitudes; ++j) {
      const double lon = -180.0 + 360.0 * j / options.num_longitudes;
      ground[b * options.num_longitudes + static_cast<std::size_t>(j)] =
          geodetic_to_ecef({lat, lon, 0.0});
    }
  }

  CountTotals totals(shells, bins);
  std::atomic<int> next_sample{0};
  std::vector<CountTotals> partials(static_cast<std::size_t>(options.num_time_samples),
                                    CountTotals(shells, bins));
  auto worker = [&]() {
    std::vector<std::uint32_t> candidates;
    std::vector<std::int64_t> per_shell(shells);
    for (;;) {
      const int k = next_sample.fetch_add(1);
      if (k >= options.num_time_samples) break;
      const double t = span * k / options.num_time_samples;
      const std::vector<Vec3> sats = constellation.positions_ecef(t);
      const SphereGrid grid(sats);
      CountTotals& acc = partials[static_cast<std::size_t>(k)];
      for (std::size_t b = 0; b < bins; ++b) {
        for (int j = 0; j < options.num_longitudes; ++j) {
          const Vec3& gp = ground[b * options.num_longitudes + static_cast<std::size_t>(j)];
          candidates.clear();
          std::fill(per_shell.begin(), per_shell.end(), 0);
          grid.query(gp, cap_deg, candidates);
          for (std::uint32_t sat : candidates) {
            if (elevation_angle_deg(gp, sats[sat]) >= options.threshold_deg) {
              ++per_shell[shell_of[sat]];
            }
          }
          for (std::size_t s = 0; s < shells; ++s) {
            acc.sum[s][b] += per_shell[s];
            acc.sum_sq[s][b] += per_shell[s] * per_shell[s];
          }
        }
      }
    }
  };

  const int worker_count = std::max(1, options.threads);
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const CountTotals& p : partials) totals.merge(p);

  const auto samples = static_cast<double>(profile.samples_per_bin);
  for (std::size_t s = 0; s < shells; ++s) {
    for (std::size_t b = 0; b < bins; ++b) {
      const double mean = static_cast<double>(totals.sum[s][b]) / samples;
      profile.shell_mean[s][b] = mean;
      if (profile.samples_per_bin > 1) {
        const double var =
            (static_cast<double>(totals.sum_sq[s][b]) / samples - mean * mean) *
            (samples / (samples - 1.0));
        profile.shell_std_err[s][b] = std::sqrt(std::max(0.0, var) / samples);
      }
      profile.combined_mean[b] += mean;
    }
  }
  return profile;
}

}  // namespace leograph
