#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "leograph/driver.hpp"
#include "leograph/errors.hpp"

namespace {

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEO constellation topology simulator and graph analytics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t master_seed = -1;
  int threads = default_threads();
  app.add_option("--config", config_path, "simulation config (JSON)")->required();
  app.add_option("--seed", master_seed, "master seed overriding the config's seeds");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--threads", threads, "worker threads for metric kernels");

  auto* generate = app.add_subcommand("generate", "generate the constellation inventory");
  auto* snapshot = app.add_subcommand("snapshot", "evaluate metrics for one instant");
  double snapshot_time = 0.0;
  bool dump_edges = false;
  snapshot->add_option("--time", snapshot_time, "snapshot time in seconds");
  snapshot->add_flag("--edges", dump_edges, "also dump the edge list");
  auto* baseline = app.add_subcommand("baseline", "timeline run with the full catalog");
  auto* robustness = app.add_subcommand("robustness", "dropout sweep over the catalog");
  auto* coverage = app.add_subcommand("coverage", "coverage density vs latitude");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return leograph::kExitConfigError;
  }

  try {
    leograph::SimulationConfig config = leograph::load_config_file(config_path);
    if (master_seed >= 0) {
      leograph::apply_master_seed(config, static_cast<std::uint64_t>(master_seed));
    }
    leograph::RunOptions options;
    options.threads = threads < 1 ? 1 : threads;
    options.output_dir = out_dir;

    if (generate->parsed()) {
      const auto constellation = leograph::write_constellation_inventory(config, options);
      for (std::size_t s = 0; s < constellation.shell_count(); ++s) {
        const auto& spec = constellation.shells()[s];
        std::cout << spec.name << ": " << spec.num_planes << " planes x "
                  << spec.sats_per_plane << " = " << spec.size() << " satellites\n";
      }
      std::cout << "total: " << constellation.size() << " satellites\n";
    } else if (snapshot->parsed()) {
      const auto result = leograph::snapshot_at(config, snapshot_time, options, dump_edges);
      std::cout << "t=" << result.report.time_s << " nodes=" << result.snapshot.node_count()
                << " components=" << result.report.component_count
                << " diameter=" << result.report.diameter << " apl=" << result.report.apl
                << "\n";
    } else if (baseline->parsed()) {
      const auto reports = leograph::run_baseline(config, options);
      std::cout << "wrote " << reports.size() << " reports\n";
    } else if (robustness->parsed()) {
      const auto result = leograph::run_robustness(config, options);
      std::cout << "wrote " << result.rows.size() << " rows over "
                << result.means.size() << " dropout levels\n";
    } else if (coverage->parsed()) {
      const auto profile = leograph::run_coverage(config, options);
      std::cout << "wrote " << profile.bin_count() << " latitude bins\n";
    }
    return leograph::kExitOk;
  } catch (const leograph::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return leograph::kExitConfigError;
  } catch (const leograph::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return leograph::kExitDataError;
  } catch (const leograph::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return leograph::kExitInternalError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return leograph::kExitInternalError;
  }
}
