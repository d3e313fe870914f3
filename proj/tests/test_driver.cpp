#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "leograph/driver.hpp"
#include "leograph/errors.hpp"

using namespace leograph;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "leograph_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string catalog_path() {
  return std::string(LEOGRAPH_DATA_DIR) + "/stations_synthetic_198.csv";
}

// Small shell + two stations: fast enough for end-to-end driver tests.
SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.shells = {{"mini", 550.0, 60.0, 4, 8, 1}};
  cfg.duration_s = 400.0;
  cfg.step_s = 10.0;
  cfg.warmup_s = 100.0;
  cfg.metric_interval_s = 100.0;
  cfg.dropout_sweep = {0.0, 0.5};
  cfg.dropout_resample_interval_s = 200.0;
  cfg.station_catalog = catalog_path();
  return cfg;
}

}  // namespace

TEST_CASE("config parsing applies defaults and rejects unknown keys") {
  const SimulationConfig cfg = parse_config("{}");
  CHECK(cfg.shells.size() == 6);
  CHECK(cfg.step_s == 10.0);
  CHECK(cfg.warmup_s == 500.0);
  CHECK(cfg.metric_interval_s == 500.0);
  CHECK(cfg.feeder.gs_threshold_deg == 25.0);
  CHECK(cfg.feeder.sat_capacity == 2);
  CHECK(cfg.dropout_sweep.size() == 11);
  CHECK(cfg.baseline_duration() == 10000.0);
  CHECK(cfg.robustness_duration() == 11000.0);

  CHECK_THROWS_WITH_AS(parse_config(R"({"durationn": 100})"),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"isl": {"style": "grid4", "seamm": "wrap"}})"),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"isl": {"style": "hexagon"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"step": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"step": 10, "metric_interval": 15})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"duration": 100, "warmup": 200})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dropout_sweep": [0.5, 1.5]})"), ConfigError);
}

TEST_CASE("config parsing reads every section") {
  const std::string text = R"({
    "shells": [{"name": "X", "altitude": 500, "inclination": 45,
                "num_planes": 3, "sats_per_plane": 5, "phasing_factor": 2}],
    "isl": {"style": "tri3", "seam": "cut"},
    "feeder": {"kind": "random_above", "gs_threshold": 20, "random_threshold": 35,
               "sat_capacity": 4},
    "station_catalog": "",
    "duration": 2000,
    "step": 5,
    "warmup": 100,
    "metric_interval": 200,
    "dropout_sweep": [0, 0.25],
    "dropout_resample_interval": 500,
    "seeds": {"feeder": 11, "dropout": 22},
    "path_weighting": "distance",
    "output_dir": "elsewhere",
    "coverage": {"threshold": 30, "lat_bin": 2, "num_longitudes": 12,
                 "num_time_samples": 6, "time_span": 4000}
  })";
  const SimulationConfig cfg = parse_config(text);
  CHECK(cfg.shells.size() == 1);
  CHECK(cfg.shells[0].phasing_factor == 2);
  CHECK(cfg.isl.style == IslStyle::tri3);
  CHECK(cfg.isl.seam == SeamMode::cut);
  CHECK(cfg.feeder.kind == FeederKind::random_above);
  CHECK(cfg.feeder.seed == 11);
  CHECK(cfg.dropout_seed == 22);
  CHECK(cfg.path_weighting == PathWeighting::distance);
  CHECK(cfg.coverage.num_longitudes == 12);
  CHECK(cfg.duration_s == 2000.0);
}

TEST_CASE("master seed overrides both component seeds deterministically") {
  SimulationConfig a = parse_config("{}");
  SimulationConfig b = parse_config("{}");
  apply_master_seed(a, 99);
  apply_master_seed(b, 99);
  CHECK(a.feeder.seed == b.feeder.seed);
  CHECK(a.dropout_seed == b.dropout_seed);
  CHECK(a.feeder.seed != a.dropout_seed);
}

TEST_CASE("baseline tick arithmetic") {
  SimulationConfig cfg;
  cfg.duration_s = 10000.0;
  cfg.warmup_s = 500.0;
  cfg.metric_interval_s = 500.0;
  const auto ticks = baseline_tick_times(cfg);
  REQUIRE(ticks.size() == 19);
  CHECK(ticks.front() == 1000.0);
  CHECK(ticks.back() == 10000.0);
}

TEST_CASE("robustness tick arithmetic: one measurement per window") {
  SimulationConfig cfg;
  cfg.duration_s = 11000.0;
  cfg.warmup_s = 500.0;
  cfg.dropout_resample_interval_s = 1000.0;
  const auto ticks = robustness_tick_times(cfg);
  REQUIRE(ticks.size() == 11);
  CHECK(ticks.front() == 500.0);
  CHECK(ticks.back() == 10500.0);

  cfg.warmup_s = 1000.0;  // measurement must land inside its window
  CHECK_THROWS_AS(robustness_tick_times(cfg), ConfigError);
}

TEST_CASE("zero-station baseline reports one component per shell") {
  SimulationConfig cfg = small_config();
  cfg.shells = {{"a", 550.0, 53.0, 3, 4, 1}, {"b", 560.0, 70.0, 3, 4, 1}};
  cfg.station_catalog.clear();
  RunOptions opt{2, scratch_dir("zero_gs").string()};
  const auto reports = run_baseline(cfg, opt);
  REQUIRE(reports.size() == 3);  // (400-100)/100
  for (const auto& r : reports) {
    CHECK(r.component_count == 2);
    CHECK_FALSE(r.avg_degree_gs.has_value());
    CHECK_FALSE(r.div_bc.has_value());
    CHECK(r.avg_degree_sat.has_value());
  }
}

TEST_CASE("baseline runs write schema-stable CSVs") {
  const SimulationConfig cfg = small_config();
  const auto dir = scratch_dir("schema");
  RunOptions opt{2, dir.string()};
  const auto reports = run_baseline(cfg, opt);
  CHECK(reports.size() == 3);

  const std::string metrics = read_file(dir / "metrics.csv");
  CHECK(metrics.rfind(
            "t,avg_deg_sat,avg_deg_gs,clust_sat,clust_gs,components,diameter,apl,div_bc,"
            "isolated_gs\n",
            0) == 0);
  const std::string bc = read_file(dir / "betweenness.csv");
  CHECK(bc.rfind("t,node_kind,node_id,bc\n", 0) == 0);
  CHECK(bc.find(",sat,0:0:0,") != std::string::npos);
  CHECK(bc.find(",gs,") != std::string::npos);
}

TEST_CASE("identical configs and seeds produce byte-identical outputs") {
  const SimulationConfig cfg = small_config();
  const auto dir1 = scratch_dir("det1");
  const auto dir2 = scratch_dir("det2");
  run_baseline(cfg, {2, dir1.string()});
  run_baseline(cfg, {1, dir2.string()});  // thread count must not matter
  CHECK(read_file(dir1 / "metrics.csv") == read_file(dir2 / "metrics.csv"));
  CHECK(read_file(dir1 / "betweenness.csv") == read_file(dir2 / "betweenness.csv"));
}

TEST_CASE("robustness at probability zero matches the baseline at common times") {
  SimulationConfig cfg = small_config();
  cfg.dropout_sweep = {0.0};
  const auto base = run_baseline(cfg, {2, scratch_dir("rb_base").string()});
  const auto robust = run_robustness(cfg, {2, scratch_dir("rb_rob").string()});

  int compared = 0;
  for (const auto& row : robust.rows) {
    for (const auto& report : base) {
      if (report.time_s == row.report.time_s) {
        CHECK(report.component_count == row.report.component_count);
        CHECK(report.diameter == row.report.diameter);
        CHECK(report.apl == row.report.apl);
        CHECK(report.avg_degree_sat == row.report.avg_degree_sat);
        CHECK(report.avg_degree_gs == row.report.avg_degree_gs);
        CHECK(report.div_bc == row.report.div_bc);
        ++compared;
      }
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("full dropout leaves only the shells") {
  SimulationConfig cfg = small_config();
  cfg.shells = {{"a", 550.0, 53.0, 3, 4, 1}, {"b", 560.0, 70.0, 3, 4, 1}};
  cfg.dropout_sweep = {1.0};
  const auto result = run_robustness(cfg, {2, scratch_dir("full_drop").string()});
  REQUIRE(!result.rows.empty());
  for (const auto& row : result.rows) {
    CHECK(row.report.component_count == 2);
    CHECK_FALSE(row.report.avg_degree_gs.has_value());
    CHECK_FALSE(row.report.div_bc.has_value());
  }
  CHECK_FALSE(result.means[0].div_bc.has_value());
}

TEST_CASE("robustness CSV carries per-window rows and a mean row per level") {
  SimulationConfig cfg = small_config();
  cfg.dropout_sweep = {0.0, 0.5};
  const auto dir = scratch_dir("rob_csv");
  run_robustness(cfg, {2, dir.string()});
  const std::string text = read_file(dir / "robustness.csv");
  CHECK(text.rfind("dropout_p,window,t,", 0) == 0);
  CHECK(text.find("\n0,0,") != std::string::npos);
  CHECK(text.find("\n0,mean,,") != std::string::npos);
  CHECK(text.find("\n0.5,mean,,") != std::string::npos);
}

TEST_CASE("snapshot_at validates its time argument") {
  SimulationConfig cfg = small_config();
  const auto dir = scratch_dir("snap");
  CHECK_THROWS_AS(snapshot_at(cfg, -5.0, {1, dir.string()}), ConfigError);
  CHECK_THROWS_AS(snapshot_at(cfg, 1e9, {1, dir.string()}), ConfigError);
  CHECK_THROWS_AS(snapshot_at(cfg, 15.0, {1, dir.string()}), ConfigError);  // not on a step

  const auto result = snapshot_at(cfg, 100.0, {2, dir.string()}, /*dump_edges=*/true);
  CHECK(result.report.time_s == 100.0);
  const std::string edges = read_file(dir / "edges.csv");
  CHECK(edges.rfind("t,src_kind,src_id,dst_kind,dst_id,kind\n", 0) == 0);
  CHECK(edges.find(",isl\n") != std::string::npos);
}

TEST_CASE("snapshot ISL edges do not change over time") {
  SimulationConfig cfg = small_config();
  cfg.station_catalog.clear();
  const auto dir = scratch_dir("isl_const");
  const auto a = snapshot_at(cfg, 0.0, {1, dir.string()});
  const auto b = snapshot_at(cfg, 200.0, {1, dir.string()});
  CHECK(*a.snapshot.isl_edges == *b.snapshot.isl_edges);
}

TEST_CASE("coverage run writes one row per shell and bin plus combined") {
  SimulationConfig cfg = small_config();
  cfg.coverage.lat_bin_deg = 10.0;
  cfg.coverage.num_longitudes = 8;
  cfg.coverage.num_time_samples = 4;
  const auto dir = scratch_dir("cov");
  const CoverageProfile p = run_coverage(cfg, {2, dir.string()});
  const std::string text = read_file(dir / "coverage.csv");
  CHECK(text.rfind("lat_deg,shell,mean_visible\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : text) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 1 + p.bin_count() * (p.shell_names.size() + 1));
  CHECK(text.find(",combined,") != std::string::npos);
}

TEST_CASE("constellation inventory matches the generated table") {
  SimulationConfig cfg = small_config();
  const auto dir = scratch_dir("inventory");
  const Constellation c = write_constellation_inventory(cfg, {1, dir.string()});
  CHECK(c.size() == 32);
  const std::string text = read_file(dir / "satellites.csv");
  std::size_t lines = 0;
  for (char ch : text) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 1 + c.size());
  CHECK(text.rfind("shell,plane,slot,raan_deg,phase_deg,altitude_km,inclination_deg\n", 0) ==
        0);
}

TEST_CASE("load_config_file resolves the catalog relative to the config") {
  const auto dir = scratch_dir("cfgfile");
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"shells": [{"name": "m", "altitude": 550, "inclination": 53,
                           "num_planes": 3, "sats_per_plane": 4}],
               "station_catalog": "st.csv", "duration": 100, "warmup": 0,
               "metric_interval": 50})";
    std::ofstream st(dir / "st.csv");
    st << "id,name,lat_deg,lon_deg\n0,x,10,20\n";
  }
  const SimulationConfig cfg = load_config_file((dir / "cfg.json").string());
  CHECK(std::filesystem::path(cfg.station_catalog).filename() == "st.csv");
  const auto reports = run_baseline(cfg, {1, (dir / "out").string()});
  CHECK(reports.size() == 2);

  CHECK_THROWS_AS(load_config_file((dir / "missing.json").string()), ConfigError);
}
