#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "vhetpos/errors.hpp"
#include "vhetpos/scenario.hpp"

using namespace vhetpos;

namespace {

const std::string kDataDir = VHETPOS_DATA_DIR;

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/vhetpos_test_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_scenario reads the bundled 40-gNB configuration") {
    const ScenarioConfig cfg = load_scenario(kDataDir + "/scenario_40gnb.ini");
    CHECK(cfg.systems.gps);
    CHECK(cfg.systems.haps);
    CHECK(cfg.systems.gnb);
    CHECK(cfg.trials == 20);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.region_boundary_epoch_s == 380.0);
    CHECK(cfg.gps_time_origin.week == 140);
    CHECK(cfg.sigma.gnb_m == 0.5);
    CHECK_FALSE(cfg.raim_enabled);
    CHECK(cfg.solver.max_iter == 100);
    CHECK(cfg.solver.tol_m == 1e-4);  // default survives a partial [solver] section
    CHECK(cfg.trajectory.size() == 700);
    CHECK(cfg.catalog.gps.size() == 24);
    CHECK(cfg.catalog.haps.size() == 6);
    CHECK(cfg.catalog.gnbs.size() == 40);
    CHECK_FALSE(cfg.fault.has_value());
    CHECK_FALSE(cfg.echo.empty());
}

TEST_CASE("load_scenario reads the fault-injection block") {
    const ScenarioConfig cfg = load_scenario(kDataDir + "/scenario_fault.ini");
    CHECK(cfg.raim_enabled);
    REQUIRE(cfg.fault.has_value());
    CHECK(cfg.fault->victim_kind == SourceKind::Haps);
    CHECK(cfg.fault->bias_m == 40.0);
    CHECK(cfg.fault->epoch_start_s == 380.0);
    CHECK(cfg.fault->epoch_end_s == 700.0);
}

TEST_CASE("load_scenario rejects unknown keys and missing files") {
    const TempFile bad_key("bad_key.ini",
                           "[scenario]\n"
                           "trajectory = " + kDataDir + "/trajectory.csv\n"
                           "almanac = " + kDataDir + "/gps.alm\n"
                           "systems = gps\n"
                           "warp_factor = 9\n");
    CHECK_THROWS_AS(load_scenario(bad_key.path), ConfigError);

    const TempFile missing("missing.ini",
                           "[scenario]\n"
                           "trajectory = /nonexistent/t.csv\n"
                           "almanac = " + kDataDir + "/gps.alm\n"
                           "systems = gps\n");
    CHECK_THROWS_AS(load_scenario(missing.path), ConfigError);

    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.ini"), ConfigError);
}

TEST_CASE("load_scenario rejects malformed values") {
    const TempFile bad_value("bad_value.ini",
                             "[scenario]\n"
                             "trajectory = " + kDataDir + "/trajectory.csv\n"
                             "almanac = " + kDataDir + "/gps.alm\n"
                             "systems = gps\n"
                             "trials = many\n");
    CHECK_THROWS_AS(load_scenario(bad_value.path), ConfigError);
}

TEST_CASE("load_trajectory_csv enforces strictly increasing epochs") {
    const TempFile good("traj_good.csv",
                        "epoch_s,lat_deg,lon_deg,height_m\n"
                        "0,45.0,-75.0,2\n"
                        "1,45.001,-75.0,2\n");
    const auto pts = load_trajectory_csv(good.path);
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].position.lat_deg == doctest::Approx(45.001));

    const TempFile bad("traj_bad.csv",
                       "epoch_s,lat_deg,lon_deg,height_m\n"
                       "1,45.0,-75.0,2\n"
                       "1,45.001,-75.0,2\n");
    CHECK_THROWS_AS(load_trajectory_csv(bad.path), ParseError);
}

TEST_CASE("load_gnb_csv and load_haps_csv read the bundled sites") {
    const auto gnbs = load_gnb_csv(kDataDir + "/gnb_sites_30.csv");
    CHECK(gnbs.size() == 30);
    const auto haps = load_haps_csv(kDataDir + "/haps_sites.csv");
    REQUIRE(haps.size() == 6);
    CHECK(haps[0].center.height_m == 20000.0);
    CHECK(haps[1].direction == -1);
}
