#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>

#include "vhetpos/experiment.hpp"

using namespace vhetpos;

namespace {

const std::string kDataDir = VHETPOS_DATA_DIR;

ScenarioConfig small_scenario() {
    ScenarioConfig cfg = load_scenario(kDataDir + "/scenario_40gnb.ini");
    cfg.trajectory.resize(60);
    cfg.trials = 3;
    return cfg;
}

bool records_equal(const std::vector<std::vector<EpochRecord>>& a,
                   const std::vector<std::vector<EpochRecord>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t].size() != b[t].size()) return false;
        for (std::size_t i = 0; i < a[t].size(); ++i) {
            const EpochRecord& x = a[t][i];
            const EpochRecord& y = b[t][i];
            if (x.fix != y.fix || x.n_gps != y.n_gps || x.n_haps != y.n_haps ||
                x.n_gnb != y.n_gnb)
                return false;
            if (x.fix && (x.h_err_m != y.h_err_m || x.v_err_m != y.v_err_m ||
                          x.hdop != y.hdop || x.vdop != y.vdop))
                return false;  // bitwise comparison on purpose
        }
    }
    return true;
}

}  // namespace

TEST_CASE("run_scenario is bitwise deterministic across worker counts") {
    const ScenarioConfig cfg = small_scenario();
    setenv("VHETPOS_THREADS", "1", 1);
    const RunResult serial = run_scenario(cfg);
    setenv("VHETPOS_THREADS", "4", 1);
    const RunResult parallel = run_scenario(cfg);
    unsetenv("VHETPOS_THREADS");
    CHECK(records_equal(serial.trials, parallel.trials));
    CHECK(serial.stats.fix_availability == parallel.stats.fix_availability);
}

TEST_CASE("run_scenario aggregates per-region samples and availability") {
    const ScenarioConfig cfg = small_scenario();  // 60 suburban epochs
    const RunResult r = run_scenario(cfg);
    CHECK(r.stats.epochs_total == 60u * 3u);
    CHECK(r.trials.size() == 3);
    // all epochs are before the 380 s boundary: urban buckets stay empty
    CHECK(r.stats.horizontal[static_cast<int>(Region::Urban)].samples.empty());
    const auto& sub = r.stats.horizontal[static_cast<int>(Region::Suburban)];
    CHECK(sub.samples.size() == r.stats.epochs_total);
    CHECK(sub.p50 <= sub.p90);
    CHECK(sub.p90 <= sub.p95);
    CHECK(r.stats.availability[static_cast<int>(SourceKind::Gps)].mean > 4.0);
    CHECK(r.stats.fix_availability == 1.0);
}

TEST_CASE("compare_systems keeps common random numbers across combos") {
    ScenarioConfig cfg = small_scenario();
    const auto report = compare_systems(
        cfg, {SystemSet::parse("gps"), SystemSet::parse("gps,gnb")});
    REQUIRE(report.entries.size() == 2);
    const auto& gps = report.entries[0].result.trials;
    const auto& aug = report.entries[1].result.trials;
    for (std::size_t t = 0; t < gps.size(); ++t) {
        for (std::size_t i = 0; i < gps[t].size(); ++i) {
            // identical GPS visibility despite the added gNBs
            CHECK(gps[t][i].n_gps == aug[t][i].n_gps);
            CHECK(aug[t][i].n_gnb >= 0);
        }
    }
}

TEST_CASE("relative_improvement sign convention") {
    CHECK(relative_improvement(10.0, 5.0) == doctest::Approx(0.5));
    CHECK(relative_improvement(10.0, 12.0) == doctest::Approx(-0.2));
    CHECK(std::isnan(relative_improvement(0.0, 5.0)));
}

TEST_CASE("generate_trajectory spans the suburban/urban boundary at 1 Hz") {
    const auto pts = generate_trajectory();
    CHECK(pts.size() == 700);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        CHECK(pts[i].epoch_s == doctest::Approx(pts[i - 1].epoch_s + 1.0));
        const double dlat = std::abs(pts[i].position.lat_deg - pts[i - 1].position.lat_deg);
        CHECK(dlat < 1e-3);  // continuous path
    }
    CHECK(pts.front().epoch_s == 0.0);
    CHECK(pts.back().epoch_s > 380.0);
}

TEST_CASE("emit_outputs writes the documented file set") {
    const ScenarioConfig cfg = small_scenario();
    ComparisonReport report;
    {
        ScenarioConfig one = cfg;
        one.systems = SystemSet::parse("gps");
        report.entries.push_back({one.systems, one.systems.label(), run_scenario(one)});
    }
    const std::string out = "/tmp/vhetpos_test_outputs";
    emit_outputs(report, cfg, out);
    CHECK(std::ifstream(out + "/summary.json").good());
    CHECK(std::ifstream(out + "/epochs_gps_0.csv").good());
    CHECK(std::ifstream(out + "/cdf_gps_suburban_horizontal.csv").good());
}
