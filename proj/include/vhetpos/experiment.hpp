#pragma once

#include <string>
#include <vector>

#include "vhetpos/scenario.hpp"
#include "vhetpos/stats.hpp"

namespace vhetpos {

struct EpochRecord {
    double epoch_s = 0.0;
    GeodeticCoord truth;
    Region region = Region::Suburban;
    int n_gps = 0;
    int n_haps = 0;
    int n_gnb = 0;
    bool fix = false;
    double h_err_m = 0.0;  // valid iff fix
    double v_err_m = 0.0;
    double hdop = 0.0;
    double vdop = 0.0;
    int raim_excluded = 0;
};

struct RegionAxisStats {
    std::vector<double> samples;  // sorted ascending
    double p50 = 0.0, p90 = 0.0, p95 = 0.0;  // NaN when no samples
};

struct RunStatistics {
    RegionAxisStats horizontal[2];  // indexed by Region
    RegionAxisStats vertical[2];
    AvailabilityStats availability[3];  // indexed by SourceKind
    double fix_availability = 0.0;      // fraction of epochs with a converged fix
    std::size_t epochs_total = 0;
};

struct RunResult {
    std::vector<std::vector<EpochRecord>> trials;
    RunStatistics stats;
};

// Monte-Carlo run over the trajectory. All randomness flows from
// (master_seed, trial, epoch, source) keyed substreams, so the result is
// bitwise reproducible and independent of the worker count (capped by the
// VHETPOS_THREADS environment variable).
RunResult run_scenario(const ScenarioConfig& cfg);

struct ComparisonEntry {
    SystemSet systems;
    std::string label;
    RunResult result;
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;
};

// Runs every combo against identical seeds (common random numbers).
ComparisonReport compare_systems(const ScenarioConfig& cfg, const std::vector<SystemSet>& combos);

// (p90_baseline - p90_other) / p90_baseline; positive means `other` is better.
double relative_improvement(double baseline, double other);

// Writes epochs_<combo>_<trial>.csv, cdf_<combo>_<region>_<axis>.csv and
// summary.json into out_dir. Floats carry 6 significant digits, newlines LF.
void emit_outputs(const ComparisonReport& report, const ScenarioConfig& cfg,
                  const std::string& out_dir);

// Bundled synthetic suburban->urban drive (1 Hz, ~700 epochs, 2 m height).
std::vector<TrajectoryPoint> generate_trajectory(int epochs = 700);
void write_trajectory_csv(const std::vector<TrajectoryPoint>& points, const std::string& path);

}  // namespace vhetpos
