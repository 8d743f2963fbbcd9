#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhetpos/measurement.hpp"
#include "vhetpos/raim.hpp"
#include "vhetpos/solver.hpp"
#include "vhetpos/sources.hpp"
#include "vhetpos/visibility.hpp"

namespace vhetpos {

struct TrajectoryPoint {
    double epoch_s = 0.0;
    GeodeticCoord position;
};

struct ClockConfig {
    double initial_offset_m = 1e5;
    double drift_m_per_sqrt_s = 0.5;
};

struct FaultInjection {
    double epoch_start_s = 0.0;
    double epoch_end_s = 0.0;
    SourceKind victim_kind = SourceKind::Haps;
    double bias_m = 0.0;
};

struct ScenarioConfig {
    // paths, resolved relative to the config file
    std::string trajectory_path;
    std::string almanac_path;
    std::string haps_sites_path;
    std::string gnb_sites_path;

    SystemSet systems;
    double region_boundary_epoch_s = 380.0;
    double epoch_rate_hz = 1.0;
    int trials = 20;
    std::uint64_t master_seed = 1;
    GpsTime gps_time_origin{140, 0.0};

    SigmaTable sigma;
    LosModelConfig los;
    ClockConfig clock;
    RaimConfig raim;
    bool raim_enabled = true;
    SolverOptions solver;
    std::optional<FaultInjection> fault;

    // loaded data
    std::vector<TrajectoryPoint> trajectory;
    SourceCatalog catalog;

    // every resolved key (defaults included), for the run log
    std::vector<std::string> echo;
};

// Load and fully validate a scenario file (sectioned key = value text; see the
// README for the grammar). Referenced data files are loaded eagerly. Throws
// ConfigError naming the offending field.
ScenarioConfig load_scenario(const std::string& path);

std::vector<TrajectoryPoint> load_trajectory_csv(const std::string& path);
std::vector<HapsPlatform> load_haps_csv(const std::string& path);
std::vector<GnbSite> load_gnb_csv(const std::string& path);

}  // namespace vhetpos
