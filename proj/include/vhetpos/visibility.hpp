#pragma once

#include <vector>

#include "vhetpos/geodesy.hpp"
#include "vhetpos/rng.hpp"
#include "vhetpos/sources.hpp"

namespace vhetpos {

enum class Region { Suburban = 0, Urban = 1 };

const char* region_name(Region r);

struct HapsLosConfig {
    double p_los_suburban = 1.0;
    double p_los_urban = 0.75;
    double el_scale_deg = 10.0;  // width of the logistic ramp above the mask
};

struct SatUrbanConfig {
    double extra_mask_deg = 25.0;      // blockage band above the elevation mask
    double p_blocked_at_mask = 0.5;    // blockage probability at the mask, decaying to 0
};

struct LosModelConfig {
    double elevation_mask_deg = 15.0;  // GPS and HAPS; never applied to gNB
    HapsLosConfig haps_los;
    SatUrbanConfig sat_urban;
};

// 3GPP UMa/UMi-street-canyon LOS probability as a function of the 2-D baseline:
// 1 for d <= 18 m, else 18/d + exp(-d/36) * (1 - 18/d).
double gnb_los_probability(double d2d_m);

// Elevation-logistic stand-in for the HAPS LOS model: 0 below the mask, then a
// ramp rescaled to reach the region ceiling at el = 90 deg.
double haps_los_probability(double el_deg, Region region, const LosModelConfig& cfg);

// Deterministic mask below elevation_mask_deg; in urban regions an additional
// Bernoulli blockage whose probability decays linearly from p_blocked_at_mask
// at the mask to 0 at mask + extra_mask_deg.
bool satellite_visible(double el_deg, double az_deg, Region region, const LosModelConfig& cfg,
                       KeyedRng& rng);

struct VisibleSource {
    SourceState source;
    double el_deg = 0.0;
    double az_deg = 0.0;
    double range_m = 0.0;
    double d2d_m = 0.0;  // horizontal baseline (used by the gNB LOS draw)
};

// Per-epoch LOS sampling. gNB keeps are drawn from gnb_los_probability of the
// 2-D baseline with no elevation mask; GPS and HAPS use their elevation-based
// models. Draws come from per-source substreams of `rng`, so the outcome for
// one source does not depend on which other sources are present.
std::vector<VisibleSource> sample_visibility(const std::vector<SourceState>& sources,
                                             const EcefCoord& receiver,
                                             const GeodeticCoord& receiver_lla, Region region,
                                             const LosModelConfig& cfg, const EpochRng& rng);

}  // namespace vhetpos
