#include "vhetpos/visibility.hpp"

#include <cmath>

namespace vhetpos {

const char* region_name(Region r) {
    return r == Region::Suburban ? "suburban" : "urban";
}

double gnb_los_probability(double d2d_m) {
    if (d2d_m <= 18.0) return 1.0;
    const double ratio = 18.0 / d2d_m;
    return ratio + std::exp(-d2d_m / 36.0) * (1.0 - ratio);
}

namespace {
double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}

double haps_los_probability(double el_deg, Region region, const LosModelConfig& cfg) {
    const double mask = cfg.elevation_mask_deg;
    if (el_deg < mask) return 0.0;
    const double ceiling = region == Region::Suburban ? cfg.haps_los.p_los_suburban
                                                      : cfg.haps_los.p_los_urban;
    const double scale = cfg.haps_los.el_scale_deg;
    if (scale <= 0.0) return ceiling;
    // Ramp from 0 at the mask to the ceiling at el = 90.
    const double raw = logistic((el_deg - mask) / scale) - 0.5;
    const double full = logistic((90.0 - mask) / scale) - 0.5;
    return ceiling * raw / full;
}

bool satellite_visible(double el_deg, double /*az_deg*/, Region region, const LosModelConfig& cfg,
                       KeyedRng& rng) {
    const double mask = cfg.elevation_mask_deg;
    if (el_deg < mask) return false;
    if (region == Region::Urban && cfg.sat_urban.extra_mask_deg > 0.0) {
        const double band = cfg.sat_urban.extra_mask_deg;
        const double frac = (el_deg - mask) / band;
        if (frac < 1.0) {
            const double p_blocked = cfg.sat_urban.p_blocked_at_mask * (1.0 - frac);
            if (rng.uniform() < p_blocked) return false;
        }
    }
    return true;
}

std::vector<VisibleSource> sample_visibility(const std::vector<SourceState>& sources,
                                             const EcefCoord& receiver,
                                             const GeodeticCoord& receiver_lla, Region region,
                                             const LosModelConfig& cfg, const EpochRng& rng) {
    std::vector<VisibleSource> visible;
    for (const auto& src : sources) {
        const ElAzRange geo = elevation_azimuth(receiver, receiver_lla, src.position);
        const NedVector ned = ecef_delta_to_ned(receiver_lla, src.position.vec() - receiver.vec());
        const double d2d = ned.horizontal();
        KeyedRng draw = rng.source_stream(StreamTag::Visibility, static_cast<int>(src.kind), src.id);

        bool keep = false;
        switch (src.kind) {
            case SourceKind::Gps:
                keep = satellite_visible(geo.el_deg, geo.az_deg, region, cfg, draw);
                break;
            case SourceKind::Haps:
                keep = draw.uniform() < haps_los_probability(geo.el_deg, region, cfg);
                break;
            case SourceKind::Gnb:
                keep = draw.uniform() < gnb_los_probability(d2d);
                break;
        }
        if (keep) visible.push_back({src, geo.el_deg, geo.az_deg, geo.range_m, d2d});
    }
    return visible;
}

}  // namespace vhetpos
