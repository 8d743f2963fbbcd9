#include "vhetpos/measurement.hpp"

#include <algorithm>
#include <cmath>

namespace vhetpos {

double SigmaTable::sigma_for(SourceKind kind, Region region) const {
    switch (kind) {
        case SourceKind::Gps:
            return region == Region::Suburban ? gps_suburban_m : gps_urban_m;
        case SourceKind::Haps:
            return region == Region::Suburban ? haps_suburban_m : haps_urban_m;
        case SourceKind::Gnb:
            return gnb_m;
    }
    return 0.0;
}

PseudorangeMeasurement synthesize(const SourceState& source, const EcefCoord& receiver_truth,
                                  const ReceiverClock& clock, double sigma_m, double floor_m,
                                  double epoch_s, KeyedRng& rng) {
    const double rho = (source.position.vec() - receiver_truth.vec()).norm();
    const double noise = sigma_m > 0.0 ? sigma_m * rng.gaussian() : 0.0;
    PseudorangeMeasurement m;
    m.kind = source.kind;
    m.id = source.id;
    m.epoch_s = epoch_s;
    m.pr_m = rho + clock.dt_m - source.clock_offset_m + noise;
    m.sigma_m = std::max(sigma_m, floor_m);
    m.source_pos = source.position;
    m.true_range_m = rho;
    m.los = true;
    return m;
}

ReceiverClock advance_clock(const ReceiverClock& clock, double dt_s, KeyedRng& rng) {
    ReceiverClock next = clock;
    if (clock.drift_m_per_sqrt_s != 0.0) {
        next.dt_m += clock.drift_m_per_sqrt_s * std::sqrt(dt_s) * rng.gaussian();
    }
    return next;
}

std::vector<PseudorangeMeasurement> batch_synthesize(const std::vector<VisibleSource>& visible,
                                                     const EcefCoord& receiver_truth,
                                                     const ReceiverClock& clock,
                                                     const SigmaTable& sigmas, Region region,
                                                     double epoch_s, const EpochRng& rng) {
    std::vector<PseudorangeMeasurement> out;
    out.reserve(visible.size());
    for (const auto& v : visible) {
        KeyedRng noise =
            rng.source_stream(StreamTag::Noise, static_cast<int>(v.source.kind), v.source.id);
        out.push_back(synthesize(v.source, receiver_truth, clock,
                                 sigmas.sigma_for(v.source.kind, region), sigmas.floor_m, epoch_s,
                                 noise));
    }
    return out;
}

}  // namespace vhetpos
