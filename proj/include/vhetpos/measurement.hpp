#pragma once

#include <vector>

#include "vhetpos/rng.hpp"
#include "vhetpos/visibility.hpp"

namespace vhetpos {

struct ReceiverClock {
    double dt_m = 0.0;                 // receiver clock offset, c*dt, meters
    double drift_m_per_sqrt_s = 0.0;   // random-walk intensity
};

// Lumped per-(kind, region) pseudorange sigmas. Each value stands in for the
// full error budget of the corresponding pseudorange equation: orbit,
// ionosphere, troposphere, multipath and receiver noise for GPS; position
// error, troposphere and multipath for HAPS; multipath and receiver noise for
// gNB. The GPS defaults are configuration, not measured values.
struct SigmaTable {
    double gps_suburban_m = 3.0;
    double gps_urban_m = 7.0;
    double haps_suburban_m = 2.0;
    double haps_urban_m = 5.0;
    double gnb_m = 0.5;        // scenario-wide, one of {0, 0.5, 1.5}
    double floor_m = 0.01;     // stored-sigma floor so 1/sigma^2 weighting stays finite

    double sigma_for(SourceKind kind, Region region) const;
};

struct PseudorangeMeasurement {
    SourceKind kind = SourceKind::Gps;
    int id = 0;
    double epoch_s = 0.0;
    double pr_m = 0.0;          // pseudorange p
    double sigma_m = 0.0;       // a-priori sigma used for weighting (>= floor)
    EcefCoord source_pos;
    double true_range_m = 0.0;  // diagnostic geometric range rho
    bool los = true;
};

// pr = ||source - truth|| + clock.dt_m - source.clock_offset_m + N(0, sigma).
// The stored sigma_m is max(sigma_m, floor_m); the injected noise uses the raw
// sigma, so a 0-sigma scenario carries exactly zero noise.
PseudorangeMeasurement synthesize(const SourceState& source, const EcefCoord& receiver_truth,
                                  const ReceiverClock& clock, double sigma_m, double floor_m,
                                  double epoch_s, KeyedRng& rng);

// Random-walk clock step: dt_m += N(0, drift * sqrt(dt_s)).
ReceiverClock advance_clock(const ReceiverClock& clock, double dt_s, KeyedRng& rng);

// One measurement per visible source with the (kind, region) sigma, in the
// order of `visible`. Noise draws come from per-source substreams.
std::vector<PseudorangeMeasurement> batch_synthesize(const std::vector<VisibleSource>& visible,
                                                     const EcefCoord& receiver_truth,
                                                     const ReceiverClock& clock,
                                                     const SigmaTable& sigmas, Region region,
                                                     double epoch_s, const EpochRng& rng);

}  // namespace vhetpos
