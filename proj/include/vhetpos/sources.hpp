#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vhetpos/geodesy.hpp"

namespace vhetpos {

struct AlmanacRecord {
    int prn = 0;
    int health = 0;
    double eccentricity = 0.0;
    double toa_s = 0.0;             // seconds of GPS week
    double inclination_rad = 0.0;
    double raan_rate_rad_s = 0.0;
    double sqrt_a_m05 = 0.0;        // sqrt of semi-major axis [m^0.5]
    double raan_rad = 0.0;          // right ascension at week epoch
    double arg_perigee_rad = 0.0;
    double mean_anomaly_rad = 0.0;
    double af0_s = 0.0;
    double af1_ss = 0.0;
    int week = 0;
};

struct GpsTime {
    int week = 0;
    double seconds = 0.0;

    GpsTime plus(double dt_s) const {
        GpsTime t{week, seconds + dt_s};
        while (t.seconds >= 604800.0) { t.seconds -= 604800.0; ++t.week; }
        while (t.seconds < 0.0) { t.seconds += 604800.0; --t.week; }
        return t;
    }
};

struct HapsPlatform {
    int id = 0;
    GeodeticCoord center{0.0, 0.0, 20000.0};
    double loiter_radius_m = 300.0;
    double loiter_period_s = 600.0;
    double phase_rad = 0.0;     // angle from north toward east at t = 0
    int direction = +1;         // +1 or -1
};

struct GnbSite {
    int id = 0;
    GeodeticCoord position{0.0, 0.0, 25.0};
};

enum class SourceKind { Gps = 0, Haps = 1, Gnb = 2 };

const char* kind_name(SourceKind k);

struct SourceState {
    SourceKind kind = SourceKind::Gps;
    int id = 0;
    EcefCoord position;
    double clock_offset_m = 0.0;  // c*dT; zero for HAPS and gNB
};

// Parse a YUMA-format almanac. Field names are matched case-insensitively on
// prefixes; blocks missing mandatory fields or with malformed numbers raise
// ParseError with the offending line / block.
std::vector<AlmanacRecord> parse_yuma(std::istream& text);
std::vector<AlmanacRecord> parse_yuma_file(const std::string& path);

// Keplerian almanac propagation to ECEF at GPS time t, Kepler's equation
// solved by Newton iteration to |dE| < 1e-12 (max 30, else KeplerNoConvergence).
EcefCoord propagate_almanac(const AlmanacRecord& rec, const GpsTime& t);

// HAPS loiter position at t seconds since scenario start: the center displaced
// in its local horizontal plane by the loiter radius at angle
// phase + direction*2*pi*t/period, measured from north toward east.
SourceState haps_state(const HapsPlatform& p, double t_s);

SourceState gnb_state(const GnbSite& s);

struct SystemSet {
    bool gps = false;
    bool haps = false;
    bool gnb = false;

    bool any() const { return gps || haps || gnb; }
    std::string label() const;                     // e.g. "gps-haps-gnb"
    static SystemSet parse(const std::string& s);  // "gps,haps,gnb"
};

struct SourceCatalog {
    std::vector<AlmanacRecord> gps;
    std::vector<HapsPlatform> haps;
    std::vector<GnbSite> gnbs;
};

// Union of propagated healthy GPS satellites, HAPS states and gNB states for
// the requested systems, in deterministic order (GPS by prn, HAPS by id, GNB
// by id). A source whose propagation fails is dropped with a stderr diagnostic.
std::vector<SourceState> assemble_sources(const SourceCatalog& catalog, const SystemSet& systems,
                                          const GpsTime& epoch_gps, double epoch_s);

}  // namespace vhetpos
