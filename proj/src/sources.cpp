#include "vhetpos/sources.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vhetpos/errors.hpp"

namespace vhetpos {

using namespace constants;

const char* kind_name(SourceKind k) {
    switch (k) {
        case SourceKind::Gps: return "gps";
        case SourceKind::Haps: return "haps";
        case SourceKind::Gnb: return "gnb";
    }
    return "?";
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, int line_no) {
    const std::string v = trim(value);
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed numeric field '" + v + "'");
    }
    if (pos != v.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed numeric field '" + v + "'");
    }
    return out;
}

struct FieldBinding {
    const char* prefix;  // lower-case
    void (*set)(AlmanacRecord&, double);
};

// Order matters: "rate of right ascen" must be probed before "right ascen at week".
const FieldBinding kYumaFields[] = {
    {"id", [](AlmanacRecord& r, double v) { r.prn = static_cast<int>(v); }},
    {"health", [](AlmanacRecord& r, double v) { r.health = static_cast<int>(v); }},
    {"eccentricity", [](AlmanacRecord& r, double v) { r.eccentricity = v; }},
    {"time of applicability", [](AlmanacRecord& r, double v) { r.toa_s = v; }},
    {"orbital inclination", [](AlmanacRecord& r, double v) { r.inclination_rad = v; }},
    {"rate of right ascen", [](AlmanacRecord& r, double v) { r.raan_rate_rad_s = v; }},
    {"sqrt(a)", [](AlmanacRecord& r, double v) { r.sqrt_a_m05 = v; }},
    {"right ascen at week", [](AlmanacRecord& r, double v) { r.raan_rad = v; }},
    {"argument of perigee", [](AlmanacRecord& r, double v) { r.arg_perigee_rad = v; }},
    {"mean anom", [](AlmanacRecord& r, double v) { r.mean_anomaly_rad = v; }},
    {"af0", [](AlmanacRecord& r, double v) { r.af0_s = v; }},
    {"af1", [](AlmanacRecord& r, double v) { r.af1_ss = v; }},
    {"week", [](AlmanacRecord& r, double v) { r.week = static_cast<int>(v); }},
};

constexpr int kYumaFieldCount = 13;

}  // namespace

std::vector<AlmanacRecord> parse_yuma(std::istream& text) {
    std::vector<AlmanacRecord> records;
    AlmanacRecord current;
    unsigned bound_mask = 0;
    int block_index = 0;
    bool in_block = false;
    int line_no = 0;

    auto finish_block = [&]() {
        if (!in_block) return;
        if (bound_mask != (1u << kYumaFieldCount) - 1) {
            for (int i = 0; i < kYumaFieldCount; ++i) {
                if (!(bound_mask & (1u << i))) {
                    throw ParseError("almanac block " + std::to_string(block_index) +
                                     " missing mandatory field '" + kYumaFields[i].prefix + "'");
                }
            }
        }
        records.push_back(current);
        current = AlmanacRecord{};
        bound_mask = 0;
        in_block = false;
        ++block_index;
    };

    std::string raw;
    while (std::getline(text, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) {
            finish_block();
            continue;
        }
        if (line.rfind("********", 0) == 0) {
            finish_block();
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key: value'");
        }
        const std::string key = lower(trim(line.substr(0, colon)));
        const std::string value = line.substr(colon + 1);
        for (int i = 0; i < kYumaFieldCount; ++i) {
            if (key.rfind(kYumaFields[i].prefix, 0) == 0) {
                kYumaFields[i].set(current, parse_number(value, line_no));
                bound_mask |= 1u << i;
                in_block = true;
                break;
            }
        }
        // Unrecognized keys are ignored so vendor-specific extra lines pass through.
    }
    finish_block();
    return records;
}

std::vector<AlmanacRecord> parse_yuma_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open almanac file: " + path);
    return parse_yuma(in);
}

EcefCoord propagate_almanac(const AlmanacRecord& rec, const GpsTime& t) {
    const double a = rec.sqrt_a_m05 * rec.sqrt_a_m05;
    const double dt = (t.seconds - rec.toa_s) + 604800.0 * (t.week - rec.week);
    const double n = std::sqrt(gm_earth) / (a * std::sqrt(a));
    const double m = rec.mean_anomaly_rad + n * dt;
    const double e = rec.eccentricity;

    // Kepler: M = E - e*sin(E), Newton iteration.
    double ecc_anom = m;
    bool converged = false;
    for (int i = 0; i < 30; ++i) {
        const double d = (ecc_anom - e * std::sin(ecc_anom) - m) / (1.0 - e * std::cos(ecc_anom));
        ecc_anom -= d;
        if (std::abs(d) < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw KeplerNoConvergence("propagate_almanac: Kepler iteration diverged for prn " +
                                  std::to_string(rec.prn));
    }

    const double nu = std::atan2(std::sqrt(1.0 - e * e) * std::sin(ecc_anom),
                                 std::cos(ecc_anom) - e);
    const double r = a * (1.0 - e * std::cos(ecc_anom));
    const double u = rec.arg_perigee_rad + nu;
    const double x_orb = r * std::cos(u);
    const double y_orb = r * std::sin(u);

    // Longitude of ascending node corrected for Earth rotation since week epoch.
    const double omega = rec.raan_rad + (rec.raan_rate_rad_s - earth_rotation_rate) * dt -
                         earth_rotation_rate * rec.toa_s;
    const double so = std::sin(omega), co = std::cos(omega);
    const double si = std::sin(rec.inclination_rad), ci = std::cos(rec.inclination_rad);
    return {x_orb * co - y_orb * ci * so,
            x_orb * so + y_orb * ci * co,
            y_orb * si};
}

SourceState haps_state(const HapsPlatform& p, double t_s) {
    const double theta = p.phase_rad + p.direction * 2.0 * pi * t_s / p.loiter_period_s;
    const Eigen::Vector3d ned(p.loiter_radius_m * std::cos(theta),
                              p.loiter_radius_m * std::sin(theta), 0.0);
    const Eigen::Vector3d ecef =
        lla_to_ecef(p.center).vec() + ned_rotation(p.center).transpose() * ned;
    return {SourceKind::Haps, p.id, EcefCoord::from(ecef), 0.0};
}

SourceState gnb_state(const GnbSite& s) {
    return {SourceKind::Gnb, s.id, lla_to_ecef(s.position), 0.0};
}

std::string SystemSet::label() const {
    std::string out;
    auto add = [&out](const char* name) {
        if (!out.empty()) out += '-';
        out += name;
    };
    if (gps) add("gps");
    if (haps) add("haps");
    if (gnb) add("gnb");
    return out.empty() ? "none" : out;
}

SystemSet SystemSet::parse(const std::string& s) {
    SystemSet set;
    std::stringstream ss(s);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const std::string t = lower(trim(token));
        if (t.empty()) continue;
        if (t == "gps") set.gps = true;
        else if (t == "haps") set.haps = true;
        else if (t == "gnb") set.gnb = true;
        else throw ConfigError("unknown system '" + t + "' (expected gps, haps, gnb)");
    }
    return set;
}

std::vector<SourceState> assemble_sources(const SourceCatalog& catalog, const SystemSet& systems,
                                          const GpsTime& epoch_gps, double epoch_s) {
    std::vector<SourceState> out;
    if (systems.gps) {
        for (const auto& rec : catalog.gps) {
            if (rec.health != 0) continue;
            try {
                out.push_back({SourceKind::Gps, rec.prn, propagate_almanac(rec, epoch_gps), 0.0});
            } catch (const Error& err) {
                std::cerr << "assemble_sources: dropping prn " << rec.prn << ": " << err.what()
                          << "\n";
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const SourceState& a, const SourceState& b) { return a.id < b.id; });
    }
    if (systems.haps) {
        auto haps = catalog.haps;
        std::sort(haps.begin(), haps.end(),
                  [](const HapsPlatform& a, const HapsPlatform& b) { return a.id < b.id; });
        for (const auto& p : haps) out.push_back(haps_state(p, epoch_s));
    }
    if (systems.gnb) {
        auto gnbs = catalog.gnbs;
        std::sort(gnbs.begin(), gnbs.end(),
                  [](const GnbSite& a, const GnbSite& b) { return a.id < b.id; });
        for (const auto& s : gnbs) out.push_back(gnb_state(s));
    }
    return out;
}

}  // namespace vhetpos
