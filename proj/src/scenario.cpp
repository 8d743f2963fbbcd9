#include "vhetpos/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "vhetpos/errors.hpp"

namespace vhetpos {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Flat "section.key -> value" view of a sectioned key = value file.
std::map<std::string, std::string> read_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = lower(trim(t.substr(1, t.size() - 2)));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = lower(trim(t.substr(0, eq)));
        kv[section.empty() ? key : section + "." + key] = trim(t.substr(eq + 1));
    }
    return kv;
}

class KvReader {
public:
    KvReader(std::map<std::string, std::string> kv, std::vector<std::string>* echo)
        : kv_(std::move(kv)), echo_(echo) {}

    std::string str(const std::string& key, const std::string& def) {
        const auto it = kv_.find(key);
        const std::string v = it == kv_.end() ? def : it->second;
        note(key, v);
        return v;
    }

    std::string required(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing required field '" + key + "'");
        note(key, it->second);
        return it->second;
    }

    double number(const std::string& key, double def) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) {
            note(key, def);
            return def;
        }
        return parse_number(key, it->second);
    }

    int integer(const std::string& key, int def) {
        const double v = number(key, def);
        return static_cast<int>(v);
    }

    bool boolean(const std::string& key, bool def) {
        const auto it = kv_.find(key);
        const std::string v = lower(it == kv_.end() ? (def ? "true" : "false") : it->second);
        note(key, v);
        if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "off" || v == "0" || v == "no") return false;
        throw ConfigError("field '" + key + "': expected a boolean, got '" + v + "'");
    }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    // Every key in the file must have been consumed by one of the readers;
    // anything left over is a typo the user should hear about.
    void reject_unconsumed() const {
        for (const auto& [key, value] : kv_) {
            if (!consumed_.count(key)) throw ConfigError("unknown field '" + key + "'");
        }
    }

private:
    double parse_number(const std::string& key, const std::string& v) {
        std::size_t pos = 0;
        double out = 0.0;
        try {
            out = std::stod(v, &pos);
        } catch (const std::exception&) {
            throw ConfigError("field '" + key + "': malformed number '" + v + "'");
        }
        if (pos != v.size()) {
            throw ConfigError("field '" + key + "': malformed number '" + v + "'");
        }
        note(key, v);
        return out;
    }

    void note(const std::string& key, const std::string& v) {
        consumed_.insert(key);
        if (echo_) echo_->push_back(key + " = " + v);
    }
    void note(const std::string& key, double v) {
        consumed_.insert(key);
        std::ostringstream os;
        os << key << " = " << v;
        if (echo_) echo_->push_back(os.str());
    }

    std::map<std::string, std::string> kv_;
    std::set<std::string> consumed_;
    std::vector<std::string>* echo_;
};

std::string resolve(const std::string& config_path, const std::string& ref) {
    if (ref.empty()) return ref;
    fs::path p(ref);
    if (p.is_absolute()) return ref;
    return (fs::path(config_path).parent_path() / p).string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double csv_number(const std::string& path, int line_no, const std::string& v) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": malformed number '" + v + "'");
    }
    if (pos != v.size()) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": malformed number '" + v + "'");
    }
    return out;
}

SourceKind parse_kind(const std::string& s) {
    const std::string t = lower(trim(s));
    if (t == "gps") return SourceKind::Gps;
    if (t == "haps") return SourceKind::Haps;
    if (t == "gnb") return SourceKind::Gnb;
    throw ConfigError("unknown source kind '" + s + "'");
}

}  // namespace

std::vector<TrajectoryPoint> load_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trajectory file: " + path);
    std::vector<TrajectoryPoint> points;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (line_no == 1) continue;  // header row
        const auto f = split_csv_line(t);
        if (f.size() < 4) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 4 columns");
        }
        TrajectoryPoint p;
        p.epoch_s = csv_number(path, line_no, f[0]);
        p.position = {csv_number(path, line_no, f[1]), csv_number(path, line_no, f[2]),
                      csv_number(path, line_no, f[3])};
        if (!points.empty() && p.epoch_s <= points.back().epoch_s) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": epochs must be strictly increasing");
        }
        points.push_back(p);
    }
    return points;
}

std::vector<HapsPlatform> load_haps_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open HAPS sites file: " + path);
    std::vector<HapsPlatform> sites;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (line_no == 1) continue;
        const auto f = split_csv_line(t);
        if (f.size() < 4) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected >= 4 columns");
        }
        HapsPlatform p;
        p.id = static_cast<int>(csv_number(path, line_no, f[0]));
        p.center = {csv_number(path, line_no, f[1]), csv_number(path, line_no, f[2]),
                    csv_number(path, line_no, f[3])};
        if (f.size() > 4 && !f[4].empty()) p.loiter_radius_m = csv_number(path, line_no, f[4]);
        if (f.size() > 5 && !f[5].empty()) p.loiter_period_s = csv_number(path, line_no, f[5]);
        if (f.size() > 6 && !f[6].empty()) {
            p.phase_rad = csv_number(path, line_no, f[6]) * constants::deg2rad;
        }
        if (f.size() > 7 && !f[7].empty()) {
            p.direction = csv_number(path, line_no, f[7]) < 0.0 ? -1 : +1;
        }
        if (p.center.height_m <= 0.0 || p.loiter_radius_m < 0.0 || p.loiter_period_s <= 0.0) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": invalid HAPS parameters");
        }
        sites.push_back(p);
    }
    return sites;
}

std::vector<GnbSite> load_gnb_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open gNB sites file: " + path);
    std::vector<GnbSite> sites;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (line_no == 1) continue;
        const auto f = split_csv_line(t);
        if (f.size() < 4) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 4 columns");
        }
        GnbSite s;
        s.id = static_cast<int>(csv_number(path, line_no, f[0]));
        s.position = {csv_number(path, line_no, f[1]), csv_number(path, line_no, f[2]),
                      csv_number(path, line_no, f[3])};
        if (s.position.height_m <= 0.0) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": gNB height must be > 0");
        }
        sites.push_back(s);
    }
    return sites;
}

ScenarioConfig load_scenario(const std::string& path) {
    ScenarioConfig cfg;
    KvReader kv(read_kv_file(path), &cfg.echo);

    cfg.trajectory_path = resolve(path, kv.required("scenario.trajectory"));
    cfg.almanac_path = resolve(path, kv.required("scenario.almanac"));
    cfg.systems = SystemSet::parse(kv.required("scenario.systems"));
    if (!cfg.systems.any()) throw ConfigError("scenario.systems must be non-empty");
    cfg.haps_sites_path = resolve(path, kv.str("scenario.haps_sites", ""));
    cfg.gnb_sites_path = resolve(path, kv.str("scenario.gnb_sites", ""));
    cfg.region_boundary_epoch_s = kv.number("scenario.region_boundary_epoch_s", 380.0);
    cfg.epoch_rate_hz = kv.number("scenario.epoch_rate_hz", 1.0);
    if (cfg.epoch_rate_hz <= 0.0) throw ConfigError("scenario.epoch_rate_hz must be > 0");
    cfg.trials = kv.integer("scenario.trials", 20);
    if (cfg.trials < 1) throw ConfigError("scenario.trials must be >= 1");
    cfg.master_seed = static_cast<std::uint64_t>(kv.number("scenario.master_seed", 1.0));
    cfg.gps_time_origin.week = kv.integer("scenario.gps_week", 140);
    cfg.gps_time_origin.seconds = kv.number("scenario.gps_seconds", 0.0);

    cfg.sigma.gps_suburban_m = kv.number("sigma.gps_suburban", 3.0);
    cfg.sigma.gps_urban_m = kv.number("sigma.gps_urban", 7.0);
    cfg.sigma.haps_suburban_m = kv.number("sigma.haps_suburban", 2.0);
    cfg.sigma.haps_urban_m = kv.number("sigma.haps_urban", 5.0);
    cfg.sigma.gnb_m = kv.number("sigma.gnb", 0.5);
    cfg.sigma.floor_m = kv.number("sigma.floor", 0.01);
    for (double s : {cfg.sigma.gps_suburban_m, cfg.sigma.gps_urban_m, cfg.sigma.haps_suburban_m,
                     cfg.sigma.haps_urban_m, cfg.sigma.gnb_m}) {
        if (s < 0.0) throw ConfigError("sigma values must be >= 0");
    }
    if (cfg.sigma.floor_m <= 0.0) throw ConfigError("sigma.floor must be > 0");

    cfg.los.elevation_mask_deg = kv.number("los.elevation_mask_deg", 15.0);
    cfg.los.haps_los.p_los_suburban = kv.number("los.haps_p_los_suburban", 1.0);
    cfg.los.haps_los.p_los_urban = kv.number("los.haps_p_los_urban", 0.75);
    cfg.los.haps_los.el_scale_deg = kv.number("los.haps_el_scale_deg", 10.0);
    cfg.los.sat_urban.extra_mask_deg = kv.number("los.sat_urban_extra_mask_deg", 25.0);
    cfg.los.sat_urban.p_blocked_at_mask = kv.number("los.sat_urban_p_blocked_at_mask", 0.5);
    for (double p : {cfg.los.haps_los.p_los_suburban, cfg.los.haps_los.p_los_urban,
                     cfg.los.sat_urban.p_blocked_at_mask}) {
        if (p < 0.0 || p > 1.0) throw ConfigError("LOS probabilities must be in [0, 1]");
    }
    if (cfg.los.elevation_mask_deg < 0.0 || cfg.los.elevation_mask_deg > 90.0 ||
        cfg.los.sat_urban.extra_mask_deg < 0.0 || cfg.los.sat_urban.extra_mask_deg > 90.0) {
        throw ConfigError("elevation masks must be in [0, 90]");
    }

    cfg.clock.initial_offset_m = kv.number("clock.initial_offset_m", 1e5);
    cfg.clock.drift_m_per_sqrt_s = kv.number("clock.drift_m_per_sqrt_s", 0.5);

    cfg.raim_enabled = kv.boolean("raim.enabled", true);
    cfg.raim.alpha_global = kv.number("raim.alpha_global", 0.001);
    cfg.raim.alpha_local = kv.number("raim.alpha_local", 0.001);
    cfg.raim.max_exclusions = kv.integer("raim.max_exclusions", 3);
    cfg.raim.min_redundancy_after = kv.integer("raim.min_redundancy_after", 1);
    if (cfg.raim.alpha_global <= 0.0 || cfg.raim.alpha_global >= 1.0 ||
        cfg.raim.alpha_local <= 0.0 || cfg.raim.alpha_local >= 1.0) {
        throw ConfigError("raim alphas must be in (0, 1)");
    }
    if (cfg.raim.max_exclusions < 0) throw ConfigError("raim.max_exclusions must be >= 0");

    cfg.solver.tol_m = kv.number("solver.tol_m", 1e-4);
    cfg.solver.max_iter = kv.integer("solver.max_iter", 20);
    const std::string weighting = lower(kv.str("solver.weighting", "inverse_variance"));
    if (weighting == "inverse_variance") {
        cfg.solver.weighting = Weighting::InverseVariance;
    } else if (weighting == "uniform") {
        cfg.solver.weighting = Weighting::Uniform;
    } else {
        throw ConfigError("solver.weighting must be uniform or inverse_variance");
    }

    {
        const bool fault_on = kv.boolean("fault_injection.enabled", false);
        FaultInjection fault;
        fault.epoch_start_s = kv.number("fault_injection.epoch_start_s", 0.0);
        fault.epoch_end_s = kv.number("fault_injection.epoch_end_s", 1e12);
        fault.victim_kind = parse_kind(kv.str("fault_injection.victim_kind", "haps"));
        fault.bias_m = kv.number("fault_injection.bias_m", 0.0);
        if (fault_on) cfg.fault = fault;
    }

    kv.reject_unconsumed();

    // Eager loads double as existence validation. A path that does not open
    // is a configuration problem, so the IoError is rethrown as ConfigError.
    try {
        cfg.trajectory = load_trajectory_csv(cfg.trajectory_path);
        if (cfg.trajectory.empty()) throw ConfigError("trajectory file has no points");
        cfg.catalog.gps = parse_yuma_file(cfg.almanac_path);
        // Site catalogs load whenever a path is given, not only when the base
        // system set uses them: a later --systems override or compare combo
        // may switch them on without reloading the file.
        if (cfg.systems.haps && cfg.haps_sites_path.empty()) {
            throw ConfigError("scenario.haps_sites is required when systems include haps");
        }
        if (cfg.systems.gnb && cfg.gnb_sites_path.empty()) {
            throw ConfigError("scenario.gnb_sites is required when systems include gnb");
        }
        if (!cfg.haps_sites_path.empty()) cfg.catalog.haps = load_haps_csv(cfg.haps_sites_path);
        if (!cfg.gnb_sites_path.empty()) cfg.catalog.gnbs = load_gnb_csv(cfg.gnb_sites_path);
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

}  // namespace vhetpos
