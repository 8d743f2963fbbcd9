#include "vhetpos/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "vhetpos/errors.hpp"

namespace vhetpos {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

int worker_count(int trials) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("VHETPOS_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::min(n, trials);
}

std::vector<EpochRecord> run_trial(const ScenarioConfig& cfg, int trial) {
    std::vector<EpochRecord> records;
    records.reserve(cfg.trajectory.size());

    ReceiverClock clock{cfg.clock.initial_offset_m, cfg.clock.drift_m_per_sqrt_s};
    bool have_prev = false;
    EcefCoord prev_pos;
    double prev_clock = 0.0;
    double prev_epoch_s = 0.0;

    for (std::size_t i = 0; i < cfg.trajectory.size(); ++i) {
        const TrajectoryPoint& point = cfg.trajectory[i];
        const Region region =
            point.epoch_s < cfg.region_boundary_epoch_s ? Region::Suburban : Region::Urban;
        const EpochRng rng(cfg.master_seed, static_cast<std::uint64_t>(trial), i);

        if (i > 0) {
            KeyedRng clock_stream = rng.stream(StreamTag::Clock);
            clock = advance_clock(clock, point.epoch_s - prev_epoch_s, clock_stream);
        }
        prev_epoch_s = point.epoch_s;

        const EcefCoord rx_truth = lla_to_ecef(point.position);
        const auto sources = assemble_sources(cfg.catalog, cfg.systems,
                                              cfg.gps_time_origin.plus(point.epoch_s),
                                              point.epoch_s);
        const auto visible =
            sample_visibility(sources, rx_truth, point.position, region, cfg.los, rng);
        auto meas =
            batch_synthesize(visible, rx_truth, clock, cfg.sigma, region, point.epoch_s, rng);

        if (cfg.fault && point.epoch_s >= cfg.fault->epoch_start_s &&
            point.epoch_s <= cfg.fault->epoch_end_s) {
            // Bias the lowest-id visible measurement of the victim kind.
            PseudorangeMeasurement* victim = nullptr;
            for (auto& m : meas) {
                if (m.kind == cfg.fault->victim_kind && (!victim || m.id < victim->id)) {
                    victim = &m;
                }
            }
            if (victim) {
                victim->pr_m += cfg.fault->bias_m;
                victim->los = false;
            }
        }

        EpochRecord rec;
        rec.epoch_s = point.epoch_s;
        rec.truth = point.position;
        rec.region = region;
        for (const auto& v : visible) {
            if (v.source.kind == SourceKind::Gps) ++rec.n_gps;
            else if (v.source.kind == SourceKind::Haps) ++rec.n_haps;
            else ++rec.n_gnb;
        }

        try {
            const EcefCoord init = have_prev ? prev_pos : EcefCoord{};
            const double init_clock = have_prev ? prev_clock : 0.0;
            PositionFix fix;
            if (cfg.raim_enabled) {
                auto [f, outcome] = fde_solve(meas, init, init_clock, cfg.raim, cfg.solver);
                fix = std::move(f);
                rec.raim_excluded = static_cast<int>(outcome.excluded_ids.size());
            } else {
                fix = spp_solve(meas, init, init_clock, cfg.solver);
            }
            const NedError err = position_errors(fix, rx_truth, point.position);
            const DopValues dop = compute_dop(fix, point.position);
            rec.fix = true;
            rec.h_err_m = err.horizontal_m;
            rec.v_err_m = err.vertical_m;
            rec.hdop = dop.hdop;
            rec.vdop = dop.vdop;
            prev_pos = fix.position;
            prev_clock = fix.clock_m;
            have_prev = true;
        } catch (const Error&) {
            rec.fix = false;  // no-fix epoch, counted in the statistics
        }
        records.push_back(rec);
    }
    return records;
}

void finalize_axis(RegionAxisStats& axis) {
    std::sort(axis.samples.begin(), axis.samples.end());
    if (axis.samples.empty()) {
        axis.p50 = axis.p90 = axis.p95 = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    axis.p50 = percentile(axis.samples, 50.0);
    axis.p90 = percentile(axis.samples, 90.0);
    axis.p95 = percentile(axis.samples, 95.0);
}

RunStatistics aggregate(const std::vector<std::vector<EpochRecord>>& trials) {
    RunStatistics stats;
    std::vector<int> counts[3];
    std::size_t fixes = 0;
    for (const auto& trial : trials) {
        for (const auto& rec : trial) {
            const int r = static_cast<int>(rec.region);
            counts[0].push_back(rec.n_gps);
            counts[1].push_back(rec.n_haps);
            counts[2].push_back(rec.n_gnb);
            ++stats.epochs_total;
            if (rec.fix) {
                ++fixes;
                stats.horizontal[r].samples.push_back(rec.h_err_m);
                stats.vertical[r].samples.push_back(rec.v_err_m);
            }
        }
    }
    for (int r = 0; r < 2; ++r) {
        finalize_axis(stats.horizontal[r]);
        finalize_axis(stats.vertical[r]);
    }
    for (int k = 0; k < 3; ++k) {
        stats.availability[k] = counts[k].empty() ? AvailabilityStats{}
                                                  : availability_stats(counts[k]);
    }
    stats.fix_availability =
        stats.epochs_total == 0 ? 0.0 : static_cast<double>(fixes) / stats.epochs_total;
    return stats;
}

std::string fmt6(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double round6(double v) {
    if (std::isnan(v)) return v;
    return std::stod(fmt6(v));
}

json axis_json(const RegionAxisStats& axis) {
    json j;
    j["p50"] = axis.samples.empty() ? json() : json(round6(axis.p50));
    j["p90"] = axis.samples.empty() ? json() : json(round6(axis.p90));
    j["p95"] = axis.samples.empty() ? json() : json(round6(axis.p95));
    return j;
}

void write_epoch_csv(const std::vector<EpochRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "epoch_s,lat_deg,lon_deg,height_m,n_gps,n_haps,n_gnb,fix,"
           "h_err_m,v_err_m,hdop,vdop,raim_excluded\n";
    for (const auto& r : records) {
        out << fmt6(r.epoch_s) << ',' << fmt6(r.truth.lat_deg) << ',' << fmt6(r.truth.lon_deg)
            << ',' << fmt6(r.truth.height_m) << ',' << r.n_gps << ',' << r.n_haps << ','
            << r.n_gnb << ',' << (r.fix ? 1 : 0) << ',';
        if (r.fix) {
            out << fmt6(r.h_err_m) << ',' << fmt6(r.v_err_m) << ',' << fmt6(r.hdop) << ','
                << fmt6(r.vdop);
        } else {
            out << ",,,";
        }
        out << ',' << r.raim_excluded << '\n';
    }
}

void write_cdf_csv(const RegionAxisStats& axis, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "value_m,fraction\n";
    if (!axis.samples.empty()) {
        for (const auto& [value, fraction] : cdf(axis.samples)) {
            out << fmt6(value) << ',' << fmt6(fraction) << '\n';
        }
    }
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
    RunResult result;
    result.trials.resize(static_cast<std::size_t>(cfg.trials));

    const int workers = worker_count(cfg.trials);
    if (workers <= 1) {
        for (int t = 0; t < cfg.trials; ++t) {
            result.trials[static_cast<std::size_t>(t)] = run_trial(cfg, t);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1)) {
                    result.trials[static_cast<std::size_t>(t)] = run_trial(cfg, t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    result.stats = aggregate(result.trials);
    return result;
}

ComparisonReport compare_systems(const ScenarioConfig& cfg, const std::vector<SystemSet>& combos) {
    if (combos.empty()) throw ConfigError("compare: combo list is empty");
    ComparisonReport report;
    for (const auto& combo : combos) {
        if (!combo.any()) throw ConfigError("compare: empty system combo");
        ScenarioConfig run_cfg = cfg;
        run_cfg.systems = combo;  // same seed: common random numbers across combos
        report.entries.push_back({combo, combo.label(), run_scenario(run_cfg)});
    }
    return report;
}

double relative_improvement(double baseline, double other) {
    if (!(baseline > 0.0) || std::isnan(baseline) || std::isnan(other)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return (baseline - other) / baseline;
}

void emit_outputs(const ComparisonReport& report, const ScenarioConfig& cfg,
                  const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    json summary;
    summary["master_seed"] = cfg.master_seed;
    summary["trials"] = cfg.trials;
    summary["config"] = cfg.echo;
    summary["combos"] = json::array();

    static const char* region_names[2] = {"suburban", "urban"};
    static const char* kind_names[3] = {"gps", "haps", "gnb"};

    for (const auto& entry : report.entries) {
        for (std::size_t t = 0; t < entry.result.trials.size(); ++t) {
            write_epoch_csv(entry.result.trials[t],
                            (dir / ("epochs_" + entry.label + "_" + std::to_string(t) + ".csv"))
                                .string());
        }
        for (int r = 0; r < 2; ++r) {
            write_cdf_csv(entry.result.stats.horizontal[r],
                          (dir / ("cdf_" + entry.label + "_" + std::string(region_names[r]) +
                                  "_horizontal.csv"))
                              .string());
            write_cdf_csv(entry.result.stats.vertical[r],
                          (dir / ("cdf_" + entry.label + "_" + std::string(region_names[r]) +
                                  "_vertical.csv"))
                              .string());
        }

        json combo;
        combo["label"] = entry.label;
        for (int r = 0; r < 2; ++r) {
            combo["percentiles"][region_names[r]]["horizontal"] =
                axis_json(entry.result.stats.horizontal[r]);
            combo["percentiles"][region_names[r]]["vertical"] =
                axis_json(entry.result.stats.vertical[r]);
        }
        for (int k = 0; k < 3; ++k) {
            combo["availability"][kind_names[k]]["mean"] =
                round6(entry.result.stats.availability[k].mean);
            combo["availability"][kind_names[k]]["median"] =
                round6(entry.result.stats.availability[k].median);
        }
        combo["fix_availability"] = round6(entry.result.stats.fix_availability);
        summary["combos"].push_back(combo);
    }

    // p90 improvements of every combo relative to the first.
    summary["improvement_vs_first_p90"] = json::array();
    const RunStatistics& base = report.entries.front().result.stats;
    for (const auto& entry : report.entries) {
        json imp;
        imp["label"] = entry.label;
        for (int r = 0; r < 2; ++r) {
            const double h =
                relative_improvement(base.horizontal[r].p90, entry.result.stats.horizontal[r].p90);
            const double v =
                relative_improvement(base.vertical[r].p90, entry.result.stats.vertical[r].p90);
            imp[region_names[r]]["horizontal"] = std::isnan(h) ? json() : json(round6(h));
            imp[region_names[r]]["vertical"] = std::isnan(v) ? json() : json(round6(v));
        }
        summary["improvement_vs_first_p90"].push_back(imp);
    }

    std::ofstream out(dir / "summary.json", std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / "summary.json").string());
    out << summary.dump(2) << '\n';
}

std::vector<TrajectoryPoint> generate_trajectory(int epochs) {
    // Two-segment drive: suburban stretch up to the 380 s boundary, then an
    // urban stretch, at about 6.5 m/s and a constant 2 m height.
    const GeodeticCoord w0{45.3876, -75.6960, 2.0};
    const GeodeticCoord w1{45.4120, -75.6895, 2.0};
    const GeodeticCoord w2{45.4265, -75.6890, 2.0};
    const double t_break = 380.0;

    std::vector<TrajectoryPoint> points;
    points.reserve(static_cast<std::size_t>(epochs));
    const double t_end = static_cast<double>(epochs - 1);
    for (int i = 0; i < epochs; ++i) {
        const double t = static_cast<double>(i);
        GeodeticCoord p;
        if (t < t_break) {
            const double f = t / t_break;
            p = {w0.lat_deg + f * (w1.lat_deg - w0.lat_deg),
                 w0.lon_deg + f * (w1.lon_deg - w0.lon_deg), 2.0};
        } else {
            const double f = (t - t_break) / (t_end - t_break);
            p = {w1.lat_deg + f * (w2.lat_deg - w1.lat_deg),
                 w1.lon_deg + f * (w2.lon_deg - w1.lon_deg), 2.0};
        }
        points.push_back({t, p});
    }
    return points;
}

void write_trajectory_csv(const std::vector<TrajectoryPoint>& points, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "epoch_s,lat_deg,lon_deg,height_m\n";
    char buf[128];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9f,%.9f,%.9g\n", p.epoch_s, p.position.lat_deg,
                      p.position.lon_deg, p.position.height_m);
        out << buf;
    }
}

}  // namespace vhetpos
