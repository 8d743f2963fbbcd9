#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vhetpos/errors.hpp"
#include "vhetpos/experiment.hpp"

namespace {

using namespace vhetpos;

std::vector<SystemSet> parse_combos(const std::string& spec) {
    std::vector<SystemSet> combos;
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, ';')) {
        if (token.empty()) continue;
        combos.push_back(SystemSet::parse(token));
    }
    return combos;
}

void apply_overrides(ScenarioConfig& cfg, const std::string& systems, const std::string& raim,
                     std::int64_t seed) {
    if (!systems.empty()) {
        cfg.systems = SystemSet::parse(systems);
        if (!cfg.systems.any()) throw ConfigError("--systems must name at least one system");
        if (cfg.systems.haps && cfg.catalog.haps.empty()) {
            throw ConfigError("--systems includes haps but the scenario has no HAPS sites");
        }
        if (cfg.systems.gnb && cfg.catalog.gnbs.empty()) {
            throw ConfigError("--systems includes gnb but the scenario has no gNB sites");
        }
    }
    if (raim == "on") cfg.raim_enabled = true;
    else if (raim == "off") cfg.raim_enabled = false;
    else if (!raim.empty()) throw ConfigError("--raim must be on or off");
    if (seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(seed);
}

void print_echo(const ScenarioConfig& cfg) {
    for (const auto& line : cfg.echo) std::cout << "config: " << line << "\n";
    std::cout << "trajectory: " << cfg.trajectory.size() << " epochs, "
              << cfg.catalog.gps.size() << " almanac records, " << cfg.catalog.haps.size()
              << " HAPS sites, " << cfg.catalog.gnbs.size() << " gNB sites\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vhetpos - urban VHetNet positioning simulator (GPS + HAPS + 5G gNB)"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", systems, raim, combos_spec, traj_out;
    std::int64_t seed = -1;
    double max_d = 500.0, step = 1.0;
    int epochs = 700;

    auto* run = app.add_subcommand("run", "run one scenario and emit CSV/JSON outputs");
    run->add_option("--scenario", scenario_path, "scenario config file")->required();
    run->add_option("--seed", seed, "override master seed");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--raim", raim, "on|off override");
    run->add_option("--systems", systems, "comma list, e.g. gps,haps,gnb");

    auto* compare = app.add_subcommand("compare", "run several system combos with common seeds");
    compare->add_option("--scenario", scenario_path, "scenario config file")->required();
    compare->add_option("--combos", combos_spec,
                        "semicolon-separated combos, e.g. 'gps;gps,haps;gps,haps,gnb'")
        ->required();
    compare->add_option("--seed", seed, "override master seed");
    compare->add_option("--out", out_dir, "output directory");
    compare->add_option("--raim", raim, "on|off override");

    auto* los = app.add_subcommand("los-table", "print the gNB LOS probability curve");
    los->add_option("--max-d", max_d, "maximum 2-D baseline in meters");
    los->add_option("--step", step, "grid step in meters");

    auto* gen = app.add_subcommand("gen-trajectory", "write the bundled synthetic drive");
    gen->add_option("--out", traj_out, "output CSV path")->required();
    gen->add_option("--epochs", epochs, "number of 1 Hz epochs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            ScenarioConfig cfg = load_scenario(scenario_path);
            apply_overrides(cfg, systems, raim, seed);
            print_echo(cfg);
            ComparisonReport report;
            report.entries.push_back({cfg.systems, cfg.systems.label(), run_scenario(cfg)});
            emit_outputs(report, cfg, out_dir);
            const auto& stats = report.entries.front().result.stats;
            std::cout << "fix availability: " << stats.fix_availability << "\n";
            std::cout << "outputs written to " << out_dir << "\n";
        } else if (compare->parsed()) {
            ScenarioConfig cfg = load_scenario(scenario_path);
            apply_overrides(cfg, "", raim, seed);
            print_echo(cfg);
            const auto combos = parse_combos(combos_spec);
            const ComparisonReport report = compare_systems(cfg, combos);
            emit_outputs(report, cfg, out_dir);
            std::cout << "outputs written to " << out_dir << "\n";
        } else if (los->parsed()) {
            std::printf("d2d_m,p_los\n");
            for (double d = 0.0; d <= max_d; d += step) {
                std::printf("%.6g,%.6g\n", d, gnb_los_probability(d));
            }
        } else if (gen->parsed()) {
            write_trajectory_csv(generate_trajectory(epochs), traj_out);
            std::cout << "trajectory written to " << traj_out << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
