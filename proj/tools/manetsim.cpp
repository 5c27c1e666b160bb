/*
 * manetsim: command-line front end. `run` executes a scenario file, the
 * sweep commands reproduce the two experiment grids, `report` compares the
 * protocols from sweep artifacts.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "CLI11.hpp"

#include "manet/config_io.hpp"
#include "manet/csv.hpp"
#include "manet/experiments.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace {

std::string default_out_dir()
{
    if (const char* env = std::getenv("MANETSIM_OUT"))
        return env;
    return "results";
}

unsigned default_jobs()
{
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

int fail(const std::string& msg)
{
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"deterministic OLSR / multi-metric OLSR network simulator"};
    app.require_subcommand(1);

    std::string out_dir = default_out_dir();
    unsigned jobs = default_jobs();
    std::vector<std::uint64_t> seeds = manet::default_seeds();

    // --- run -------------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "execute one scenario file");
    std::string config_path;
    std::string protocol_override, mobility_override;
    std::int64_t seed_override = -1;
    run_cmd->add_option("--config", config_path, "scenario file")->required();
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--seed", seed_override, "override the scenario seed");
    run_cmd->add_option("--protocol", protocol_override, "standard | multimetric");
    run_cmd->add_option("--mobility", mobility_override,
                        "static | random_waypoint override");

    // --- sweeps ------------------------------------------------------------
    auto* sweep_a = app.add_subcommand("sweep-a", "static energy study (250 s, 10 pkt/s)");
    sweep_a->add_option("--out", out_dir, "output directory");
    sweep_a->add_option("--seeds", seeds, "seed list");
    sweep_a->add_option("--jobs", jobs, "parallel runs");

    auto* sweep_b = app.add_subcommand(
        "sweep-b", "rate x mobility grid for PDR (150 s) and lifetime (run to depletion)");
    std::vector<double> intervals = manet::setup_b_intervals();
    sweep_b->add_option("--out", out_dir, "output directory");
    sweep_b->add_option("--seeds", seeds, "seed list");
    sweep_b->add_option("--intervals", intervals, "packet interarrival times, seconds");
    sweep_b->add_option("--jobs", jobs, "parallel runs");

    // --- report ------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "protocol comparison from sweep CSVs");
    std::string results_dir;
    report_cmd->add_option("results_dir", results_dir, "directory holding setupB_*.csv")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            manet::ConfigParseResult parsed = manet::load_config_file(config_path);
            if (!parsed.ok()) {
                for (const std::string& e : parsed.errors)
                    std::fprintf(stderr, "config error: %s\n", e.c_str());
                return 1;
            }
            manet::ScenarioConfig cfg = parsed.config;
            if (seed_override >= 0)
                cfg.seed = static_cast<std::uint64_t>(seed_override);
            if (!protocol_override.empty()) {
                if (protocol_override == "standard")
                    cfg.protocol = manet::Protocol::Standard;
                else if (protocol_override == "multimetric")
                    cfg.protocol = manet::Protocol::MultiMetric;
                else
                    return fail("unknown --protocol: " + protocol_override);
            }
            if (!mobility_override.empty()) {
                if (mobility_override == "static")
                    cfg.mobility = manet::MobilityModel::Static;
                else if (mobility_override == "random_waypoint")
                    cfg.mobility = manet::MobilityModel::RandomWaypoint;
                else
                    return fail("unknown --mobility: " + mobility_override);
            }
            const auto errors = manet::validate_config(cfg);
            if (!errors.empty()) {
                for (const std::string& e : errors)
                    std::fprintf(stderr, "config error: %s\n", e.c_str());
                return 1;
            }
            manet::RunArtifacts art = manet::execute_run(
                cfg, "run_" + std::string(manet::to_string(cfg.protocol)) + "_s" +
                         std::to_string(cfg.seed));
            if (!manet::write_run_artifacts(art, out_dir))
                return fail("cannot write artifacts into " + out_dir);
            std::printf("%s: events=%llu", art.scenario_id.c_str(),
                        static_cast<unsigned long long>(art.result.event_count));
            if (art.report.normalized_pdr_pct)
                std::printf(" pdr=%.4f%%", *art.report.normalized_pdr_pct);
            if (art.report.network_lifetime_s)
                std::printf(" lifetime=%.4fs", *art.report.network_lifetime_s);
            std::printf(" -> %s\n", out_dir.c_str());
            return 0;
        }

        if (*sweep_a) {
            manet::SetupAOutcome outcome = manet::run_setup_a(seeds, jobs);
            if (!manet::write_setup_a(outcome, out_dir))
                return fail("cannot write sweep artifacts into " + out_dir);
            std::printf("sweep-a: %zu runs -> %s\n", outcome.cells.size(), out_dir.c_str());
            return 0;
        }

        if (*sweep_b) {
            manet::SetupBOutcome outcome = manet::run_setup_b(seeds, intervals, jobs);
            if (!manet::write_setup_b(outcome, out_dir))
                return fail("cannot write sweep artifacts into " + out_dir);
            std::printf("sweep-b: %zu runs -> %s\n", outcome.cells.size(), out_dir.c_str());
            return 0;
        }

        if (*report_cmd) {
            auto report = manet::build_report(results_dir);
            if (!report)
                return fail("no sweep CSVs found in " + results_dir);
            std::fputs(report->table_text.c_str(), stdout);
            if (!manet::write_file(results_dir + "/comparison.csv", report->comparison_csv))
                return fail("cannot write comparison.csv");
            if (report->missing_cells)
                std::fprintf(stderr, "warning: %d incomplete cells\n", report->missing_cells);
            return 0;
        }
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return 0;
}
