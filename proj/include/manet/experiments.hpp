/*
 * manetsim: experiment drivers. Single runs with CSV artifacts, the two
 * sweep grids, and the protocol comparison report.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_EXPERIMENTS_HPP
#define MANET_EXPERIMENTS_HPP

#include "manet/config.hpp"
#include "manet/metrics.hpp"
#include "manet/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace manet {

struct RunArtifacts
{
    std::string scenario_id;
    SimResult result;
    MetricsReport report;
};

/// Executes one validated config; deterministic for a given config.
RunArtifacts execute_run(const ScenarioConfig& cfg, const std::string& scenario_id);

/// summary.csv / energy_series.csv / energy_histogram.csv bodies.
std::string summary_csv(const RunArtifacts& run);
std::string energy_series_csv(const RunArtifacts& run);
std::string energy_histogram_csv(const RunArtifacts& run);

/// Writes the three per-run CSVs into `out_dir`. Returns false on I/O error.
bool write_run_artifacts(const RunArtifacts& run, const std::string& out_dir);

// --- sweep grids -------------------------------------------------------

/// Static 250 s scenario at 10 packets/s; energy metrics are the point.
ScenarioConfig setup_a_config(Protocol protocol, std::uint64_t seed);

struct MobilityVariant
{
    std::string name;    ///< static | rwp2 | rwp20
    MobilityModel model;
    double v_max;
};

const std::vector<MobilityVariant>& setup_b_mobility_variants();
const std::vector<double>& setup_b_intervals(); ///< {0.1, 0.075, 0.05, 0.025}

/// PDR cells run a fixed 150 s horizon; lifetime cells run to the first
/// depletion (capped at 2000 s).
ScenarioConfig setup_b_config(double interval, const MobilityVariant& mobility,
                              Protocol protocol, std::uint64_t seed, bool depletion_mode);

struct SetupACell
{
    Protocol protocol;
    std::uint64_t seed;
    RunArtifacts run;
};

struct SetupAOutcome
{
    std::vector<SetupACell> cells;
};

struct SetupBCell
{
    double interval;
    std::string mobility;
    Protocol protocol;
    std::uint64_t seed;
    bool depletion_mode;
    RunArtifacts run;
};

struct SetupBOutcome
{
    std::vector<SetupBCell> cells;
};

SetupAOutcome run_setup_a(const std::vector<std::uint64_t>& seeds, unsigned jobs);
SetupBOutcome run_setup_b(const std::vector<std::uint64_t>& seeds,
                          const std::vector<double>& intervals, unsigned jobs);

bool write_setup_a(const SetupAOutcome& outcome, const std::string& out_dir);
bool write_setup_b(const SetupBOutcome& outcome, const std::string& out_dir);

/// Seed means over a Setup B grid cell; nullopt when any seed lacks a value.
std::optional<double> seed_mean_pdr(const SetupBOutcome& outcome, double interval,
                                    const std::string& mobility, Protocol protocol);
std::optional<double> seed_mean_lifetime(const SetupBOutcome& outcome, double interval,
                                         const std::string& mobility, Protocol protocol);

/// Builds comparison.csv (plus a printable table) from sweep CSVs in
/// `results_dir`. Missing cells flag the row incomplete but do not abort.
struct ReportOutcome
{
    std::string table_text;
    std::string comparison_csv;
    int missing_cells = 0;
};

std::optional<ReportOutcome> build_report(const std::string& results_dir);

/// Percent improvement of `candidate` over `baseline`.
double improvement_pct(double baseline, double candidate);

std::vector<std::uint64_t> default_seeds(); ///< {1, 2, 3}

} // namespace manet

#endif // MANET_EXPERIMENTS_HPP
