/*
 * manetsim: experiment drivers.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/experiments.hpp"

#include "manet/csv.hpp"
#include "manet/svg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace manet {

namespace {

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            fn(i);
        }
    };
    std::vector<std::thread> threads;
    const unsigned extra = std::min<unsigned>(jobs, static_cast<unsigned>(count)) - 1;
    threads.reserve(extra);
    for (unsigned t = 0; t < extra; ++t)
        threads.emplace_back(worker);
    worker();
    for (auto& t : threads)
        t.join();
}

std::string interval_tag(double interval)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", interval);
    return buf;
}

ScenarioConfig common_scenario()
{
    ScenarioConfig cfg; // defaults carry the common parameters
    cfg.placement_gate = true;
    return cfg;
}

void add_cbr_flows(ScenarioConfig& cfg, double interval, double stop)
{
    for (std::uint32_t i = 0; i < 3; ++i) {
        FlowSpec f;
        f.flow_id = i;
        f.src = kNoNode; // endpoints drawn from the seed stream
        f.dst = kNoNode;
        f.packet_size = 512;
        f.interval = interval;
        f.start = 30.0;
        f.stop = stop;
        cfg.flows.push_back(f);
    }
}

} // namespace

std::vector<std::uint64_t> default_seeds()
{
    return {1, 2, 3};
}

double improvement_pct(double baseline, double candidate)
{
    return 100.0 * (candidate - baseline) / baseline;
}

RunArtifacts execute_run(const ScenarioConfig& cfg, const std::string& scenario_id)
{
    const auto errors = validate_config(cfg);
    if (!errors.empty())
        throw std::invalid_argument("invalid config for " + scenario_id + ": " + errors.front());
    RunArtifacts art;
    art.scenario_id = scenario_id;
    Simulator sim(cfg);
    art.result = sim.run();
    art.report = make_report(art.result);
    return art;
}

std::string summary_csv(const RunArtifacts& run)
{
    const SimResult& r = run.result;
    std::uint64_t queue = 0, noroute = 0, ttl = 0, energy = 0;
    for (const FlowCounters& c : r.flow_counters) {
        queue += c.dropped_queue;
        noroute += c.dropped_no_route;
        ttl += c.dropped_ttl;
        energy += c.dropped_energy;
    }
    std::ostringstream out;
    out << "scenario,protocol,seed,pdr_pct,lifetime_s,generated,delivered,"
           "drops_queue,drops_noroute,drops_ttl,drops_energy\n";
    out << run.scenario_id << ',' << to_string(r.protocol) << ',' << r.seed << ','
        << csv_opt(run.report.normalized_pdr_pct, 4) << ','
        << csv_opt(run.report.network_lifetime_s, 4) << ',' << r.total_generated() << ','
        << r.total_delivered() << ',' << queue << ',' << noroute << ',' << ttl << ',' << energy
        << '\n';
    return out.str();
}

std::string energy_series_csv(const RunArtifacts& run)
{
    std::ostringstream out;
    out << "t_s,avg_residual_j\n";
    for (auto [t, joules] : run.report.avg_residual_series)
        out << csv_num(t, 3) << ',' << csv_num(joules, 6) << '\n';
    return out.str();
}

std::string energy_histogram_csv(const RunArtifacts& run)
{
    std::ostringstream out;
    out << "bin_low_pct,bin_high_pct,node_count\n";
    for (int bin = 0; bin < 10; ++bin)
        out << bin * 10 << ',' << (bin + 1) * 10 << ','
            << run.report.residual_histogram[static_cast<std::size_t>(bin)] << '\n';
    return out.str();
}

bool write_run_artifacts(const RunArtifacts& run, const std::string& out_dir)
{
    return write_file(out_dir + "/summary.csv", summary_csv(run)) &&
           write_file(out_dir + "/energy_series.csv", energy_series_csv(run)) &&
           write_file(out_dir + "/energy_histogram.csv", energy_histogram_csv(run));
}

ScenarioConfig setup_a_config(Protocol protocol, std::uint64_t seed)
{
    ScenarioConfig cfg = common_scenario();
    cfg.protocol = protocol;
    cfg.seed = seed;
    cfg.sim_duration = 250.0;
    add_cbr_flows(cfg, 0.1, cfg.sim_duration);
    return cfg;
}

const std::vector<MobilityVariant>& setup_b_mobility_variants()
{
    static const std::vector<MobilityVariant> variants = {
        {"static", MobilityModel::Static, 0.0},
        {"rwp2", MobilityModel::RandomWaypoint, 2.0},
        {"rwp20", MobilityModel::RandomWaypoint, 20.0},
    };
    return variants;
}

const std::vector<double>& setup_b_intervals()
{
    static const std::vector<double> intervals = {0.1, 0.075, 0.05, 0.025};
    return intervals;
}

ScenarioConfig setup_b_config(double interval, const MobilityVariant& mobility,
                              Protocol protocol, std::uint64_t seed, bool depletion_mode)
{
    ScenarioConfig cfg = common_scenario();
    cfg.protocol = protocol;
    cfg.seed = seed;
    cfg.mobility = mobility.model;
    if (mobility.model == MobilityModel::RandomWaypoint) {
        cfg.v_min = 1.0;
        cfg.v_max = mobility.v_max;
        cfg.pause = 2.0;
        cfg.placement_gate = false; // the gate applies to static placements only
    }
    if (depletion_mode) {
        cfg.run_to_depletion = true;
        cfg.sim_duration = 2000.0; // safety cap; the run stops at first depletion
    } else {
        cfg.sim_duration = 150.0;
    }
    add_cbr_flows(cfg, interval, cfg.sim_duration);
    return cfg;
}

SetupAOutcome run_setup_a(const std::vector<std::uint64_t>& seeds, unsigned jobs)
{
    SetupAOutcome outcome;
    for (Protocol p : {Protocol::Standard, Protocol::MultiMetric})
        for (std::uint64_t seed : seeds)
            outcome.cells.push_back(SetupACell{p, seed, {}});

    parallel_for(outcome.cells.size(), jobs, [&](std::size_t i) {
        SetupACell& cell = outcome.cells[i];
        const std::string id =
            "setupA_" + std::string(to_string(cell.protocol)) + "_s" + std::to_string(cell.seed);
        cell.run = execute_run(setup_a_config(cell.protocol, cell.seed), id);
    });
    return outcome;
}

SetupBOutcome run_setup_b(const std::vector<std::uint64_t>& seeds,
                          const std::vector<double>& intervals, unsigned jobs)
{
    SetupBOutcome outcome;
    for (bool depletion : {false, true})
        for (double interval : intervals)
            for (const MobilityVariant& mob : setup_b_mobility_variants())
                for (Protocol p : {Protocol::Standard, Protocol::MultiMetric})
                    for (std::uint64_t seed : seeds)
                        outcome.cells.push_back(
                            SetupBCell{interval, mob.name, p, seed, depletion, {}});

    parallel_for(outcome.cells.size(), jobs, [&](std::size_t i) {
        SetupBCell& cell = outcome.cells[i];
        const MobilityVariant* mob = nullptr;
        for (const MobilityVariant& m : setup_b_mobility_variants())
            if (m.name == cell.mobility)
                mob = &m;
        const std::string id = "setupB_i" + interval_tag(cell.interval) + "_" + cell.mobility +
                               "_" + to_string(cell.protocol) + "_s" + std::to_string(cell.seed) +
                               (cell.depletion_mode ? "_life" : "_pdr");
        cell.run = execute_run(
            setup_b_config(cell.interval, *mob, cell.protocol, cell.seed, cell.depletion_mode),
            id);
    });
    return outcome;
}

namespace {

/// Seed-mean of the Setup A energy series per protocol; runs share the
/// fixed sample grid, so samples average index-wise.
std::vector<std::pair<SimTime, double>> mean_series(const SetupAOutcome& outcome, Protocol p)
{
    std::vector<std::pair<SimTime, double>> mean;
    std::size_t count = 0;
    for (const SetupACell& cell : outcome.cells) {
        if (cell.protocol != p)
            continue;
        const auto& series = cell.run.report.avg_residual_series;
        if (mean.empty())
            mean.assign(series.begin(), series.end());
        else
            for (std::size_t i = 0; i < mean.size() && i < series.size(); ++i)
                mean[i].second += series[i].second;
        ++count;
    }
    for (auto& [t, v] : mean)
        v /= static_cast<double>(count ? count : 1);
    return mean;
}

std::array<double, 10> mean_histogram(const SetupAOutcome& outcome, Protocol p)
{
    std::array<double, 10> mean{};
    std::size_t count = 0;
    for (const SetupACell& cell : outcome.cells) {
        if (cell.protocol != p)
            continue;
        for (std::size_t b = 0; b < 10; ++b)
            mean[b] += cell.run.report.residual_histogram[b];
        ++count;
    }
    for (double& v : mean)
        v /= static_cast<double>(count ? count : 1);
    return mean;
}

} // namespace

bool write_setup_a(const SetupAOutcome& outcome, const std::string& out_dir)
{
    bool ok = true;
    for (const SetupACell& cell : outcome.cells)
        ok = write_run_artifacts(cell.run, out_dir + "/runs/" + cell.run.scenario_id) && ok;

    const auto std_series = mean_series(outcome, Protocol::Standard);
    const auto multi_series = mean_series(outcome, Protocol::MultiMetric);
    {
        std::ostringstream csv;
        csv << "t_s,standard_avg_residual_j,multimetric_avg_residual_j\n";
        for (std::size_t i = 0; i < std_series.size() && i < multi_series.size(); ++i)
            csv << csv_num(std_series[i].first, 3) << ',' << csv_num(std_series[i].second, 6)
                << ',' << csv_num(multi_series[i].second, 6) << '\n';
        ok = write_file(out_dir + "/fig2_avg_energy.csv", csv.str()) && ok;

        std::vector<SvgSeries> series(2);
        series[0].label = "standard";
        series[1].label = "multimetric";
        for (auto [t, v] : std_series)
            series[0].points.emplace_back(t, v);
        for (auto [t, v] : multi_series)
            series[1].points.emplace_back(t, v);
        ok = write_file(out_dir + "/fig2_avg_energy.svg",
                        svg_line_chart("Average residual energy over time", "time [s]",
                                       "avg residual energy [J]", series)) &&
             ok;
    }

    const auto std_hist = mean_histogram(outcome, Protocol::Standard);
    const auto multi_hist = mean_histogram(outcome, Protocol::MultiMetric);
    {
        std::ostringstream csv;
        csv << "bin_low_pct,bin_high_pct,standard_node_count,multimetric_node_count\n";
        std::vector<SvgBarGroup> groups;
        for (int b = 0; b < 10; ++b) {
            csv << b * 10 << ',' << (b + 1) * 10 << ','
                << csv_num(std_hist[static_cast<std::size_t>(b)], 4) << ','
                << csv_num(multi_hist[static_cast<std::size_t>(b)], 4) << '\n';
            groups.push_back(SvgBarGroup{std::to_string(b * 10) + "-" + std::to_string(b * 10 + 10),
                                         {std_hist[static_cast<std::size_t>(b)],
                                          multi_hist[static_cast<std::size_t>(b)]}});
        }
        ok = write_file(out_dir + "/fig3_histogram.csv", csv.str()) && ok;
        ok = write_file(out_dir + "/fig3_histogram.svg",
                        svg_grouped_bars("End-of-run residual energy distribution",
                                         "nodes (seed mean)", {"standard", "multimetric"},
                                         groups)) &&
             ok;
    }
    return ok;
}

std::optional<double> seed_mean_pdr(const SetupBOutcome& outcome, double interval,
                                    const std::string& mobility, Protocol protocol)
{
    double sum = 0.0;
    int n = 0;
    for (const SetupBCell& cell : outcome.cells) {
        if (cell.depletion_mode || cell.interval != interval || cell.mobility != mobility ||
            cell.protocol != protocol)
            continue;
        if (!cell.run.report.normalized_pdr_pct)
            return std::nullopt;
        sum += *cell.run.report.normalized_pdr_pct;
        ++n;
    }
    if (n == 0)
        return std::nullopt;
    return sum / n;
}

std::optional<double> seed_mean_lifetime(const SetupBOutcome& outcome, double interval,
                                         const std::string& mobility, Protocol protocol)
{
    double sum = 0.0;
    int n = 0;
    for (const SetupBCell& cell : outcome.cells) {
        if (!cell.depletion_mode || cell.interval != interval || cell.mobility != mobility ||
            cell.protocol != protocol)
            continue;
        if (!cell.run.report.network_lifetime_s)
            return std::nullopt;
        sum += *cell.run.report.network_lifetime_s;
        ++n;
    }
    if (n == 0)
        return std::nullopt;
    return sum / n;
}

bool write_setup_b(const SetupBOutcome& outcome, const std::string& out_dir)
{
    bool ok = true;
    for (const SetupBCell& cell : outcome.cells)
        ok = write_run_artifacts(cell.run, out_dir + "/runs/" + cell.run.scenario_id) && ok;

    // Distinct grid coordinates in enumeration order.
    std::vector<double> intervals;
    for (const SetupBCell& c : outcome.cells)
        if (std::find(intervals.begin(), intervals.end(), c.interval) == intervals.end())
            intervals.push_back(c.interval);
    std::vector<std::string> mobilities;
    for (const SetupBCell& c : outcome.cells)
        if (std::find(mobilities.begin(), mobilities.end(), c.mobility) == mobilities.end())
            mobilities.push_back(c.mobility);

    {
        std::ostringstream csv;
        csv << "interval_s,mobility,protocol,seed,pdr_pct\n";
        for (const SetupBCell& cell : outcome.cells) {
            if (cell.depletion_mode)
                continue;
            csv << interval_tag(cell.interval) << ',' << cell.mobility << ','
                << to_string(cell.protocol) << ',' << cell.seed << ','
                << csv_opt(cell.run.report.normalized_pdr_pct, 4) << '\n';
        }
        for (double interval : intervals)
            for (const std::string& mob : mobilities)
                for (Protocol p : {Protocol::Standard, Protocol::MultiMetric})
                    csv << interval_tag(interval) << ',' << mob << ',' << to_string(p)
                        << ",mean," << csv_opt(seed_mean_pdr(outcome, interval, mob, p), 4)
                        << '\n';
        ok = write_file(out_dir + "/setupB_pdr.csv", csv.str()) && ok;
    }
    {
        std::ostringstream csv;
        csv << "interval_s,mobility,protocol,seed,lifetime_s\n";
        for (const SetupBCell& cell : outcome.cells) {
            if (!cell.depletion_mode)
                continue;
            csv << interval_tag(cell.interval) << ',' << cell.mobility << ','
                << to_string(cell.protocol) << ',' << cell.seed << ','
                << csv_opt(cell.run.report.network_lifetime_s, 4) << '\n';
        }
        for (double interval : intervals)
            for (const std::string& mob : mobilities)
                for (Protocol p : {Protocol::Standard, Protocol::MultiMetric})
                    csv << interval_tag(interval) << ',' << mob << ',' << to_string(p)
                        << ",mean," << csv_opt(seed_mean_lifetime(outcome, interval, mob, p), 4)
                        << '\n';
        ok = write_file(out_dir + "/setupB_lifetime.csv", csv.str()) && ok;
    }

    // Grouped-bar figures per mobility variant, one pair (PDR, lifetime).
    const std::map<std::string, std::string> fig_prefix = {
        {"static", "fig4"}, {"rwp2", "fig5"}, {"rwp20", "fig6"}};
    for (const std::string& mob : mobilities) {
        auto prefix_it = fig_prefix.find(mob);
        const std::string prefix =
            prefix_it != fig_prefix.end() ? prefix_it->second : ("fig_" + mob);
        std::vector<SvgBarGroup> pdr_groups, life_groups;
        for (double interval : intervals) {
            SvgBarGroup pg{interval_tag(interval) + " s", {}};
            SvgBarGroup lg = pg;
            for (Protocol p : {Protocol::Standard, Protocol::MultiMetric}) {
                pg.values.push_back(seed_mean_pdr(outcome, interval, mob, p).value_or(0.0));
                lg.values.push_back(seed_mean_lifetime(outcome, interval, mob, p).value_or(0.0));
            }
            pdr_groups.push_back(pg);
            life_groups.push_back(lg);
        }
        ok = write_file(out_dir + "/" + prefix + "a_pdr_" + mob + ".svg",
                        svg_grouped_bars("PDR, " + mob + " scenario", "PDR [%]",
                                         {"standard", "multimetric"}, pdr_groups)) &&
             ok;
        ok = write_file(out_dir + "/" + prefix + "b_lifetime_" + mob + ".svg",
                        svg_grouped_bars("Network lifetime, " + mob + " scenario",
                                         "lifetime [s]", {"standard", "multimetric"},
                                         life_groups)) &&
             ok;
    }
    return ok;
}

namespace {

struct CellKey
{
    std::string interval;
    std::string mobility;

    bool operator<(const CellKey& o) const
    {
        return std::tie(interval, mobility) < std::tie(o.interval, o.mobility);
    }
};

struct CellValues
{
    std::optional<double> pdr_standard, pdr_multi, life_standard, life_multi;
};

/// Reads one sweep CSV and folds the per-seed rows into seed means.
bool fold_sweep_csv(const std::string& path, bool lifetime, std::map<CellKey, CellValues>& cells)
{
    std::ifstream in(path);
    if (!in)
        return false;
    std::string line;
    std::getline(in, line); // header
    std::map<std::pair<CellKey, std::string>, std::pair<double, int>> acc;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string interval, mobility, protocol, seed, value;
        std::getline(row, interval, ',');
        std::getline(row, mobility, ',');
        std::getline(row, protocol, ',');
        std::getline(row, seed, ',');
        std::getline(row, value, ',');
        if (seed == "mean" || value.empty())
            continue;
        auto& slot = acc[{{interval, mobility}, protocol}];
        slot.first += std::stod(value);
        slot.second += 1;
    }
    for (const auto& [key, slot] : acc) {
        CellValues& cv = cells[key.first];
        const double mean = slot.first / slot.second;
        if (lifetime)
            (key.second == "standard" ? cv.life_standard : cv.life_multi) = mean;
        else
            (key.second == "standard" ? cv.pdr_standard : cv.pdr_multi) = mean;
    }
    return true;
}

} // namespace

std::optional<ReportOutcome> build_report(const std::string& results_dir)
{
    std::map<CellKey, CellValues> cells;
    const bool have_pdr = fold_sweep_csv(results_dir + "/setupB_pdr.csv", false, cells);
    const bool have_life = fold_sweep_csv(results_dir + "/setupB_lifetime.csv", true, cells);
    if (!have_pdr && !have_life)
        return std::nullopt;

    ReportOutcome out;
    std::ostringstream csv, table;
    csv << "interval_s,mobility,pdr_standard_pct,pdr_multimetric_pct,pdr_improvement_pct,"
           "lifetime_standard_s,lifetime_multimetric_s,lifetime_improvement_pct,status\n";
    table << "interval  mobility  pdr_std  pdr_multi  pdr_impr%  life_std  life_multi  "
             "life_impr%  status\n";

    for (const auto& [key, cv] : cells) {
        const bool complete =
            cv.pdr_standard && cv.pdr_multi && cv.life_standard && cv.life_multi;
        if (!complete)
            ++out.missing_cells;
        std::optional<double> pdr_impr, life_impr;
        if (cv.pdr_standard && cv.pdr_multi && *cv.pdr_standard != 0.0)
            pdr_impr = improvement_pct(*cv.pdr_standard, *cv.pdr_multi);
        if (cv.life_standard && cv.life_multi && *cv.life_standard != 0.0)
            life_impr = improvement_pct(*cv.life_standard, *cv.life_multi);
        const char* status = complete ? "ok" : "incomplete";

        csv << key.interval << ',' << key.mobility << ',' << csv_opt(cv.pdr_standard, 4) << ','
            << csv_opt(cv.pdr_multi, 4) << ',' << csv_opt(pdr_impr, 4) << ','
            << csv_opt(cv.life_standard, 4) << ',' << csv_opt(cv.life_multi, 4) << ','
            << csv_opt(life_impr, 4) << ',' << status << '\n';
        table << key.interval << "  " << key.mobility << "  " << csv_opt(cv.pdr_standard, 2)
              << "  " << csv_opt(cv.pdr_multi, 2) << "  " << csv_opt(pdr_impr, 2) << "  "
              << csv_opt(cv.life_standard, 2) << "  " << csv_opt(cv.life_multi, 2) << "  "
              << csv_opt(life_impr, 2) << "  " << status << '\n';
    }
    out.comparison_csv = csv.str();
    out.table_text = table.str();
    return out;
}

} // namespace manet
