/*
 * manetsim: acceptance suite. Runs the full experiment grids plus the
 * property checks and prints one verdict line per criterion.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "graph_gen.hpp"
#include "manet/experiments.hpp"
#include "manet/metrics.hpp"
#include "manet/routing.hpp"
#include "manet/routing_oracle.hpp"
#include "manet/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

using namespace manet;
using manet::testutil::random_connected_graph;
using manet::testutil::TestGraph;

namespace {

int g_failures = 0;

void verdict(int criterion, bool pass, const std::string& what, const std::string& detail)
{
    std::printf("[%s] Criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

double final_mean_residual(const SetupAOutcome& outcome, Protocol p)
{
    double sum = 0.0;
    int n = 0;
    for (const SetupACell& cell : outcome.cells) {
        if (cell.protocol != p)
            continue;
        sum += cell.run.report.avg_residual_series.back().second;
        ++n;
    }
    return sum / n;
}

double mean_bin_fraction(const SetupAOutcome& outcome, Protocol p, int lo_bin, int hi_bin)
{
    double sum = 0.0;
    int n = 0;
    for (const SetupACell& cell : outcome.cells) {
        if (cell.protocol != p)
            continue;
        std::uint32_t in_bins = 0, total = 0;
        for (int b = 0; b < 10; ++b) {
            const std::uint32_t c = cell.run.report.residual_histogram[static_cast<std::size_t>(b)];
            total += c;
            if (b >= lo_bin && b <= hi_bin)
                in_bins += c;
        }
        sum += static_cast<double>(in_bins) / total;
        ++n;
    }
    return sum / n;
}

double mean_bin_count(const SetupAOutcome& outcome, Protocol p, int bin)
{
    double sum = 0.0;
    int n = 0;
    for (const SetupACell& cell : outcome.cells) {
        if (cell.protocol != p)
            continue;
        sum += cell.run.report.residual_histogram[static_cast<std::size_t>(bin)];
        ++n;
    }
    return sum / n;
}

void check_run_invariants(const SimResult& r, bool& conservation_ok, bool& overhear_ok,
                          bool& coverage_ok, std::string& detail)
{
    for (const EnergyLedger& e : r.energy) {
        const double consumed =
            e.consumed_tx + e.consumed_rx + e.consumed_overhear + e.consumed_idle;
        if (std::fabs(e.initial - e.residual - consumed) > 1e-9 * e.initial) {
            conservation_ok = false;
            detail = "ledger identity off by " + fmt(e.initial - e.residual - consumed);
        }
    }
    if (r.deliveries_scheduled != r.rx_charges) {
        overhear_ok = false;
        detail = "scheduled " + std::to_string(r.deliveries_scheduled) + " vs charged " +
                 std::to_string(r.rx_charges);
    }
    if (r.mpr_coverage_violations != 0) {
        coverage_ok = false;
        detail = std::to_string(r.mpr_coverage_violations) + " uncovered recomputations";
    }
}

} // namespace

int main(int argc, char** argv)
{
    const std::string out_dir = argc > 1 ? argv[1] : "acceptance_out";
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    const auto seeds = default_seeds();

    std::printf("running setup A (6 runs) and setup B (144 runs) with %u jobs...\n", jobs);
    std::fflush(stdout);
    const SetupAOutcome setup_a = run_setup_a(seeds, jobs);
    write_setup_a(setup_a, out_dir + "/setupA");
    const SetupBOutcome setup_b = run_setup_b(seeds, setup_b_intervals(), jobs);
    write_setup_b(setup_b, out_dir + "/setupB");

    // ---- 1: Setup A energy savings ------------------------------------
    {
        const double std_final = final_mean_residual(setup_a, Protocol::Standard);
        const double multi_final = final_mean_residual(setup_a, Protocol::MultiMetric);
        const double threshold = 0.05 * 7.0;
        verdict(1, multi_final - std_final >= threshold,
                "setup A final avg residual energy advantage >= 5% of initial",
                "standard " + fmt(std_final) + " J, multimetric " + fmt(multi_final) +
                    " J, advantage " + fmt(multi_final - std_final) + " J, need " +
                    fmt(threshold));
    }

    // ---- 2: Setup A dispersion -----------------------------------------
    {
        const double std_mid = mean_bin_fraction(setup_a, Protocol::Standard, 3, 6);
        const double multi_mid = mean_bin_fraction(setup_a, Protocol::MultiMetric, 3, 6);
        const double std_low = mean_bin_count(setup_a, Protocol::Standard, 0);
        const double multi_low = mean_bin_count(setup_a, Protocol::MultiMetric, 0);
        verdict(2, multi_mid > std_mid && multi_low <= std_low,
                "setup A 30-70% residual fraction larger and <10% count no larger",
                "mid " + fmt(std_mid) + " -> " + fmt(multi_mid) + ", low " + fmt(std_low) +
                    " -> " + fmt(multi_low));
    }

    // ---- 3/4/5/6: Setup B comparisons ----------------------------------
    {
        const auto& intervals = setup_b_intervals();
        bool life_ok = true;
        int strong = 0;
        std::ostringstream detail;
        for (double i : intervals) {
            const auto s = seed_mean_lifetime(setup_b, i, "static", Protocol::Standard);
            const auto m = seed_mean_lifetime(setup_b, i, "static", Protocol::MultiMetric);
            if (!s || !m) {
                life_ok = false;
                detail << i << ": missing; ";
                continue;
            }
            const double impr = improvement_pct(*s, *m);
            detail << i << "s: +" << fmt(impr) << "%; ";
            if (impr < 3.0)
                life_ok = false;
            if (impr >= 5.0)
                ++strong;
        }
        verdict(3, life_ok && strong >= 2,
                "setup B static lifetime improvement >= 3% everywhere, >= 5% twice",
                detail.str());
    }
    {
        const auto& intervals = setup_b_intervals();
        bool no_regression = true;
        bool strict = false;
        std::ostringstream detail;
        for (double i : intervals) {
            const auto s = seed_mean_pdr(setup_b, i, "static", Protocol::Standard);
            const auto m = seed_mean_pdr(setup_b, i, "static", Protocol::MultiMetric);
            if (!s || !m) {
                no_regression = false;
                detail << i << ": missing; ";
                continue;
            }
            detail << i << "s: " << fmt(*s) << " -> " << fmt(*m) << "; ";
            if (*m < *s - 1.0)
                no_regression = false;
            if (*m > *s + 1e-9)
                strict = true;
        }
        verdict(4, no_regression && strict,
                "setup B static PDR within 1 point everywhere, better somewhere",
                detail.str());
    }
    {
        const auto& intervals = setup_b_intervals(); // widest to narrowest
        bool monotone = true;
        std::ostringstream detail;
        for (Protocol p : {Protocol::Standard, Protocol::MultiMetric}) {
            double prev_pdr = 1e18, prev_life = 1e18;
            for (double i : intervals) {
                const auto pdr = seed_mean_pdr(setup_b, i, "static", p);
                const auto life = seed_mean_lifetime(setup_b, i, "static", p);
                if (!pdr || !life) {
                    monotone = false;
                    continue;
                }
                if (*pdr > prev_pdr + 1e-9 || *life > prev_life + 1e-9) {
                    monotone = false;
                    detail << to_string(p) << "@" << i << " rises; ";
                }
                prev_pdr = *pdr;
                prev_life = *life;
            }
        }
        verdict(5, monotone, "PDR and lifetime non-increasing as the rate grows (static)",
                detail.str().empty() ? "monotone for both protocols" : detail.str());
    }
    {
        const auto& intervals = setup_b_intervals();
        bool attenuated = true;
        std::ostringstream detail;
        for (double i : intervals) {
            const auto ss = seed_mean_lifetime(setup_b, i, "static", Protocol::Standard);
            const auto sm = seed_mean_lifetime(setup_b, i, "static", Protocol::MultiMetric);
            const auto hs = seed_mean_lifetime(setup_b, i, "rwp20", Protocol::Standard);
            const auto hm = seed_mean_lifetime(setup_b, i, "rwp20", Protocol::MultiMetric);
            if (!ss || !sm || !hs || !hm) {
                attenuated = false;
                detail << i << ": missing; ";
                continue;
            }
            const double static_impr = improvement_pct(*ss, *sm);
            const double mobile_impr = improvement_pct(*hs, *hm);
            detail << i << "s: static +" << fmt(static_impr) << "% vs rwp20 +"
                   << fmt(mobile_impr) << "%; ";
            if (mobile_impr > static_impr + 1e-9)
                attenuated = false;
        }
        verdict(6, attenuated, "high-mobility lifetime improvement never exceeds static",
                detail.str());
    }

    // ---- 7: weight formula ---------------------------------------------
    {
        WeightParams p;
        bool ok = true;
        std::string detail = "bounds on 1e5 samples; extremes and midpoint to 1e-12";
        std::mt19937_64 rng(2468);
        std::uniform_int_distribution<std::uint32_t> q(0, 300);
        std::uniform_real_distribution<double> e(-1.0, 10.0);
        std::uniform_int_distribution<std::uint32_t> d(0, 90);
        for (int i = 0; i < 100000 && ok; ++i) {
            const double w = compute_weight({q(rng), e(rng), d(rng)}, p);
            if (!(w >= 0.0 && w <= 1.0)) {
                ok = false;
                detail = "out of range at sample " + std::to_string(i);
            }
        }
        if (std::fabs(compute_weight({0, 7.0, 0}, p) - 0.0) > 1e-12)
            ok = false;
        if (std::fabs(compute_weight({100, 0.0, 29}, p) - 1.0) > 1e-12)
            ok = false;
        if (std::fabs(compute_weight({50, 3.5, 29}, p) - 2.0 / 3.0) > 1e-12) {
            ok = false;
            detail = "midpoint " + fmt(compute_weight({50, 3.5, 29}, p)) + " != 2/3";
        }
        verdict(7, ok, "weight formula bounds and pinned examples", detail);
    }

    // ---- 8/9: routing oracles over 500 random connected graphs ----------
    {
        std::mt19937_64 rng(1357);
        bool bfs_ok = true, admissible_ok = true, reduction_ok = true;
        std::string detail8 = "500 graphs, all sources";
        std::string detail9 = "admissible and reduces to min-hop";
        for (int iter = 0; iter < 500; ++iter) {
            TestGraph g = random_connected_graph(rng, 30);
            for (NodeId src = 0; src < g.n; ++src) {
                const auto nbrs = g.neighbors_of(src);
                auto table = compute_routing_table_standard(src, nbrs, g.tuples);
                auto hops = bfs_hop_counts(src, nbrs, g.tuples);
                if (table.size() != hops.size())
                    bfs_ok = false;
                for (const auto& [dest, h] : hops) {
                    const RoutingEntry* e = table.lookup(dest);
                    if (!e || e->cost != static_cast<double>(h)) {
                        bfs_ok = false;
                        detail8 = "mismatch at graph " + std::to_string(iter);
                    }
                }
                auto multi = compute_routing_table_multimetric(src, nbrs, g.tuples);
                auto exact = dijkstra_oracle(src, nbrs, g.tuples);
                if (multi.size() != exact.size())
                    admissible_ok = false;
                for (const auto& [dest, opt] : exact) {
                    const RoutingEntry* e = multi.lookup(dest);
                    if (!e || e->cost < opt - 1e-12) {
                        admissible_ok = false;
                        detail9 = "cost below oracle at graph " + std::to_string(iter);
                    }
                }
            }
            // reduction on a uniform-weight copy of the same topology
            TestGraph u = g;
            const double w = 0.25 + 0.5 * (iter % 3) * 0.5;
            for (auto& t : u.tuples)
                t.weight = w;
            for (NodeId src = 0; src < u.n; ++src) {
                const auto nbrs = u.neighbors_of(src);
                auto multi = compute_routing_table_multimetric(src, nbrs, u.tuples);
                auto standard = compute_routing_table_standard(src, nbrs, u.tuples);
                if (multi.size() != standard.size())
                    reduction_ok = false;
                for (const auto& [dest, e] : standard.entries()) {
                    const RoutingEntry* m = multi.lookup(dest);
                    if (!m || m->next_hop != e.next_hop ||
                        std::fabs(m->cost - (1.0 + (e.cost - 1.0) * w)) > 1e-12) {
                        reduction_ok = false;
                        detail9 = "reduction breaks at graph " + std::to_string(iter);
                    }
                }
            }
        }
        verdict(8, bfs_ok, "standard routing equals BFS hop counts", detail8);
        verdict(9, admissible_ok && reduction_ok,
                "greedy cost admissible; uniform weights give min-hop next hops", detail9);
    }

    // ---- 10/11: invariants across every sweep run ------------------------
    {
        bool conservation_ok = true, overhear_ok = true, coverage_ok = true;
        std::string detail = "all sweep runs";
        for (const SetupACell& cell : setup_a.cells)
            check_run_invariants(cell.run.result, conservation_ok, overhear_ok, coverage_ok,
                                 detail);
        for (const SetupBCell& cell : setup_b.cells)
            check_run_invariants(cell.run.result, conservation_ok, overhear_ok, coverage_ok,
                                 detail);

        // pinned miniature: three mutually in-range nodes charge two
        // receivers per completed transmission
        ScenarioConfig tiny;
        tiny.node_count = 3;
        tiny.area_width = 100.0;
        tiny.area_height = 100.0;
        tiny.sim_duration = 40.0;
        sync_weight_normalizers(tiny);
        FlowSpec f;
        f.src = 0;
        f.dst = 1;
        f.interval = 0.1;
        f.start = 10.0;
        f.stop = 40.0;
        tiny.flows.push_back(f);
        const SimResult tiny_r = Simulator(tiny).run();
        if (tiny_r.deliveries_scheduled != 2 * tiny_r.transmissions)
            overhear_ok = false;
        check_run_invariants(tiny_r, conservation_ok, overhear_ok, coverage_ok, detail);

        verdict(10, conservation_ok && overhear_ok,
                "energy ledgers exact; per-transmission charges equal alive in-range nodes",
                detail);
        verdict(11, coverage_ok, "MPR coverage on every recomputation in every run", detail);
    }

    // ---- 12: byte-identical summaries -----------------------------------
    {
        const MobilityVariant& rwp2 = setup_b_mobility_variants()[1];
        const ScenarioConfig cfg =
            setup_b_config(0.05, rwp2, Protocol::MultiMetric, 2, false);
        RunArtifacts a = execute_run(cfg, "determinism_cell");
        RunArtifacts b = execute_run(cfg, "determinism_cell");
        const bool ok = summary_csv(a) == summary_csv(b) &&
                        energy_series_csv(a) == energy_series_csv(b) &&
                        energy_histogram_csv(a) == energy_histogram_csv(b);
        verdict(12, ok, "repeated grid cell reproduces byte-identical CSVs",
                ok ? "summary/series/histogram equal" : "artifact bytes differ");
    }

    // ---- 13: wire format --------------------------------------------------
    {
        std::mt19937_64 rng(8642);
        std::uniform_real_distribution<double> wdist(0.0, 1.0);
        std::uniform_int_distribution<std::uint32_t> id(0, 5000);
        std::uniform_int_distribution<int> count(0, 30);
        std::uniform_int_distribution<int> seq(0, 65535);
        bool ok = true;
        std::string detail = "1e4 random messages";
        const double max_err = std::ldexp(1.0, -32);
        for (int i = 0; i < 10000 && ok; ++i) {
            TcMessage m;
            m.originator = id(rng);
            m.ansn = static_cast<std::uint16_t>(seq(rng));
            m.weight = wdist(rng);
            const int n = count(rng);
            for (int k = 0; k < n; ++k)
                m.advertised.push_back(id(rng));
            const auto bytes = serialize_tc(m);
            const auto back = deserialize_tc(bytes);
            if (!back || back->originator != m.originator || back->ansn != m.ansn ||
                back->advertised != m.advertised ||
                std::fabs(back->weight - m.weight) > max_err ||
                serialize_tc(*back) != bytes) {
                ok = false;
                detail = "failure at message " + std::to_string(i);
            }
        }
        if (encode_weight(0.5) != 0x7fffffffu)
            ok = false;
        verdict(13, ok, "TC wire round trip exact, weight quantization <= 2^-32", detail);
    }

    // ---- 14: single-hop sanity ---------------------------------------------
    {
        ScenarioConfig cfg;
        cfg.node_count = 2;
        cfg.area_width = 100.0;
        cfg.area_height = 100.0;
        sync_weight_normalizers(cfg);
        FlowSpec f;
        f.src = 0;
        f.dst = 1;
        f.interval = 0.1;
        f.start = 30.0;
        f.stop = 150.0;
        cfg.flows.push_back(f);
        const SimResult r = Simulator(cfg).run();
        const auto pdr = normalized_pdr(r, r.end_time);
        const FlowCounters& c = r.flow_counters[0];
        const bool ok = pdr && *pdr == 100.0 && c.dropped_no_route == 0 &&
                        c.dropped_queue == 0 && c.dropped_ttl == 0 && c.dropped_energy == 0;
        verdict(14, ok, "two nodes in range deliver 100.0% with zero drops",
                "pdr " + (pdr ? fmt(*pdr) : std::string("none")) + ", drops " +
                    std::to_string(c.dropped_total()));
    }

    std::printf("%d criterion failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
