/*
 * manetsim: performance metrics.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/metrics.hpp"

#include <cmath>

namespace manet {

std::uint64_t ideal_packet_count(const FlowSpec& flow, SimTime horizon)
{
    const double span = std::min(flow.stop, horizon) - flow.start;
    if (span <= 0.0)
        return 0;
    return static_cast<std::uint64_t>(std::floor(span / flow.interval + 1e-9));
}

std::optional<double> normalized_pdr(const SimResult& result, SimTime horizon)
{
    std::uint64_t ideal = 0;
    std::uint64_t delivered = 0;
    for (std::size_t i = 0; i < result.flows.size(); ++i) {
        ideal += ideal_packet_count(result.flows[i], horizon);
        delivered += result.flow_counters[i].delivered;
    }
    if (ideal == 0)
        return std::nullopt;
    return 100.0 * static_cast<double>(delivered) / static_cast<double>(ideal);
}

std::optional<SimTime> network_lifetime(const SimResult& result)
{
    std::optional<SimTime> lifetime;
    for (const EnergyLedger& e : result.energy)
        if (e.depleted_at && (!lifetime || *e.depleted_at < *lifetime))
            lifetime = *e.depleted_at;
    return lifetime;
}

const std::vector<std::pair<SimTime, double>>& avg_residual_series(const SimResult& result)
{
    return result.avg_residual_series;
}

std::array<std::uint32_t, 10> residual_histogram(const SimResult& result)
{
    std::array<std::uint32_t, 10> bins{};
    for (const EnergyLedger& e : result.energy) {
        const double frac = e.initial > 0.0 ? e.residual / e.initial : 0.0;
        int bin = static_cast<int>(std::floor(frac * 10.0));
        if (bin > 9)
            bin = 9; // a full battery belongs to the top bin
        if (bin < 0)
            bin = 0;
        ++bins[static_cast<std::size_t>(bin)];
    }
    return bins;
}

MetricsReport make_report(const SimResult& result)
{
    MetricsReport report;
    report.normalized_pdr_pct = normalized_pdr(result, result.end_time);
    report.network_lifetime_s = network_lifetime(result);
    report.avg_residual_series = result.avg_residual_series;
    report.residual_histogram = residual_histogram(result);
    return report;
}

} // namespace manet
