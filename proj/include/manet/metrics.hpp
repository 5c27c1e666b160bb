/*
 * manetsim: the four performance metrics derived from a run.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_METRICS_HPP
#define MANET_METRICS_HPP

#include "manet/simulator.hpp"

#include <array>
#include <optional>

namespace manet {

/// Ideal packet count of a flow up to `horizon`: floor((min(stop, horizon)
/// - start) / interval), with a tiny slack so exact multiples round up.
std::uint64_t ideal_packet_count(const FlowSpec& flow, SimTime horizon);

/// Normalized packet delivery ratio in percent: delivered over the ideal
/// count across flows. nullopt when no packet was ideally due.
std::optional<double> normalized_pdr(const SimResult& result, SimTime horizon);

/// Time of the first battery depletion; nullopt when every node survived.
std::optional<SimTime> network_lifetime(const SimResult& result);

/// (time, mean residual energy) samples recorded during the run.
const std::vector<std::pair<SimTime, double>>& avg_residual_series(const SimResult& result);

/// Ten bins over residual/initial: [0,10%) ... [90,100%], the top bin
/// closed. Bin counts sum to the node count.
std::array<std::uint32_t, 10> residual_histogram(const SimResult& result);

struct MetricsReport
{
    std::optional<double> normalized_pdr_pct;
    std::optional<SimTime> network_lifetime_s;
    std::vector<std::pair<SimTime, double>> avg_residual_series;
    std::array<std::uint32_t, 10> residual_histogram{};
};

MetricsReport make_report(const SimResult& result);

} // namespace manet

#endif // MANET_METRICS_HPP
