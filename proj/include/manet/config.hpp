/*
 * manetsim: scenario configuration and validation.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_CONFIG_HPP
#define MANET_CONFIG_HPP

#include "manet/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace manet {

/// Full description of one simulation run. Defaults reproduce the common
/// experiment parameters: 30 nodes in 2000 m x 2000 m, 7 J batteries,
/// 1 Mbps links, 512-byte CBR packets starting at t = 30 s.
struct ScenarioConfig
{
    double area_width = 2000.0;  ///< meters
    double area_height = 2000.0; ///< meters
    std::uint32_t node_count = 30;
    double radio_range = 530.0;  ///< unit-disk radius, meters
    double bandwidth = 1.0e6;    ///< bits/sec
    double initial_energy = 7.0; ///< joules per node
    double tx_power = 0.22;      ///< watts while transmitting
    double rx_power = 0.18;      ///< watts while receiving or overhearing
    double idle_power = 0.0;     ///< watts while idle

    std::vector<FlowSpec> flows;

    MobilityModel mobility = MobilityModel::Static;
    double v_min = 1.0; ///< m/s, random waypoint only
    double v_max = 2.0; ///< m/s
    double pause = 2.0; ///< seconds at each waypoint

    WeightParams weight_params;
    Protocol protocol = Protocol::Standard;

    double hello_interval = 2.0;   ///< seconds
    double tc_interval = 5.0;      ///< seconds
    double tuple_hold_time = 6.0;  ///< hold for HELLO-born tuples; TC-born
                                   ///< tuples scale by tc_interval/hello_interval
    double sim_duration = 150.0;   ///< seconds (hard cap in every mode)
    bool run_to_depletion = false; ///< stop at the first battery depletion
    std::uint64_t seed = 1;
    std::uint32_t mac_queue_capacity = 100; ///< packets, must equal l_max
    std::uint32_t ttl = 32;                 ///< initial hop budget of data packets
    double sample_period = 5.0;             ///< residual-energy sampling, seconds
    bool placement_gate = false; ///< redraw static placements until connected
                                 ///< with hop diameter in [3,5]

    /// Hold time for tuples refreshed every `origin_interval` seconds.
    double hold_for(double origin_interval) const
    {
        return tuple_hold_time / hello_interval * origin_interval;
    }
};

/// Checks every config invariant; returns one message per violation
/// (empty means valid). Messages name the offending field.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);

/// Re-derives the weight normalizers from the scenario itself:
/// e_max = initial_energy, d_max = node_count - 1, l_max = mac_queue_capacity.
ScenarioConfig& sync_weight_normalizers(ScenarioConfig& cfg);

} // namespace manet

#endif // MANET_CONFIG_HPP
