/*
 * manetsim: scenario validation.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/config.hpp"

#include <cmath>
#include <cstdio>

namespace manet {

const char* to_string(Protocol p)
{
    return p == Protocol::Standard ? "standard" : "multimetric";
}

const char* to_string(MobilityModel m)
{
    return m == MobilityModel::Static ? "static" : "random_waypoint";
}

ScenarioConfig& sync_weight_normalizers(ScenarioConfig& cfg)
{
    cfg.weight_params.e_max = cfg.initial_energy;
    cfg.weight_params.d_max = cfg.node_count >= 1 ? cfg.node_count - 1 : 0;
    cfg.weight_params.l_max = cfg.mac_queue_capacity;
    return cfg;
}

namespace {

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::vector<std::string> validate_config(const ScenarioConfig& cfg)
{
    std::vector<std::string> errors;
    auto fail = [&](std::string msg) { errors.push_back(std::move(msg)); };

    if (cfg.node_count < 2)
        fail("node_count must be >= 2 (got " + std::to_string(cfg.node_count) + ")");
    if (!(cfg.area_width > 0.0))
        fail("area_width must be > 0");
    if (!(cfg.area_height > 0.0))
        fail("area_height must be > 0");
    if (!(cfg.radio_range > 0.0))
        fail("radio_range must be > 0");
    if (!(cfg.bandwidth > 0.0))
        fail("bandwidth must be > 0");
    if (!(cfg.initial_energy > 0.0))
        fail("initial_energy must be > 0");
    if (cfg.tx_power < 0.0)
        fail("tx_power must be >= 0");
    if (cfg.rx_power < 0.0)
        fail("rx_power must be >= 0");
    if (cfg.idle_power < 0.0)
        fail("idle_power must be >= 0");

    if (cfg.mobility == MobilityModel::RandomWaypoint) {
        if (cfg.v_min > cfg.v_max)
            fail("v_min must be <= v_max");
        if (!(cfg.v_min > 0.0))
            fail("v_min must be > 0 for random_waypoint mobility");
        if (cfg.pause < 0.0)
            fail("pause must be >= 0");
    }

    if (!(cfg.hello_interval > 0.0))
        fail("hello_interval must be > 0");
    if (!(cfg.tc_interval > 0.0))
        fail("tc_interval must be > 0");
    if (!(cfg.tuple_hold_time > 0.0))
        fail("tuple_hold_time must be > 0");
    if (!(cfg.sim_duration > 0.0))
        fail("sim_duration must be > 0");
    if (!(cfg.sample_period > 0.0))
        fail("sample_period must be > 0");
    if (cfg.ttl < 1)
        fail("ttl must be >= 1");

    const WeightParams& wp = cfg.weight_params;
    if (wp.alpha1 < 0.0)
        fail("alpha1 must be >= 0");
    if (wp.alpha2 < 0.0)
        fail("alpha2 must be >= 0");
    if (wp.alpha3 < 0.0)
        fail("alpha3 must be >= 0");
    const double alpha_sum = wp.alpha1 + wp.alpha2 + wp.alpha3;
    if (std::fabs(alpha_sum - 1.0) > 1e-9)
        fail("alpha sum = " + num(alpha_sum) + ", alpha1+alpha2+alpha3 must equal 1");
    if (wp.l_max == 0)
        fail("l_max must be > 0");
    if (!(wp.e_max > 0.0))
        fail("e_max must be > 0");
    if (wp.d_max < 1)
        fail("d_max must be >= 1");
    if (cfg.mac_queue_capacity != wp.l_max)
        fail("mac_queue_capacity (" + std::to_string(cfg.mac_queue_capacity) +
             ") must equal l_max (" + std::to_string(wp.l_max) + ")");

    for (const FlowSpec& f : cfg.flows) {
        const std::string tag = "flow." + std::to_string(f.flow_id);
        const bool auto_src = f.src == kNoNode;
        const bool auto_dst = f.dst == kNoNode;
        if (!auto_src && f.src >= cfg.node_count)
            fail(tag + ".src out of range");
        if (!auto_dst && f.dst >= cfg.node_count)
            fail(tag + ".dst out of range");
        if (!auto_src && !auto_dst && f.src == f.dst)
            fail(tag + ": src must differ from dst");
        if (!(f.interval > 0.0))
            fail(tag + ".interval must be > 0");
        if (f.start < 0.0)
            fail(tag + ".start must be >= 0");
        if (f.stop < f.start)
            fail(tag + ".stop must be >= start");
    }

    return errors;
}

} // namespace manet
