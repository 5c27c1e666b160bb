/*
 * manetsim: deterministic discrete-event engine. Unit-disk broadcast channel,
 * per-node FIFO MAC queue serialized at the link bandwidth, transmit/receive/
 * overhear energy accounting, random-waypoint mobility, and the run loop
 * binding protocol, routing, and traffic together.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_SIMULATOR_HPP
#define MANET_SIMULATOR_HPP

#include "manet/config.hpp"
#include "manet/olsr_state.hpp"
#include "manet/routing.hpp"
#include "manet/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace manet {

/// Seeded random stream with a fixed draw order; all scenario randomness
/// (placement, endpoints, jitter, waypoints, speeds) comes from one of these.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed)
        : m_engine(seed)
    {
    }

    double uniform01() { return (m_engine() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    std::uint64_t uniform_index(std::uint64_t n)
    {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(m_engine()) * n) >> 64);
    }

  private:
    std::mt19937_64 m_engine;
};

/// Airtime of a payload at the link bandwidth; no preamble or header overhead.
inline double frame_airtime(std::uint32_t payload_bytes, double bandwidth_bps)
{
    return payload_bytes * 8.0 / bandwidth_bps;
}

enum class FrameKind : std::uint8_t
{
    Hello,
    Tc,
    Data
};

struct Frame
{
    FrameKind kind = FrameKind::Data;
    NodeId src = kNoNode;        ///< transmitter of this hop
    NodeId origin = kNoNode;     ///< flow source / control originator
    NodeId final_dest = kNoNode; ///< data only
    NodeId next_hop = kNoNode;   ///< data only; control is broadcast
    std::uint32_t payload_size = 0; ///< bytes
    std::uint32_t ttl = 0;
    std::uint32_t flow_id = 0;   ///< data only
    std::uint64_t seq_no = 0;    ///< per-flow packet or 16-bit control sequence
    HelloMessage hello;          ///< valid iff kind == Hello
    TcMessage tc;                ///< valid iff kind == Tc
};

/// Random-waypoint walker state; positions advance at fixed ticks.
struct MobilityState
{
    Position position;
    Position waypoint;
    double speed = 0.0;
    SimTime pause_until = 0.0;
    bool paused = false;
};

/// One 0.5 s tick: move toward the waypoint, pause on arrival, then draw a
/// fresh uniform waypoint and uniform speed once the pause elapses.
void random_waypoint_tick(MobilityState& st, SimTime now, double dt, double area_width,
                          double area_height, double v_min, double v_max, double pause,
                          Rng& rng);

struct FlowCounters
{
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped_no_route = 0;
    std::uint64_t dropped_queue = 0;
    std::uint64_t dropped_ttl = 0;
    std::uint64_t dropped_energy = 0;

    std::uint64_t dropped_total() const
    {
        return dropped_no_route + dropped_queue + dropped_ttl + dropped_energy;
    }
};

/// Per-node battery ledger. residual = initial - sum of consumed categories
/// exactly; depleted_at is set once, at the instant residual first hits zero.
struct EnergyLedger
{
    double initial = 0.0;
    double residual = 0.0;
    double consumed_tx = 0.0;
    double consumed_rx = 0.0;
    double consumed_overhear = 0.0;
    double consumed_idle = 0.0;
    std::optional<SimTime> depleted_at;

    bool alive() const { return !depleted_at.has_value(); }
};

struct SimResult
{
    std::uint32_t node_count = 0;
    double initial_energy = 0.0;
    Protocol protocol = Protocol::Standard;
    std::uint64_t seed = 0;

    std::vector<FlowSpec> flows; ///< endpoints resolved from the seed stream
    std::vector<FlowCounters> flow_counters;
    std::vector<EnergyLedger> energy;
    std::vector<std::pair<SimTime, double>> avg_residual_series;
    std::vector<Position> initial_positions;

    SimTime end_time = 0.0;
    std::optional<SimTime> first_depletion;
    std::uint64_t event_count = 0;

    std::uint32_t placement_redraws = 0;
    std::uint32_t hop_diameter = 0; ///< of the initial placement
    bool initially_connected = false;

    std::uint64_t hello_sent = 0;
    std::uint64_t tc_sent = 0;
    std::uint64_t tc_forwarded = 0;
    std::uint64_t control_dropped_queue = 0;
    std::uint64_t control_dropped_energy = 0;
    std::uint64_t control_dropped_ttl = 0;

    std::uint64_t transmissions = 0;
    std::uint64_t data_transmissions = 0; ///< per-hop data frame count
    std::uint64_t data_deliveries = 0;    ///< receptions of data frames, overhears included
    std::uint64_t deliveries_scheduled = 0;
    std::uint64_t rx_charges = 0;
    std::uint64_t mobility_updates = 0;
    std::uint64_t mpr_recomputations = 0;
    std::uint64_t mpr_coverage_violations = 0;
    std::uint64_t causality_violations = 0;

    std::uint64_t total_generated() const
    {
        std::uint64_t n = 0;
        for (const auto& c : flow_counters)
            n += c.generated;
        return n;
    }
    std::uint64_t total_delivered() const
    {
        std::uint64_t n = 0;
        for (const auto& c : flow_counters)
            n += c.delivered;
        return n;
    }
};

/// One deterministic run. Identical config (seed included) gives an
/// identical SimResult. Not reusable; construct one per run.
class Simulator
{
  public:
    explicit Simulator(ScenarioConfig cfg);
    ~Simulator();

    SimResult run();

    /// Post-run inspection hooks for tests.
    const OlsrNodeState& olsr_state(NodeId id) const;
    const RoutingTable& routing_table(NodeId id);
    Position node_position(NodeId id) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> m_impl;
};

} // namespace manet

#endif // MANET_SIMULATOR_HPP
