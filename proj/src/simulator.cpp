/*
 * manetsim: discrete-event engine implementation.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>

namespace manet {

void random_waypoint_tick(MobilityState& st, SimTime now, double dt, double area_width,
                          double area_height, double v_min, double v_max, double pause,
                          Rng& rng)
{
    if (st.paused) {
        if (now < st.pause_until)
            return;
        st.waypoint = Position{rng.uniform(0.0, area_width), rng.uniform(0.0, area_height)};
        st.speed = rng.uniform(v_min, v_max);
        st.paused = false;
    }
    const double dx = st.waypoint.x - st.position.x;
    const double dy = st.waypoint.y - st.position.y;
    const double remaining = std::hypot(dx, dy);
    const double step = st.speed * dt;
    if (step >= remaining) {
        st.position = st.waypoint;
        st.paused = true;
        st.pause_until = now + pause;
        return;
    }
    st.position.x += dx / remaining * step;
    st.position.y += dy / remaining * step;
}

namespace {

enum class EventKind : std::uint8_t
{
    HelloTimer,
    TcTimer,
    TrafficGen,
    TxStart,
    TxEnd,
    Delivery,
    MobilityUpdate,
    MetricSample,
    End
};

struct Event
{
    SimTime time = 0.0;
    std::uint64_t seq = 0; ///< scheduling order; ties on time resolve by seq
    EventKind kind = EventKind::End;
    NodeId node = kNoNode;
    std::uint32_t flow = 0;
    std::shared_ptr<const Frame> frame;
};

struct EventAfter
{
    bool operator()(const Event& a, const Event& b) const
    {
        if (a.time != b.time)
            return a.time > b.time;
        return a.seq > b.seq;
    }
};

constexpr double kMobilityTick = 0.5; // seconds

} // namespace

struct Simulator::Impl
{
    explicit Impl(ScenarioConfig config)
        : cfg(std::move(config)),
          rng(cfg.seed)
    {
    }

    ScenarioConfig cfg;
    Rng rng;
    SimResult result;

    struct NodeRuntime
    {
        MobilityState mob;
        OlsrNodeState olsr;
        RoutingTable table;
        bool table_dirty = true;
        std::deque<Frame> queue;
        bool transmitting = false;
        bool txstart_pending = false;
        EnergyLedger energy;
        SimTime energy_updated = 0.0; ///< idle accounting watermark
        std::uint16_t msg_seq = 0;
        std::uint64_t flow_seq = 0;
    };

    std::vector<NodeRuntime> nodes;
    std::vector<std::uint64_t> flow_emitted; // packets generated so far per flow

    std::priority_queue<Event, std::vector<Event>, EventAfter> events;
    std::uint64_t next_seq = 0;
    SimTime now = 0.0;
    bool ran = false;

    // --- scheduling ---------------------------------------------------

    void schedule(SimTime t, EventKind kind, NodeId node = kNoNode, std::uint32_t flow = 0,
                  std::shared_ptr<const Frame> frame = nullptr)
    {
        assert(t >= now);
        events.push(Event{t, next_seq++, kind, node, flow, std::move(frame)});
    }

    // --- energy -------------------------------------------------------

    void advance_idle(NodeRuntime& n, SimTime t)
    {
        if (t <= n.energy_updated)
            return;
        if (cfg.idle_power > 0.0 && n.energy.alive()) {
            const double amount = cfg.idle_power * (t - n.energy_updated);
            const double drain = std::min(amount, n.energy.residual);
            if (drain >= n.energy.residual && n.energy.residual > 0.0)
                mark_depleted(n, n.energy_updated + n.energy.residual / cfg.idle_power);
            n.energy.residual -= drain;
            n.energy.consumed_idle += drain;
        }
        n.energy_updated = t;
    }

    void mark_depleted(NodeRuntime& n, SimTime instant)
    {
        if (n.energy.depleted_at)
            return;
        n.energy.depleted_at = instant;
        if (!result.first_depletion || instant < *result.first_depletion)
            result.first_depletion = instant;
        if (!n.transmitting)
            flush_queue_of_dead(n);
    }

    /// Transmit charge at TxStart; a crossing mid-frame records the exact
    /// instant but the frame still completes.
    void charge_tx(NodeRuntime& n, double airtime)
    {
        advance_idle(n, now);
        const double amount = cfg.tx_power * airtime;
        const double drain = std::min(amount, n.energy.residual);
        if (drain >= n.energy.residual && n.energy.residual > 0.0 && cfg.tx_power > 0.0)
            mark_depleted(n, now + n.energy.residual / cfg.tx_power);
        n.energy.residual -= drain;
        n.energy.consumed_tx += drain;
    }

    /// Reception charge, applied to every in-range node; `overhear` splits
    /// the ledger category for data frames not addressed to the receiver.
    void charge_rx(NodeRuntime& n, double airtime, bool overhear)
    {
        advance_idle(n, now);
        const double amount = cfg.rx_power * airtime;
        const double drain = std::min(amount, n.energy.residual);
        if (drain >= n.energy.residual && n.energy.residual > 0.0 && amount > 0.0)
            mark_depleted(n, now);
        n.energy.residual -= drain;
        (overhear ? n.energy.consumed_overhear : n.energy.consumed_rx) += drain;
        ++result.rx_charges;
    }

    void flush_queue_of_dead(NodeRuntime& n)
    {
        for (const Frame& f : n.queue)
            count_drop(f, DropKind::Energy);
        n.queue.clear();
    }

    // --- drop accounting ----------------------------------------------

    enum class DropKind
    {
        Queue,
        Energy,
        Ttl,
        NoRoute
    };

    void count_drop(const Frame& f, DropKind kind)
    {
        if (f.kind == FrameKind::Data) {
            FlowCounters& c = result.flow_counters[f.flow_id];
            switch (kind) {
            case DropKind::Queue: ++c.dropped_queue; break;
            case DropKind::Energy: ++c.dropped_energy; break;
            case DropKind::Ttl: ++c.dropped_ttl; break;
            case DropKind::NoRoute: ++c.dropped_no_route; break;
            }
        } else {
            switch (kind) {
            case DropKind::Queue: ++result.control_dropped_queue; break;
            case DropKind::Energy: ++result.control_dropped_energy; break;
            case DropKind::Ttl: ++result.control_dropped_ttl; break;
            case DropKind::NoRoute: break; // control frames are broadcast
            }
        }
    }

    // --- MAC queue ----------------------------------------------------

    void enqueue_frame(NodeId id, Frame frame)
    {
        NodeRuntime& n = nodes[id];
        if (!n.energy.alive()) {
            count_drop(frame, DropKind::Energy);
            return;
        }
        if (n.queue.size() >= cfg.mac_queue_capacity) {
            count_drop(frame, DropKind::Queue);
            return;
        }
        n.queue.push_back(std::move(frame));
        if (!n.transmitting && !n.txstart_pending) {
            n.txstart_pending = true;
            schedule(now, EventKind::TxStart, id);
        }
    }

    void handle_tx_start(NodeId id)
    {
        NodeRuntime& n = nodes[id];
        n.txstart_pending = false;
        if (n.transmitting)
            return;
        if (!n.energy.alive()) {
            flush_queue_of_dead(n);
            return;
        }
        if (n.queue.empty())
            return;
        n.transmitting = true;
        const Frame& frame = n.queue.front();
        const double airtime = frame_airtime(frame.payload_size, cfg.bandwidth);
        charge_tx(n, airtime);
        ++result.transmissions;
        if (frame.kind == FrameKind::Data)
            ++result.data_transmissions;
        schedule(now + airtime, EventKind::TxEnd, id, 0,
                 std::make_shared<const Frame>(frame));
    }

    void handle_tx_end(NodeId id, const std::shared_ptr<const Frame>& frame)
    {
        NodeRuntime& n = nodes[id];
        assert(n.transmitting);
        assert(!n.queue.empty());
        n.queue.pop_front();
        n.transmitting = false;

        bool next_hop_reached = false;
        for (NodeId j = 0; j < cfg.node_count; ++j) {
            if (j == id)
                continue;
            NodeRuntime& other = nodes[j];
            if (!other.energy.alive())
                continue;
            if (!in_range(n.mob.position, other.mob.position, cfg.radio_range))
                continue;
            if (frame->kind == FrameKind::Data && frame->next_hop == j)
                next_hop_reached = true;
            ++result.deliveries_scheduled;
            schedule(now, EventKind::Delivery, j, 0, frame);
        }

        // A data frame whose next hop did not receive it is gone; account
        // for it so per-flow conservation stays exact.
        if (frame->kind == FrameKind::Data && !next_hop_reached) {
            const NodeRuntime& hop = nodes[frame->next_hop];
            count_drop(*frame, hop.energy.alive() ? DropKind::NoRoute : DropKind::Energy);
        }

        if (!n.energy.alive()) {
            flush_queue_of_dead(n);
            return;
        }
        if (!n.queue.empty() && !n.txstart_pending) {
            n.txstart_pending = true;
            schedule(now, EventKind::TxStart, id);
        }
    }

    // --- protocol plumbing ---------------------------------------------

    void note_expiry(NodeId id)
    {
        NodeRuntime& n = nodes[id];
        if (n.olsr.expire_tuples(now).any())
            n.table_dirty = true;
    }

    NodeWeight own_weight(const NodeRuntime& n) const
    {
        if (cfg.protocol != Protocol::MultiMetric)
            return 0.0;
        NodeLocalState local;
        local.queue_len = static_cast<std::uint32_t>(n.queue.size());
        local.residual_energy = n.energy.residual;
        local.degree = n.olsr.degree();
        return compute_weight(local, cfg.weight_params);
    }

    const RoutingTable& fresh_table(NodeId id)
    {
        NodeRuntime& n = nodes[id];
        note_expiry(id);
        if (n.table_dirty) {
            const auto sym = n.olsr.symmetric_neighbor_ids();
            n.table = cfg.protocol == Protocol::MultiMetric
                          ? compute_routing_table_multimetric(id, sym, n.olsr.topology_tuples())
                          : compute_routing_table_standard(id, sym, n.olsr.topology_tuples());
            n.table_dirty = false;
        }
        return n.table;
    }

    void handle_hello_timer(NodeId id)
    {
        NodeRuntime& n = nodes[id];
        if (!n.energy.alive())
            return;
        note_expiry(id);
        Frame f;
        f.kind = FrameKind::Hello;
        f.src = id;
        f.origin = id;
        f.ttl = 1;
        f.seq_no = n.msg_seq++;
        f.hello = n.olsr.generate_hello();
        f.payload_size = static_cast<std::uint32_t>(hello_wire_size(f.hello.heard_neighbors.size()));
        ++result.hello_sent;
        enqueue_frame(id, std::move(f));
        schedule(now + cfg.hello_interval, EventKind::HelloTimer, id);
    }

    void handle_tc_timer(NodeId id)
    {
        NodeRuntime& n = nodes[id];
        if (!n.energy.alive())
            return;
        note_expiry(id);
        if (auto tc = n.olsr.generate_tc(own_weight(n))) {
            Frame f;
            f.kind = FrameKind::Tc;
            f.src = id;
            f.origin = id;
            f.ttl = cfg.ttl;
            f.seq_no = n.msg_seq++;
            f.payload_size =
                static_cast<std::uint32_t>(tc_wire_size(tc->advertised.size(), cfg.protocol));
            f.tc = std::move(*tc);
            ++result.tc_sent;
            enqueue_frame(id, std::move(f));
        }
        schedule(now + cfg.tc_interval, EventKind::TcTimer, id);
    }

    void handle_traffic(std::uint32_t flow_idx)
    {
        const FlowSpec& flow = result.flows[flow_idx];
        NodeRuntime& src = nodes[flow.src];
        if (!src.energy.alive())
            return; // a depleted source emits nothing further
        if (now >= flow.stop)
            return;

        FlowCounters& counters = result.flow_counters[flow_idx];
        ++counters.generated;
        Frame f;
        f.kind = FrameKind::Data;
        f.src = flow.src;
        f.origin = flow.src;
        f.final_dest = flow.dst;
        f.payload_size = flow.packet_size;
        f.ttl = cfg.ttl;
        f.flow_id = flow_idx;
        f.seq_no = src.flow_seq++;
        const RoutingEntry* route = fresh_table(flow.src).lookup(flow.dst);
        if (!route) {
            ++counters.dropped_no_route;
        } else {
            f.next_hop = route->next_hop;
            enqueue_frame(flow.src, std::move(f));
        }

        const std::uint64_t k = ++flow_emitted[flow_idx];
        const SimTime next = flow.start + static_cast<double>(k) * flow.interval;
        if (next < flow.stop)
            schedule(next, EventKind::TrafficGen, kNoNode, flow_idx);
    }

    void handle_delivery(NodeId id, const std::shared_ptr<const Frame>& frame)
    {
        NodeRuntime& n = nodes[id];
        const double airtime = frame_airtime(frame->payload_size, cfg.bandwidth);
        const bool overhear = frame->kind == FrameKind::Data && frame->next_hop != id;
        charge_rx(n, airtime, overhear);
        if (frame->kind == FrameKind::Data)
            ++result.data_deliveries;

        const bool can_process = n.energy.residual > 0.0;
        switch (frame->kind) {
        case FrameKind::Hello:
            if (can_process) {
                note_expiry(id);
                if (n.olsr.process_hello(frame->hello, frame->src, now).any())
                    n.table_dirty = true;
            }
            break;
        case FrameKind::Tc:
            if (can_process && frame->origin != id) {
                note_expiry(id);
                const auto seq16 = static_cast<std::uint16_t>(frame->seq_no);
                const bool unseen = !n.olsr.duplicate_seen(frame->origin, seq16);
                const bool forward = n.olsr.should_forward_tc(frame->origin, seq16, frame->src, now);
                if (unseen && n.olsr.process_tc(frame->tc, now).any())
                    n.table_dirty = true;
                if (forward) {
                    if (frame->ttl <= 1) {
                        ++result.control_dropped_ttl;
                    } else {
                        Frame fwd = *frame;
                        fwd.src = id;
                        --fwd.ttl;
                        ++result.tc_forwarded;
                        enqueue_frame(id, std::move(fwd));
                    }
                }
            }
            break;
        case FrameKind::Data:
            if (frame->next_hop != id)
                break; // overheard only; energy already charged
            if (!can_process) {
                count_drop(*frame, DropKind::Energy);
                break;
            }
            if (frame->final_dest == id) {
                ++result.flow_counters[frame->flow_id].delivered;
                break;
            }
            if (const RoutingEntry* route = fresh_table(id).lookup(frame->final_dest)) {
                if (frame->ttl <= 1) {
                    count_drop(*frame, DropKind::Ttl);
                } else {
                    Frame fwd = *frame;
                    fwd.src = id;
                    fwd.next_hop = route->next_hop;
                    --fwd.ttl;
                    enqueue_frame(id, std::move(fwd));
                }
            } else {
                count_drop(*frame, DropKind::NoRoute);
            }
            break;
        }
    }

    void handle_mobility(NodeId id)
    {
        NodeRuntime& n = nodes[id];
        if (!n.energy.alive())
            return;
        ++result.mobility_updates;
        random_waypoint_tick(n.mob, now, kMobilityTick, cfg.area_width, cfg.area_height,
                             cfg.v_min, cfg.v_max, cfg.pause, rng);
        schedule(now + kMobilityTick, EventKind::MobilityUpdate, id);
    }

    void take_sample()
    {
        double total = 0.0;
        for (NodeRuntime& n : nodes) {
            advance_idle(n, now);
            total += n.energy.residual;
        }
        result.avg_residual_series.emplace_back(now, total / cfg.node_count);
    }

    // --- setup ----------------------------------------------------------

    std::vector<std::vector<NodeId>> placement_adjacency(const std::vector<Position>& pos) const
    {
        std::vector<std::vector<NodeId>> adj(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j)
                if (in_range(pos[i], pos[j], cfg.radio_range)) {
                    adj[i].push_back(static_cast<NodeId>(j));
                    adj[j].push_back(static_cast<NodeId>(i));
                }
        return adj;
    }

    /// Hop diameter of the placement graph; nullopt when disconnected.
    std::optional<std::uint32_t> hop_diameter(const std::vector<Position>& pos) const
    {
        const auto adj = placement_adjacency(pos);
        std::uint32_t diameter = 0;
        for (std::size_t s = 0; s < pos.size(); ++s) {
            std::vector<std::uint32_t> dist(pos.size(), UINT32_MAX);
            std::deque<NodeId> frontier{static_cast<NodeId>(s)};
            dist[s] = 0;
            while (!frontier.empty()) {
                NodeId u = frontier.front();
                frontier.pop_front();
                for (NodeId v : adj[u])
                    if (dist[v] == UINT32_MAX) {
                        dist[v] = dist[u] + 1;
                        frontier.push_back(v);
                    }
            }
            for (std::uint32_t d : dist) {
                if (d == UINT32_MAX)
                    return std::nullopt;
                diameter = std::max(diameter, d);
            }
        }
        return diameter;
    }

    std::vector<Position> draw_placement()
    {
        std::vector<Position> pos(cfg.node_count);
        for (auto& p : pos)
            p = Position{rng.uniform(0.0, cfg.area_width), rng.uniform(0.0, cfg.area_height)};
        return pos;
    }

    void place_nodes()
    {
        std::vector<Position> pos = draw_placement();
        if (cfg.placement_gate && cfg.mobility == MobilityModel::Static) {
            std::uint32_t redraws = 0;
            for (;;) {
                const auto d = hop_diameter(pos);
                if (d && *d >= 3 && *d <= 5)
                    break;
                if (++redraws > 10000)
                    throw std::runtime_error(
                        "placement gate exhausted 10000 redraws; check radio_range/area");
                pos = draw_placement();
            }
            result.placement_redraws = redraws;
        }
        const auto d = hop_diameter(pos);
        result.initially_connected = d.has_value();
        result.hop_diameter = d.value_or(0);
        result.initial_positions = pos;
        for (std::uint32_t i = 0; i < cfg.node_count; ++i)
            nodes[i].mob.position = pos[i];
    }

    void resolve_flow_endpoints()
    {
        result.flows = cfg.flows;
        std::vector<NodeId> pool;
        auto draw_from_pool = [&](NodeId exclude) -> NodeId {
            // Refill once the distinct-node pool runs dry (or holds only the
            // excluded endpoint); node_count >= 2 keeps this terminating.
            if (pool.empty() || (pool.size() == 1 && pool[0] == exclude)) {
                pool.resize(cfg.node_count);
                for (std::uint32_t i = 0; i < cfg.node_count; ++i)
                    pool[i] = i;
            }
            for (;;) {
                const auto idx = rng.uniform_index(pool.size());
                const NodeId id = pool[idx];
                if (id == exclude)
                    continue;
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
                return id;
            }
        };
        for (FlowSpec& f : result.flows) {
            if (f.src == kNoNode)
                f.src = draw_from_pool(f.dst);
            if (f.dst == kNoNode)
                f.dst = draw_from_pool(f.src);
        }
    }

    void initialize()
    {
        nodes.resize(cfg.node_count);
        result.node_count = cfg.node_count;
        result.initial_energy = cfg.initial_energy;
        result.protocol = cfg.protocol;
        result.seed = cfg.seed;
        result.flow_counters.resize(cfg.flows.size());
        flow_emitted.assign(cfg.flows.size(), 0);

        const double hello_hold = cfg.hold_for(cfg.hello_interval);
        const double tc_hold = cfg.hold_for(cfg.tc_interval);
        for (std::uint32_t i = 0; i < cfg.node_count; ++i) {
            NodeRuntime& n = nodes[i];
            n.olsr = OlsrNodeState(i, hello_hold, tc_hold);
            n.energy.initial = cfg.initial_energy;
            n.energy.residual = cfg.initial_energy;
        }

        // The t = 0 sample precedes every other event at t = 0, so the series
        // starts at exactly the initial energy.
        schedule(0.0, EventKind::MetricSample);
        schedule(cfg.sim_duration, EventKind::End);

        // Seed-stream draw order: placement, flow endpoints, per-node hello
        // jitter, per-node TC jitter, per-node initial waypoint and speed.
        place_nodes();
        resolve_flow_endpoints();

        for (std::uint32_t i = 0; i < cfg.node_count; ++i)
            schedule(rng.uniform(0.0, cfg.hello_interval), EventKind::HelloTimer, i);
        for (std::uint32_t i = 0; i < cfg.node_count; ++i)
            schedule(rng.uniform(0.0, cfg.tc_interval), EventKind::TcTimer, i);

        if (cfg.mobility == MobilityModel::RandomWaypoint) {
            for (std::uint32_t i = 0; i < cfg.node_count; ++i) {
                NodeRuntime& n = nodes[i];
                n.mob.waypoint =
                    Position{rng.uniform(0.0, cfg.area_width), rng.uniform(0.0, cfg.area_height)};
                n.mob.speed = rng.uniform(cfg.v_min, cfg.v_max);
                n.mob.paused = false;
                schedule(kMobilityTick, EventKind::MobilityUpdate, i);
            }
        }

        for (std::uint32_t i = 0; i < result.flows.size(); ++i) {
            const FlowSpec& f = result.flows[i];
            if (f.start < f.stop)
                schedule(f.start, EventKind::TrafficGen, kNoNode, i);
        }
    }

    SimResult finish()
    {
        SimTime end = cfg.sim_duration;
        if (cfg.run_to_depletion && result.first_depletion)
            end = *result.first_depletion;
        result.end_time = end;

        for (NodeRuntime& n : nodes)
            advance_idle(n, end);
        if (result.avg_residual_series.empty() ||
            result.avg_residual_series.back().first < end) {
            double total = 0.0;
            for (const NodeRuntime& n : nodes)
                total += n.energy.residual;
            result.avg_residual_series.emplace_back(end, total / cfg.node_count);
        }

        result.energy.clear();
        result.energy.reserve(nodes.size());
        for (NodeRuntime& n : nodes) {
            result.energy.push_back(n.energy);
            result.mpr_recomputations += n.olsr.mpr_recomputations();
            result.mpr_coverage_violations += n.olsr.coverage_violations();
        }
        return result;
    }

    SimResult run()
    {
        initialize();
        // A stop request (End event or first depletion) still drains every
        // event at the current instant, so in-flight deliveries of that
        // timestamp are charged before the run closes.
        bool stop_requested = false;
        while (!events.empty()) {
            if (stop_requested && events.top().time > now)
                break;
            Event ev = events.top();
            events.pop();
            if (ev.time < now)
                ++result.causality_violations;
            now = ev.time;
            ++result.event_count;
            switch (ev.kind) {
            case EventKind::HelloTimer: handle_hello_timer(ev.node); break;
            case EventKind::TcTimer: handle_tc_timer(ev.node); break;
            case EventKind::TrafficGen: handle_traffic(ev.flow); break;
            case EventKind::TxStart: handle_tx_start(ev.node); break;
            case EventKind::TxEnd: handle_tx_end(ev.node, ev.frame); break;
            case EventKind::Delivery: handle_delivery(ev.node, ev.frame); break;
            case EventKind::MobilityUpdate: handle_mobility(ev.node); break;
            case EventKind::MetricSample:
                take_sample();
                if (now + cfg.sample_period <= cfg.sim_duration)
                    schedule(now + cfg.sample_period, EventKind::MetricSample);
                break;
            case EventKind::End: stop_requested = true; break;
            }
            if (cfg.run_to_depletion && result.first_depletion)
                stop_requested = true;
        }
        return finish();
    }
};

Simulator::Simulator(ScenarioConfig cfg)
    : m_impl(std::make_unique<Impl>(std::move(cfg)))
{
}

Simulator::~Simulator() = default;

SimResult Simulator::run()
{
    if (m_impl->ran)
        throw std::logic_error("Simulator::run may only be called once");
    m_impl->ran = true;
    return m_impl->run();
}

const OlsrNodeState& Simulator::olsr_state(NodeId id) const
{
    return m_impl->nodes.at(id).olsr;
}

const RoutingTable& Simulator::routing_table(NodeId id)
{
    return m_impl->fresh_table(id);
}

Position Simulator::node_position(NodeId id) const
{
    return m_impl->nodes.at(id).mob.position;
}

} // namespace manet
