/*
 * manetsim: weight formula and routing-table calculation.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/routing.hpp"

#include <algorithm>
#include <cassert>

namespace manet {

namespace {

double clamp01(double v)
{
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

} // namespace

NodeWeight compute_weight(const NodeLocalState& local, const WeightParams& p)
{
    const double queue_term = clamp01(static_cast<double>(local.queue_len) / p.l_max);
    const double energy_term = clamp01(1.0 - local.residual_energy / p.e_max);
    const double degree_term = clamp01(static_cast<double>(local.degree) / p.d_max);
    return clamp01(p.alpha1 * queue_term + p.alpha2 * energy_term + p.alpha3 * degree_term);
}

double path_cost(std::span<const NodeWeight> intermediate_weights)
{
    double cost = 1.0;
    for (NodeWeight w : intermediate_weights)
        cost += w;
    return cost;
}

RoutingTable compute_routing_table_standard(NodeId self,
                                            std::span<const NodeId> symmetric_neighbors,
                                            std::span<const TopologyTuple> topology)
{
    RoutingTable table;
    for (NodeId n : symmetric_neighbors)
        table.upsert(RoutingEntry{n, n, self, 1.0});

    std::vector<TopologyTuple> tuples(topology.begin(), topology.end());
    std::sort(tuples.begin(), tuples.end(), [](const TopologyTuple& a, const TopologyTuple& b) {
        return std::make_pair(a.last_addr, a.dest_addr) < std::make_pair(b.last_addr, b.dest_addr);
    });

    for (double h = 1.0;; h += 1.0) {
        bool added = false;
        for (const TopologyTuple& t : tuples) {
            if (t.dest_addr == self || table.lookup(t.dest_addr))
                continue;
            const RoutingEntry* via = table.lookup(t.last_addr);
            if (!via || via->cost != h)
                continue;
            table.upsert(RoutingEntry{t.dest_addr, via->next_hop, via->interface, h + 1.0});
            added = true;
        }
        if (!added)
            break;
    }
    return table;
}

RoutingTable compute_routing_table_multimetric(NodeId self,
                                               std::span<const NodeId> symmetric_neighbors,
                                               std::span<const TopologyTuple> topology)
{
    struct WorkEntry
    {
        RoutingEntry entry;
        NodeId produced_by = kNoNode; // last_addr that set the current cost
    };

    std::map<NodeId, WorkEntry> work;
    for (NodeId n : symmetric_neighbors)
        work[n] = WorkEntry{RoutingEntry{n, n, self, 1.0}, n};

    std::vector<TopologyTuple> tuples(topology.begin(), topology.end());
    std::sort(tuples.begin(), tuples.end(), [](const TopologyTuple& a, const TopologyTuple& b) {
        return std::make_pair(a.last_addr, a.dest_addr) < std::make_pair(b.last_addr, b.dest_addr);
    });

    // Relax to a fixpoint. Every update lowers (cost, produced_by)
    // lexicographically or copies a producer's settled next hop, so the
    // loop terminates; the cap guards against a regression.
    bool changed = true;
    for (int pass = 0; changed; ++pass) {
        changed = false;
        assert(pass < 100000);
        (void)pass;
        for (const TopologyTuple& t : tuples) {
            if (t.dest_addr == self || t.dest_addr == t.last_addr)
                continue;
            auto last_it = work.find(t.last_addr);
            if (last_it == work.end())
                continue;
            const WorkEntry& via = last_it->second;
            const double cand = via.entry.cost + t.weight;
            auto dest_it = work.find(t.dest_addr);
            if (dest_it == work.end()) {
                work[t.dest_addr] = WorkEntry{
                    RoutingEntry{t.dest_addr, via.entry.next_hop, via.entry.interface, cand},
                    t.last_addr};
                changed = true;
                continue;
            }
            WorkEntry& cur = dest_it->second;
            const bool direct = cur.produced_by == t.dest_addr; // 1-hop entries stay
            const bool better =
                cand < cur.entry.cost ||
                (cand == cur.entry.cost && !direct && t.last_addr < cur.produced_by);
            const bool stale_next = cand == cur.entry.cost && t.last_addr == cur.produced_by &&
                                    via.entry.next_hop != cur.entry.next_hop;
            if (better || stale_next) {
                cur.entry.next_hop = via.entry.next_hop;
                cur.entry.interface = via.entry.interface;
                cur.entry.cost = cand;
                cur.produced_by = t.last_addr;
                changed = true;
            }
        }
    }

    RoutingTable table;
    for (const auto& [dest, w] : work)
        table.upsert(w.entry);
    return table;
}

} // namespace manet
