/*
 * manetsim: node-weight computation and routing-table calculation, both the
 * min-hop baseline and the weight-based variant.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_ROUTING_HPP
#define MANET_ROUTING_HPP

#include "manet/olsr_state.hpp"
#include "manet/types.hpp"

#include <map>
#include <span>
#include <vector>

namespace manet {

/// Inputs to the weight formula, sampled at TC emission time.
struct NodeLocalState
{
    std::uint32_t queue_len = 0;    ///< packets currently in the MAC queue
    double residual_energy = 0.0;   ///< joules
    std::uint32_t degree = 0;       ///< symmetric 1-hop neighbor count
};

/// w = a1*L/L_max + a2*(1 - E/E_max) + a3*D/D_max, each ratio clamped to
/// [0,1] so out-of-range inputs (full queue, exhausted battery) saturate
/// instead of erroring. Result is always in [0,1].
NodeWeight compute_weight(const NodeLocalState& local, const WeightParams& p);

/// 1 + sum of the intermediate-node weights; the receiver's weight never
/// contributes.
double path_cost(std::span<const NodeWeight> intermediate_weights);

struct RoutingEntry
{
    NodeId dest = kNoNode;
    NodeId next_hop = kNoNode;
    NodeId interface = kNoNode; ///< single-interface: always the node's own id
    double cost = 0.0;          ///< hop count or weight sum, >= 1
};

class RoutingTable
{
  public:
    const RoutingEntry* lookup(NodeId dest) const
    {
        auto it = m_entries.find(dest);
        return it == m_entries.end() ? nullptr : &it->second;
    }

    void upsert(const RoutingEntry& e) { m_entries[e.dest] = e; }
    std::size_t size() const { return m_entries.size(); }
    const std::map<NodeId, RoutingEntry>& entries() const { return m_entries; }

  private:
    std::map<NodeId, RoutingEntry> m_entries;
};

/// Min-hop routes over the advertised-link graph: neighbors at cost 1, then
/// layer by layer through topology tuples, ties to the smallest last_addr.
RoutingTable compute_routing_table_standard(NodeId self,
                                            std::span<const NodeId> symmetric_neighbors,
                                            std::span<const TopologyTuple> topology);

/// Weight-based routes: neighbors at cost 1, then repeated passes over the
/// topology tuples (sorted by last_addr, dest_addr) relaxing
/// cost(dest) = cost(last) + tuple.weight until a pass changes nothing.
/// Exact cost ties resolve to the smaller producing last_addr, which makes
/// the result a pure function of the inputs and reduces to the min-hop
/// table when every weight is equal.
RoutingTable compute_routing_table_multimetric(NodeId self,
                                               std::span<const NodeId> symmetric_neighbors,
                                               std::span<const TopologyTuple> topology);

} // namespace manet

#endif // MANET_ROUTING_HPP
