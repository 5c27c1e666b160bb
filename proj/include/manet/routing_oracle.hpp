/*
 * manetsim: exact reference algorithms for checking routing tables.
 * Test support only; nothing in the simulator calls these.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_ROUTING_ORACLE_HPP
#define MANET_ROUTING_ORACLE_HPP

#include "manet/olsr_state.hpp"
#include "manet/types.hpp"

#include <cstdint>
#include <map>
#include <span>

namespace manet {

/// Exact minimum path cost (1 for the first hop, then the producing node's
/// weight per advertised link) from `source` to every reachable destination.
/// Dijkstra over the directed graph whose first-hop edges cost 1 and whose
/// tuple edge (last -> dest) costs tuple.weight, i.e. node weights expanded
/// onto the outgoing edges of intermediate nodes.
std::map<NodeId, double> dijkstra_oracle(NodeId source,
                                         std::span<const NodeId> symmetric_neighbors,
                                         std::span<const TopologyTuple> topology);

/// Hop counts by breadth-first search over the same advertised-link graph.
std::map<NodeId, std::uint32_t> bfs_hop_counts(NodeId source,
                                               std::span<const NodeId> symmetric_neighbors,
                                               std::span<const TopologyTuple> topology);

} // namespace manet

#endif // MANET_ROUTING_ORACLE_HPP
