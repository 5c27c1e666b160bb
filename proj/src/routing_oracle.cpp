/*
 * manetsim: exact routing oracles.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/routing_oracle.hpp"

#include <deque>
#include <queue>
#include <vector>

namespace manet {

std::map<NodeId, double> dijkstra_oracle(NodeId source,
                                         std::span<const NodeId> symmetric_neighbors,
                                         std::span<const TopologyTuple> topology)
{
    // adjacency: u -> list of (v, edge cost)
    std::map<NodeId, std::vector<std::pair<NodeId, double>>> adj;
    for (NodeId n : symmetric_neighbors)
        adj[source].emplace_back(n, 1.0);
    for (const TopologyTuple& t : topology)
        if (t.last_addr != t.dest_addr)
            adj[t.last_addr].emplace_back(t.dest_addr, t.weight);

    std::map<NodeId, double> dist;
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, source);
    std::map<NodeId, double> best{{source, 0.0}};

    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > best[u])
            continue;
        if (u != source)
            dist[u] = d;
        auto it = adj.find(u);
        if (it == adj.end())
            continue;
        for (auto [v, w] : it->second) {
            if (v == source)
                continue;
            const double nd = d + w;
            auto b = best.find(v);
            if (b == best.end() || nd < b->second) {
                best[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return dist;
}

std::map<NodeId, std::uint32_t> bfs_hop_counts(NodeId source,
                                               std::span<const NodeId> symmetric_neighbors,
                                               std::span<const TopologyTuple> topology)
{
    std::map<NodeId, std::vector<NodeId>> adj;
    for (NodeId n : symmetric_neighbors)
        adj[source].push_back(n);
    for (const TopologyTuple& t : topology)
        if (t.last_addr != t.dest_addr)
            adj[t.last_addr].push_back(t.dest_addr);

    std::map<NodeId, std::uint32_t> hops;
    std::deque<NodeId> frontier{source};
    std::map<NodeId, std::uint32_t> seen{{source, 0}};
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop_front();
        const std::uint32_t d = seen[u];
        if (u != source)
            hops[u] = d;
        auto it = adj.find(u);
        if (it == adj.end())
            continue;
        for (NodeId v : it->second) {
            if (!seen.count(v)) {
                seen[v] = d + 1;
                frontier.push_back(v);
            }
        }
    }
    return hops;
}

} // namespace manet
