/*
 * manetsim: random connected advertised-link graphs for routing tests.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_TESTS_GRAPH_GEN_HPP
#define MANET_TESTS_GRAPH_GEN_HPP

#include "manet/olsr_state.hpp"
#include "manet/types.hpp"

#include <random>
#include <set>
#include <vector>

namespace manet::testutil {

/// Undirected connected graph with per-node weights, presented the way a
/// node sees it: per-source symmetric neighbor lists plus a shared topology
/// tuple set with one directed tuple per edge direction carrying the tail
/// node's weight.
struct TestGraph
{
    std::uint32_t n = 0;
    std::vector<std::set<NodeId>> adj;
    std::vector<double> weight;
    std::vector<TopologyTuple> tuples;

    std::vector<NodeId> neighbors_of(NodeId u) const
    {
        return {adj[u].begin(), adj[u].end()};
    }
};

/// Connected by construction: random spanning tree plus extra random edges.
inline TestGraph random_connected_graph(std::mt19937_64& rng, std::uint32_t max_n = 30,
                                        bool uniform_weights = false, double uniform_w = 0.5)
{
    std::uniform_int_distribution<std::uint32_t> nd(2, max_n);
    TestGraph g;
    g.n = nd(rng);
    g.adj.assign(g.n, {});
    g.weight.assign(g.n, 0.0);

    std::uniform_real_distribution<double> wd(0.01, 1.0);
    for (std::uint32_t i = 0; i < g.n; ++i)
        g.weight[i] = uniform_weights ? uniform_w : wd(rng);

    auto add_edge = [&](NodeId a, NodeId b) {
        if (a == b)
            return;
        g.adj[a].insert(b);
        g.adj[b].insert(a);
    };
    for (std::uint32_t i = 1; i < g.n; ++i) {
        std::uniform_int_distribution<std::uint32_t> pick(0, i - 1);
        add_edge(i, pick(rng));
    }
    std::uniform_int_distribution<std::uint32_t> extra(0, g.n * 2);
    const std::uint32_t extras = extra(rng);
    std::uniform_int_distribution<std::uint32_t> any(0, g.n - 1);
    for (std::uint32_t i = 0; i < extras; ++i)
        add_edge(any(rng), any(rng));

    for (std::uint32_t u = 0; u < g.n; ++u)
        for (NodeId v : g.adj[u])
            g.tuples.push_back(TopologyTuple{u, v, 0, g.weight[u], 1e9});
    return g;
}

} // namespace manet::testutil

#endif // MANET_TESTS_GRAPH_GEN_HPP
