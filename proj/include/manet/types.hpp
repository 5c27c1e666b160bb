/*
 * manetsim: core domain types shared by every module.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_TYPES_HPP
#define MANET_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace manet {

/// Node index, unique per node, 0 <= id < node_count.
using NodeId = std::uint32_t;

/// Sentinel for "no node" / "draw endpoint from the seed stream at run start".
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Simulation clock in seconds; events are processed in non-decreasing time.
using SimTime = double;

/// Node weight in [0,1]; higher means costlier to route through.
using NodeWeight = double;

struct Position
{
    double x = 0.0; ///< meters
    double y = 0.0; ///< meters
};

/// Euclidean distance in meters. Symmetric, non-negative.
inline double distance(const Position& a, const Position& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Unit-disk channel predicate; the range boundary is inclusive.
inline bool in_range(const Position& a, const Position& b, double radius)
{
    return distance(a, b) <= radius;
}

/// Multiplicative factors and normalizers of the node-weight formula.
struct WeightParams
{
    double alpha1 = 1.0 / 3.0; ///< queue-utilization factor
    double alpha2 = 1.0 / 3.0; ///< energy-depletion factor
    double alpha3 = 1.0 / 3.0; ///< node-degree factor
    std::uint32_t l_max = 100; ///< MAC queue capacity normalizer, packets
    double e_max = 7.0;        ///< initial node energy, joules
    std::uint32_t d_max = 29;  ///< node_count - 1
};

/// One CBR/UDP flow: fixed-size packets every `interval` seconds in [start, stop).
struct FlowSpec
{
    std::uint32_t flow_id = 0;
    NodeId src = kNoNode; ///< kNoNode = drawn from the seed stream at run start
    NodeId dst = kNoNode;
    std::uint32_t packet_size = 512; ///< bytes
    double interval = 0.1;           ///< seconds between packets
    SimTime start = 30.0;
    SimTime stop = 150.0;
};

enum class Protocol
{
    Standard,   ///< min-hop OLSR
    MultiMetric ///< weight-based route computation, weight-extended TCs
};

enum class MobilityModel
{
    Static,
    RandomWaypoint
};

const char* to_string(Protocol p);
const char* to_string(MobilityModel m);

} // namespace manet

#endif // MANET_TYPES_HPP
