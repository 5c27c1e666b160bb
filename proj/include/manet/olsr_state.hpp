/*
 * manetsim: per-node OLSR control-plane state machine. HELLO/TC processing,
 * neighbor and two-hop sets, MPR selection, duplicate suppression.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#ifndef MANET_OLSR_STATE_HPP
#define MANET_OLSR_STATE_HPP

#include "manet/olsr_messages.hpp"
#include "manet/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace manet {

struct NeighborTuple
{
    NodeId neighbor = kNoNode;
    bool link_symmetric = false;
    SimTime expiry = 0.0;
};

/// A node reachable in two hops through the symmetric neighbor `via`.
struct TwoHopTuple
{
    NodeId via = kNoNode;
    NodeId two_hop = kNoNode;
    SimTime expiry = 0.0;
};

/// Stored form of one advertised link from a TC, carrying the originator's
/// weight. At most one tuple per (last_addr, dest_addr).
struct TopologyTuple
{
    NodeId last_addr = kNoNode;
    NodeId dest_addr = kNoNode;
    std::uint16_t ansn = 0;
    NodeWeight weight = 0.0;
    SimTime expiry = 0.0;
};

struct DuplicateTuple
{
    NodeId originator = kNoNode;
    std::uint16_t msg_seq = 0;
    SimTime expiry = 0.0;
};

struct MprSelectorTuple
{
    NodeId selector = kNoNode;
    SimTime expiry = 0.0;
};

/// 16-bit sequence comparison with wraparound; true iff `a` is newer than `b`.
bool seq_newer(std::uint16_t a, std::uint16_t b);

/// Standard greedy MPR selection: first every sole cover of some two-hop
/// node, then repeatedly the neighbor covering the most uncovered two-hop
/// nodes, ties to the smallest id. Tuples whose `via` is not a symmetric
/// neighbor or whose `two_hop` is are ignored.
std::vector<NodeId> select_mprs(std::span<const NodeId> symmetric_neighbors,
                                std::span<const TwoHopTuple> two_hop_tuples);

/// What a processing step invalidated; drives MPR and route recomputation.
struct OlsrChange
{
    bool neighborhood = false; ///< neighbor or two-hop sets changed
    bool topology = false;     ///< topology tuples or carried weights changed

    bool any() const { return neighborhood || topology; }
    void merge(const OlsrChange& o)
    {
        neighborhood = neighborhood || o.neighborhood;
        topology = topology || o.topology;
    }
};

class OlsrNodeState
{
  public:
    OlsrNodeState() = default;
    OlsrNodeState(NodeId self, double hello_hold, double tc_hold);

    NodeId self() const { return m_self; }

    /// Lists every current neighbor with its link status; MPR-selected
    /// symmetric neighbors are marked Mpr.
    HelloMessage generate_hello() const;

    /// Records the sender as heard (symmetric iff we appear in its list),
    /// refreshes selector membership, and builds two-hop tuples from the
    /// listed neighbors of a symmetric sender.
    OlsrChange process_hello(const HelloMessage& msg, NodeId sender, SimTime now);

    /// Returns the TC to flood, or nullopt when nobody selected us as MPR.
    /// The ansn advances only when the advertised set changed.
    std::optional<TcMessage> generate_tc(NodeWeight own_weight);

    /// Replaces the originator's topology tuples with the advertised set
    /// unless the message ansn is older than the stored one.
    OlsrChange process_tc(const TcMessage& msg, SimTime now);

    /// True iff (originator, msg_seq) is unseen AND the sender selected us
    /// as MPR. Records the duplicate tuple in every case.
    bool should_forward_tc(NodeId originator, std::uint16_t msg_seq, NodeId sender, SimTime now);

    bool duplicate_seen(NodeId originator, std::uint16_t msg_seq) const;

    /// Drops every tuple with expiry < now, cascading two-hop tuples of
    /// vanished or desymmetrized neighbors, and refreshes the MPR set.
    OlsrChange expire_tuples(SimTime now);

    std::vector<NodeId> symmetric_neighbor_ids() const;
    std::uint32_t degree() const; ///< symmetric 1-hop neighbor count
    bool is_symmetric_neighbor(NodeId id) const;

    const std::vector<NeighborTuple>& neighbors() const { return m_neighbors; }
    const std::vector<TwoHopTuple>& two_hop_tuples() const { return m_two_hop; }
    const std::vector<TopologyTuple>& topology_tuples() const { return m_topology; }
    const std::vector<NodeId>& mpr_set() const { return m_mprs; }
    std::vector<NodeId> mpr_selector_ids() const;

    /// Incremented whenever an MPR recomputation leaves a two-hop node
    /// uncovered; stays zero unless selection is broken.
    std::uint64_t coverage_violations() const { return m_coverage_violations; }
    std::uint64_t mpr_recomputations() const { return m_mpr_recomputations; }

  private:
    void refresh_mprs();
    void erase_two_hops_via(NodeId via);
    void erase_two_hops_of(NodeId two_hop);

    NodeId m_self = kNoNode;
    double m_hello_hold = 6.0;
    double m_tc_hold = 15.0;

    std::vector<NeighborTuple> m_neighbors;      // sorted by neighbor
    std::vector<TwoHopTuple> m_two_hop;          // sorted by (via, two_hop)
    std::vector<TopologyTuple> m_topology;       // sorted by (last, dest)
    std::vector<DuplicateTuple> m_duplicates;    // sorted by (originator, seq)
    std::vector<MprSelectorTuple> m_selectors;   // sorted by selector
    std::vector<NodeId> m_mprs;                  // sorted

    std::uint16_t m_ansn = 0;
    std::vector<NodeId> m_last_advertised;
    bool m_have_advertised = false;

    std::uint64_t m_coverage_violations = 0;
    std::uint64_t m_mpr_recomputations = 0;
};

} // namespace manet

#endif // MANET_OLSR_STATE_HPP
