/*
 * manetsim: OLSR control-plane state machine.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#include "manet/olsr_state.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace manet {

bool seq_newer(std::uint16_t a, std::uint16_t b)
{
    if (a == b)
        return false;
    return (a > b && a - b <= 32768) || (b > a && b - a > 32768);
}

std::vector<NodeId> select_mprs(std::span<const NodeId> symmetric_neighbors,
                                std::span<const TwoHopTuple> two_hop_tuples)
{
    std::set<NodeId> sym(symmetric_neighbors.begin(), symmetric_neighbors.end());

    // coverage[n2] = symmetric neighbors reaching n2; cover_of[via] = n2 set.
    std::map<NodeId, std::set<NodeId>> coverage;
    std::map<NodeId, std::set<NodeId>> cover_of;
    for (const TwoHopTuple& t : two_hop_tuples) {
        if (!sym.count(t.via) || sym.count(t.two_hop))
            continue;
        coverage[t.two_hop].insert(t.via);
        cover_of[t.via].insert(t.two_hop);
    }

    std::set<NodeId> mprs;
    std::set<NodeId> uncovered;
    for (const auto& [n2, vias] : coverage) {
        if (vias.size() == 1)
            mprs.insert(*vias.begin());
        uncovered.insert(n2);
    }
    for (NodeId m : mprs)
        for (NodeId n2 : cover_of[m])
            uncovered.erase(n2);

    while (!uncovered.empty()) {
        NodeId best = kNoNode;
        std::size_t best_gain = 0;
        for (const auto& [via, n2s] : cover_of) {
            if (mprs.count(via))
                continue;
            std::size_t gain = 0;
            for (NodeId n2 : n2s)
                gain += uncovered.count(n2);
            if (gain > best_gain || (gain == best_gain && gain > 0 && via < best)) {
                best = via;
                best_gain = gain;
            }
        }
        if (best == kNoNode || best_gain == 0)
            break; // every remaining node is uncoverable; inputs were inconsistent
        mprs.insert(best);
        for (NodeId n2 : cover_of[best])
            uncovered.erase(n2);
    }

    return {mprs.begin(), mprs.end()};
}

OlsrNodeState::OlsrNodeState(NodeId self, double hello_hold, double tc_hold)
    : m_self(self),
      m_hello_hold(hello_hold),
      m_tc_hold(tc_hold)
{
}

HelloMessage OlsrNodeState::generate_hello() const
{
    HelloMessage msg;
    msg.originator = m_self;
    msg.heard_neighbors.reserve(m_neighbors.size());
    for (const NeighborTuple& n : m_neighbors) {
        LinkStatus status = LinkStatus::Heard;
        if (n.link_symmetric) {
            status = std::binary_search(m_mprs.begin(), m_mprs.end(), n.neighbor)
                         ? LinkStatus::Mpr
                         : LinkStatus::Symmetric;
        }
        msg.heard_neighbors.emplace_back(n.neighbor, status);
    }
    return msg;
}

OlsrChange OlsrNodeState::process_hello(const HelloMessage& msg, NodeId sender, SimTime now)
{
    OlsrChange change;

    const bool lists_self =
        std::any_of(msg.heard_neighbors.begin(), msg.heard_neighbors.end(),
                    [&](const auto& e) { return e.first == m_self; });

    auto it = std::lower_bound(m_neighbors.begin(), m_neighbors.end(), sender,
                               [](const NeighborTuple& t, NodeId id) { return t.neighbor < id; });
    bool was_symmetric = false;
    if (it == m_neighbors.end() || it->neighbor != sender) {
        it = m_neighbors.insert(it, NeighborTuple{sender, lists_self, 0.0});
        change.neighborhood = true;
    } else {
        was_symmetric = it->link_symmetric;
        if (was_symmetric != lists_self)
            change.neighborhood = true;
        it->link_symmetric = lists_self;
    }
    it->expiry = now + m_hello_hold;

    if (lists_self && !was_symmetric) {
        // A fresh symmetric neighbor is no longer a two-hop destination.
        erase_two_hops_of(sender);
        change.neighborhood = true;
    } else if (!lists_self && was_symmetric) {
        // Link fell back to asymmetric; two-hop tuples through it are void.
        erase_two_hops_via(sender);
        change.neighborhood = true;
    }

    bool self_marked_mpr = false;
    for (const auto& [id, status] : msg.heard_neighbors)
        if (id == m_self && status == LinkStatus::Mpr)
            self_marked_mpr = true;
    if (self_marked_mpr) {
        auto sit = std::lower_bound(
            m_selectors.begin(), m_selectors.end(), sender,
            [](const MprSelectorTuple& t, NodeId id) { return t.selector < id; });
        if (sit == m_selectors.end() || sit->selector != sender)
            sit = m_selectors.insert(sit, MprSelectorTuple{sender, 0.0});
        sit->expiry = now + m_hello_hold;
    }

    if (lists_self) { // two-hop links are usable only through a symmetric sender
        for (const auto& [id, status] : msg.heard_neighbors) {
            (void)status;
            if (id == m_self || id == sender || is_symmetric_neighbor(id))
                continue;
            auto tit = std::lower_bound(m_two_hop.begin(), m_two_hop.end(),
                                        std::make_pair(sender, id),
                                        [](const TwoHopTuple& t, const std::pair<NodeId, NodeId>& k) {
                                            return std::make_pair(t.via, t.two_hop) < k;
                                        });
            if (tit == m_two_hop.end() || tit->via != sender || tit->two_hop != id) {
                tit = m_two_hop.insert(tit, TwoHopTuple{sender, id, 0.0});
                change.neighborhood = true;
            }
            tit->expiry = now + m_hello_hold;
        }
    }

    if (change.neighborhood)
        refresh_mprs();
    return change;
}

std::optional<TcMessage> OlsrNodeState::generate_tc(NodeWeight own_weight)
{
    std::vector<NodeId> advertised = mpr_selector_ids();
    if (advertised.empty())
        return std::nullopt;
    if (!m_have_advertised || advertised != m_last_advertised) {
        ++m_ansn; // uint16 wraps
        m_last_advertised = advertised;
        m_have_advertised = true;
    }
    TcMessage msg;
    msg.originator = m_self;
    msg.ansn = m_ansn;
    msg.weight = own_weight;
    msg.advertised = std::move(advertised);
    return msg;
}

OlsrChange OlsrNodeState::process_tc(const TcMessage& msg, SimTime now)
{
    assert(msg.originator != m_self);
    OlsrChange change;

    auto first = std::lower_bound(
        m_topology.begin(), m_topology.end(), msg.originator,
        [](const TopologyTuple& t, NodeId id) { return t.last_addr < id; });
    auto last = first;
    while (last != m_topology.end() && last->last_addr == msg.originator)
        ++last;

    if (first != last && seq_newer(first->ansn, msg.ansn))
        return change; // stale message

    std::vector<NodeId> old_dests;
    NodeWeight old_weight = -1.0;
    for (auto it = first; it != last; ++it) {
        old_dests.push_back(it->dest_addr);
        old_weight = it->weight;
    }

    std::vector<NodeId> new_dests = msg.advertised;
    std::sort(new_dests.begin(), new_dests.end());
    new_dests.erase(std::unique(new_dests.begin(), new_dests.end()), new_dests.end());

    auto insert_at = m_topology.erase(first, last);
    std::vector<TopologyTuple> fresh;
    fresh.reserve(new_dests.size());
    for (NodeId dest : new_dests)
        fresh.push_back(TopologyTuple{msg.originator, dest, msg.ansn, msg.weight, now + m_tc_hold});
    m_topology.insert(insert_at, fresh.begin(), fresh.end());

    change.topology = old_dests != new_dests || (!new_dests.empty() && old_weight != msg.weight);
    return change;
}

bool OlsrNodeState::duplicate_seen(NodeId originator, std::uint16_t msg_seq) const
{
    auto it = std::lower_bound(
        m_duplicates.begin(), m_duplicates.end(), std::make_pair(originator, msg_seq),
        [](const DuplicateTuple& t, const std::pair<NodeId, std::uint16_t>& k) {
            return std::make_pair(t.originator, t.msg_seq) < k;
        });
    return it != m_duplicates.end() && it->originator == originator && it->msg_seq == msg_seq;
}

bool OlsrNodeState::should_forward_tc(NodeId originator, std::uint16_t msg_seq, NodeId sender,
                                      SimTime now)
{
    const bool unseen = !duplicate_seen(originator, msg_seq);
    auto it = std::lower_bound(
        m_duplicates.begin(), m_duplicates.end(), std::make_pair(originator, msg_seq),
        [](const DuplicateTuple& t, const std::pair<NodeId, std::uint16_t>& k) {
            return std::make_pair(t.originator, t.msg_seq) < k;
        });
    if (it == m_duplicates.end() || it->originator != originator || it->msg_seq != msg_seq)
        it = m_duplicates.insert(it, DuplicateTuple{originator, msg_seq, 0.0});
    it->expiry = now + m_tc_hold;

    const bool sender_selected_us =
        std::any_of(m_selectors.begin(), m_selectors.end(),
                    [&](const MprSelectorTuple& t) { return t.selector == sender; });
    return unseen && sender_selected_us;
}

OlsrChange OlsrNodeState::expire_tuples(SimTime now)
{
    OlsrChange change;

    std::vector<NodeId> gone_neighbors;
    for (const NeighborTuple& n : m_neighbors)
        if (n.expiry < now)
            gone_neighbors.push_back(n.neighbor);
    if (!gone_neighbors.empty()) {
        change.neighborhood = true;
        std::erase_if(m_neighbors, [&](const NeighborTuple& n) { return n.expiry < now; });
        for (NodeId via : gone_neighbors)
            erase_two_hops_via(via);
    }

    const auto two_hop_before = m_two_hop.size();
    std::erase_if(m_two_hop, [&](const TwoHopTuple& t) { return t.expiry < now; });
    if (m_two_hop.size() != two_hop_before)
        change.neighborhood = true;

    const auto topo_before = m_topology.size();
    std::erase_if(m_topology, [&](const TopologyTuple& t) { return t.expiry < now; });
    if (m_topology.size() != topo_before)
        change.topology = true;

    std::erase_if(m_duplicates, [&](const DuplicateTuple& t) { return t.expiry < now; });
    std::erase_if(m_selectors, [&](const MprSelectorTuple& t) { return t.expiry < now; });

    if (change.neighborhood)
        refresh_mprs();
    return change;
}

std::vector<NodeId> OlsrNodeState::symmetric_neighbor_ids() const
{
    std::vector<NodeId> ids;
    for (const NeighborTuple& n : m_neighbors)
        if (n.link_symmetric)
            ids.push_back(n.neighbor);
    return ids;
}

std::uint32_t OlsrNodeState::degree() const
{
    std::uint32_t d = 0;
    for (const NeighborTuple& n : m_neighbors)
        if (n.link_symmetric)
            ++d;
    return d;
}

bool OlsrNodeState::is_symmetric_neighbor(NodeId id) const
{
    auto it = std::lower_bound(m_neighbors.begin(), m_neighbors.end(), id,
                               [](const NeighborTuple& t, NodeId key) { return t.neighbor < key; });
    return it != m_neighbors.end() && it->neighbor == id && it->link_symmetric;
}

std::vector<NodeId> OlsrNodeState::mpr_selector_ids() const
{
    std::vector<NodeId> ids;
    ids.reserve(m_selectors.size());
    for (const MprSelectorTuple& t : m_selectors)
        ids.push_back(t.selector);
    return ids;
}

void OlsrNodeState::refresh_mprs()
{
    m_mprs = select_mprs(symmetric_neighbor_ids(), m_two_hop);
    ++m_mpr_recomputations;

    // Every two-hop node reachable through a symmetric neighbor must be covered.
    std::set<NodeId> covered;
    for (const TwoHopTuple& t : m_two_hop)
        if (std::binary_search(m_mprs.begin(), m_mprs.end(), t.via))
            covered.insert(t.two_hop);
    for (const TwoHopTuple& t : m_two_hop) {
        if (!is_symmetric_neighbor(t.via) || is_symmetric_neighbor(t.two_hop))
            continue;
        if (!covered.count(t.two_hop)) {
            ++m_coverage_violations;
            break;
        }
    }
}

void OlsrNodeState::erase_two_hops_via(NodeId via)
{
    std::erase_if(m_two_hop, [&](const TwoHopTuple& t) { return t.via == via; });
}

void OlsrNodeState::erase_two_hops_of(NodeId two_hop)
{
    std::erase_if(m_two_hop, [&](const TwoHopTuple& t) { return t.two_hop == two_hop; });
}

} // namespace manet
