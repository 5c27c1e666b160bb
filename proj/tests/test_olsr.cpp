/*
 * manetsim: OLSR state machine tests. Chain scenarios are traced by hand in
 * the comments; graph properties are checked against exhaustive covers.
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "manet/olsr_state.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace manet;

namespace {

constexpr double kHold = 6.0;
constexpr double kTcHold = 15.0;

OlsrNodeState make_state(NodeId self)
{
    return OlsrNodeState(self, kHold, kTcHold);
}

HelloMessage hello_from(NodeId origin,
                        std::vector<std::pair<NodeId, LinkStatus>> entries)
{
    HelloMessage m;
    m.originator = origin;
    m.heard_neighbors = std::move(entries);
    return m;
}

} // namespace

TEST_CASE("empty node emits an empty hello")
{
    auto a = make_state(0);
    HelloMessage h = a.generate_hello();
    CHECK(h.originator == 0);
    CHECK(h.heard_neighbors.empty());
}

TEST_CASE("first hello establishes heard, the reply establishes symmetric")
{
    // B's first HELLO does not list A, so A hears B without symmetry.
    auto a = make_state(0);
    a.process_hello(hello_from(1, {}), 1, 0.0);
    REQUIRE(a.neighbors().size() == 1);
    CHECK_FALSE(a.neighbors()[0].link_symmetric);
    CHECK(a.degree() == 0);

    // B's next HELLO lists A, which confirms the bidirectional link.
    a.process_hello(hello_from(1, {{0, LinkStatus::Heard}}), 1, 2.0);
    CHECK(a.neighbors()[0].link_symmetric);
    CHECK(a.degree() == 1);
}

TEST_CASE("two-hop tuple appears for a neighbor of a symmetric sender")
{
    // Chain A(0)-B(1)-C(2). B's HELLO lists both A and C; C is unknown to A.
    auto a = make_state(0);
    a.process_hello(hello_from(1, {{0, LinkStatus::Heard}, {2, LinkStatus::Heard}}), 1, 0.0);
    REQUIRE(a.two_hop_tuples().size() == 1);
    CHECK(a.two_hop_tuples()[0].via == 1);
    CHECK(a.two_hop_tuples()[0].two_hop == 2);

    // The sole cover of the two-hop node becomes the MPR.
    CHECK(a.mpr_set() == std::vector<NodeId>{1});

    // A's next HELLO therefore advertises B with MPR status.
    HelloMessage h = a.generate_hello();
    REQUIRE(h.heard_neighbors.size() == 1);
    CHECK(h.heard_neighbors[0].first == 1);
    CHECK(h.heard_neighbors[0].second == LinkStatus::Mpr);
}

TEST_CASE("asymmetric sender contributes no two-hop tuples")
{
    auto a = make_state(0);
    a.process_hello(hello_from(1, {{2, LinkStatus::Heard}}), 1, 0.0);
    CHECK(a.two_hop_tuples().empty());
}

TEST_CASE("a node that becomes a symmetric neighbor leaves the two-hop set")
{
    auto a = make_state(0);
    a.process_hello(hello_from(1, {{0, LinkStatus::Heard}, {2, LinkStatus::Heard}}), 1, 0.0);
    REQUIRE(a.two_hop_tuples().size() == 1);
    // C moves into range and the link becomes symmetric.
    a.process_hello(hello_from(2, {{0, LinkStatus::Heard}}), 2, 1.0);
    CHECK(a.two_hop_tuples().empty());
    CHECK(a.degree() == 2);
}

TEST_CASE("chain middle node lists both ends as symmetric")
{
    auto b = make_state(1);
    b.process_hello(hello_from(0, {{1, LinkStatus::Heard}}), 0, 0.0);
    b.process_hello(hello_from(2, {{1, LinkStatus::Heard}}), 2, 0.0);
    HelloMessage h = b.generate_hello();
    REQUIRE(h.heard_neighbors.size() == 2);
    CHECK(h.heard_neighbors[0].second == LinkStatus::Symmetric);
    CHECK(h.heard_neighbors[1].second == LinkStatus::Symmetric);
}

TEST_CASE("select_mprs covers every two-hop node")
{
    SUBCASE("no two-hop nodes means no MPRs")
    {
        CHECK(select_mprs(std::vector<NodeId>{1, 2}, std::vector<TwoHopTuple>{}).empty());
    }
    SUBCASE("sole cover is chosen")
    {
        std::vector<NodeId> sym{1};
        std::vector<TwoHopTuple> two{{1, 2, 10.0}};
        CHECK(select_mprs(sym, two) == std::vector<NodeId>{1});
    }
    SUBCASE("greedy picks the wider cover")
    {
        // B(1) covers {D(3), E(4)}, C(2) covers {D(3)}: exhaustive search over
        // subsets shows {B} is the unique minimal cover; greedy agrees.
        std::vector<NodeId> sym{1, 2};
        std::vector<TwoHopTuple> two{{1, 3, 10.0}, {1, 4, 10.0}, {2, 3, 10.0}};
        CHECK(select_mprs(sym, two) == std::vector<NodeId>{1});
    }
    SUBCASE("tie breaks to the smallest id")
    {
        std::vector<NodeId> sym{1, 2};
        std::vector<TwoHopTuple> two{{1, 3, 10.0}, {2, 3, 10.0}};
        CHECK(select_mprs(sym, two) == std::vector<NodeId>{1});
    }
}

TEST_CASE("mpr coverage holds on random neighborhoods")
{
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        std::uniform_int_distribution<int> nd(1, 8);
        std::uniform_int_distribution<int> td(0, 20);
        const int n_sym = nd(rng);
        std::vector<NodeId> sym;
        for (int i = 0; i < n_sym; ++i)
            sym.push_back(1 + i);
        std::vector<TwoHopTuple> two;
        const int n_two = td(rng);
        std::uniform_int_distribution<int> via(0, n_sym - 1);
        std::uniform_int_distribution<int> th(100, 110);
        for (int i = 0; i < n_two; ++i)
            two.push_back(TwoHopTuple{sym[via(rng)], static_cast<NodeId>(th(rng)), 1.0});

        auto mprs = select_mprs(sym, two);
        std::set<NodeId> chosen(mprs.begin(), mprs.end());
        for (const TwoHopTuple& t : two) {
            bool covered = std::any_of(two.begin(), two.end(), [&](const TwoHopTuple& u) {
                return u.two_hop == t.two_hop && chosen.count(u.via);
            });
            CHECK(covered);
        }
        // every MPR is a symmetric neighbor
        for (NodeId m : mprs)
            CHECK(std::find(sym.begin(), sym.end(), m) != sym.end());
    }
}

TEST_CASE("hello marking us as MPR populates the selector set")
{
    auto b = make_state(1);
    b.process_hello(hello_from(0, {{1, LinkStatus::Mpr}}), 0, 0.0);
    CHECK(b.mpr_selector_ids() == std::vector<NodeId>{0});
}

TEST_CASE("generate_tc advertises selectors and manages the ansn")
{
    auto b = make_state(1);
    CHECK_FALSE(b.generate_tc(0.1).has_value()); // nobody selected us

    b.process_hello(hello_from(0, {{1, LinkStatus::Mpr}}), 0, 0.0);
    b.process_hello(hello_from(2, {{1, LinkStatus::Mpr}}), 2, 0.0);

    auto tc1 = b.generate_tc(0.42);
    REQUIRE(tc1.has_value());
    CHECK(tc1->originator == 1);
    CHECK(tc1->weight == 0.42);
    CHECK(tc1->advertised == std::vector<NodeId>{0, 2});

    // unchanged selector set keeps the ansn
    auto tc2 = b.generate_tc(0.5);
    REQUIRE(tc2.has_value());
    CHECK(tc2->ansn == tc1->ansn);

    // a new selector advances it
    b.process_hello(hello_from(3, {{1, LinkStatus::Mpr}}), 3, 1.0);
    auto tc3 = b.generate_tc(0.5);
    REQUIRE(tc3.has_value());
    CHECK(tc3->ansn == static_cast<std::uint16_t>(tc1->ansn + 1));
}

TEST_CASE("process_tc replaces tuples per originator and honors the ansn")
{
    auto n = make_state(9);
    TcMessage tc;
    tc.originator = 5;
    tc.ansn = 5;
    tc.weight = 0.3;
    tc.advertised = {1, 2};
    CHECK(n.process_tc(tc, 0.0).topology);
    REQUIRE(n.topology_tuples().size() == 2);
    CHECK(n.topology_tuples()[0].weight == 0.3);
    CHECK(n.topology_tuples()[1].weight == 0.3);

    // stale ansn is discarded
    TcMessage stale = tc;
    stale.ansn = 4;
    stale.advertised = {7};
    CHECK_FALSE(n.process_tc(stale, 1.0).topology);
    CHECK(n.topology_tuples().size() == 2);

    // newer ansn replaces the set and the weight
    TcMessage newer = tc;
    newer.ansn = 6;
    newer.weight = 0.7;
    newer.advertised = {1};
    CHECK(n.process_tc(newer, 2.0).topology);
    REQUIRE(n.topology_tuples().size() == 1);
    CHECK(n.topology_tuples()[0].last_addr == 5);
    CHECK(n.topology_tuples()[0].dest_addr == 1);
    CHECK(n.topology_tuples()[0].weight == 0.7);
}

TEST_CASE("ansn comparison handles wraparound")
{
    CHECK(seq_newer(1, 0));
    CHECK_FALSE(seq_newer(0, 1));
    CHECK(seq_newer(0, 65535)); // wrapped
    CHECK_FALSE(seq_newer(65535, 0));
    CHECK_FALSE(seq_newer(7, 7));
    CHECK(seq_newer(32768, 0));
    CHECK_FALSE(seq_newer(32769, 0));
}

TEST_CASE("should_forward_tc forwards once and only for selectors")
{
    auto n = make_state(1);
    n.process_hello(hello_from(0, {{1, LinkStatus::Mpr}}), 0, 0.0);

    // first copy from a node that selected us
    CHECK(n.should_forward_tc(5, 100, 0, 0.0));
    // second copy of the same message
    CHECK_FALSE(n.should_forward_tc(5, 100, 0, 0.1));
    // first copy of another message from a non-selector
    CHECK_FALSE(n.should_forward_tc(5, 101, 3, 0.2));
    // and it was still recorded as seen
    CHECK(n.duplicate_seen(5, 101));
}

TEST_CASE("expiry cascades from a vanished neighbor")
{
    auto a = make_state(0);
    a.process_hello(hello_from(1, {{0, LinkStatus::Heard}, {2, LinkStatus::Heard}}), 1, 0.0);
    REQUIRE(a.degree() == 1);
    REQUIRE(a.two_hop_tuples().size() == 1);
    REQUIRE(a.mpr_set().size() == 1);

    SUBCASE("nothing expired leaves state unchanged")
    {
        auto change = a.expire_tuples(kHold); // expiry == now survives
        CHECK_FALSE(change.any());
        CHECK(a.degree() == 1);
    }
    SUBCASE("sole neighbor expiring clears dependents")
    {
        auto change = a.expire_tuples(kHold + 0.1);
        CHECK(change.neighborhood);
        CHECK(a.neighbors().empty());
        CHECK(a.two_hop_tuples().empty());
        CHECK(a.mpr_set().empty());
    }
}

TEST_CASE("topology tuples expire on their own clock")
{
    auto n = make_state(9);
    TcMessage tc;
    tc.originator = 5;
    tc.ansn = 1;
    tc.advertised = {1};
    n.process_tc(tc, 0.0);
    REQUIRE(n.topology_tuples().size() == 1);
    CHECK_FALSE(n.expire_tuples(kTcHold).topology);
    CHECK(n.expire_tuples(kTcHold + 0.01).topology);
    CHECK(n.topology_tuples().empty());
}
