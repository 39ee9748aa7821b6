#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nbcolor/families.hpp"
#include "nbcolor/min_potential.hpp"
#include "support.hpp"

using namespace nbc;

namespace {

WeightedHypergraph flow_example()
{
    WeightedHypergraph h;
    for (int w : {3, 4, 2, 1, 9, 15}) h.vertex_weight.push_back(w);
    h.add_edge({0, 1}, 5);
    h.add_edge({0, 2}, 8);
    h.add_edge({1, 2}, 2);
    h.add_edge({1, 3}, 7);
    h.add_edge({2, 4}, 5);
    h.add_edge({3, 4}, 3);
    h.add_edge({3, 5}, 6);
    h.add_edge({4, 5}, 7);
    return h;
}

int mode_of(Extremal e) { return e == Extremal::largest ? 1 : e == Extremal::smallest ? 2 : 0; }

}

TEST_CASE("auxiliary network shape")
{
    WeightedHypergraph one;
    one.vertex_weight.push_back(3);
    auto n1 = build_aux_network(one);
    CHECK(n1.node_count == 3);
    REQUIRE(n1.arcs.size() == 1);
    CHECK(n1.arcs[0].capacity == Rational(3));

    WeightedHypergraph two;
    two.vertex_weight = {1, 2};
    two.add_edge({0, 1}, 4);
    auto n2 = build_aux_network(two);
    CHECK(n2.node_count == 5);
    CHECK(n2.arcs.size() == 5);
    int inf = 0;
    for (const auto& a : n2.arcs) inf += a.infinite;
    CHECK(inf == 2);
    CHECK(n2.infinite_capacity == Rational(8));

    auto n4 = build_aux_network(flow_example());
    CHECK(n4.node_count == 16);
}

TEST_CASE("max flow on tiny networks")
{
    FlowNetwork a;
    a.arcs.push_back({0, 1, 5});
    CHECK(max_flow(a).value == Rational(5));

    FlowNetwork b;
    b.node_count = 4;
    b.arcs = {{0, 2, 3}, {2, 1, 3}, {0, 3, 4}, {3, 1, 4}};
    auto r = max_flow(b);
    CHECK(r.value == Rational(7));
    CHECK(r.source_side == std::vector<int>{0});

    FlowNetwork c;
    c.node_count = 3;
    c.arcs = {{0, 2, Rational(1, 2)}, {2, 1, Rational(1, 3)}};
    CHECK(max_flow(c).value == Rational(1, 3));
}

TEST_CASE("flow example from the potential reduction")
{
    auto h = flow_example();
    CHECK(h.total_edge_weight() == Rational(43));
    auto net = build_aux_network(h);
    CHECK(max_flow(net).value == Rational(31));
    auto mp = min_potential_subset(h);
    CHECK(mp.W == VertexSet{0, 1, 2, 3});
    CHECK(mp.rho == Rational(-12));
    CHECK(mp.cut == Rational(31));
}

TEST_CASE("constrained search on the flow example matches enumeration")
{
    auto h = flow_example();
    auto mp = min_potential_constrained(h, 1, 3, Extremal::smallest);
    auto ref = testsupport::enumerate_min(h, 1, 3, 2);
    CHECK(mp.rho == Rational(ref.rho));
    CHECK(mp.W == ref.W);

    auto forced = min_potential_constrained(h, 6, 0, Extremal::any);
    CHECK(forced.W == all_vertices(6));
    CHECK(forced.rho == Rational(-9));

    auto plain = min_potential_constrained(h, 0, 0, Extremal::largest);
    CHECK(plain.rho == min_potential_subset(h).rho);

    CHECK_THROWS_AS(min_potential_constrained(h, 4, 3, Extremal::any), std::invalid_argument);
}

TEST_CASE("isolated vertices give the empty set")
{
    WeightedHypergraph h;
    h.vertex_weight = {2, 5, 1};
    auto mp = min_potential_subset(h);
    CHECK(mp.W.empty());
    CHECK(mp.rho == Rational(0));
}

TEST_CASE("spindle with multigraph weights")
{
    Graph m7 = base_graph("m7");
    auto mp = min_potential_subset(hypergraph_of(m7, PotentialKind::multigraph));
    CHECK(mp.W == all_vertices(7));
    CHECK(mp.rho == Rational(-1));
    int minimizers = 0;
    auto h = hypergraph_of(m7, PotentialKind::multigraph);
    for (std::uint32_t mask = 0; mask < 128; ++mask)
        minimizers += rho_hyper(h, testsupport::bits(mask, 7)) == Rational(-1);
    CHECK(minimizers == 1);
}

TEST_CASE("cut identity and integrality")
{
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 100; ++rep) {
        auto h = testsupport::random_hypergraph(rng, 10, 15, 20);
        auto mp = min_potential_subset(h);
        CHECK(mp.cut - h.total_edge_weight() == rho_hyper(h, mp.W));
        CHECK(mp.rho.is_integer());
        CHECK(mp.cut.is_integer());
    }
}

TEST_CASE("rational weights")
{
    WeightedHypergraph h;
    h.vertex_weight = {Rational(3, 2), Rational(3, 2), Rational(3, 2)};
    h.add_edge({0, 1}, 1);
    h.add_edge({1, 2}, 1);
    h.add_edge({0, 2}, 1);
    h.add_edge({0, 1}, 1);
    auto mp = min_potential_constrained(h, 1, 0, Extremal::largest);
    CHECK(mp.rho == Rational(1, 2));
    CHECK(mp.W == VertexSet{0, 1, 2});
}

TEST_CASE("flow and constrained variants agree with enumeration")
{
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 40; ++rep) {
        int n = 1 + static_cast<int>(rng() % 10);
        int m = static_cast<int>(rng() % 15);
        auto h = testsupport::random_hypergraph(rng, n, m, 20);
        auto base = testsupport::enumerate_min(h, 0, 0, 1);
        auto mp = min_potential_subset(h);
        REQUIRE(mp.rho == Rational(base.rho));
        REQUIRE(mp.W.size() == base.W.size());
        for (int m1 = 0; m1 <= 3; ++m1)
            for (int m2 = 0; m2 <= 3; ++m2) {
                if (m1 > n - m2) continue;
                for (Extremal ex : {Extremal::any, Extremal::largest, Extremal::smallest}) {
                    auto got = min_potential_constrained(h, m1, m2, ex);
                    auto ref = testsupport::enumerate_min(h, m1, m2, mode_of(ex));
                    REQUIRE(got.rho == Rational(ref.rho));
                    REQUIRE(rho_hyper(h, got.W) == got.rho);
                    int sz = static_cast<int>(got.W.size());
                    REQUIRE(sz >= m1);
                    REQUIRE(sz <= n - m2);
                    if (ex != Extremal::any) REQUIRE(got.W == ref.W);
                }
            }
    }
}

TEST_CASE("graph fast path matches the hypergraph route")
{
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 60; ++rep) {
        bool multi = rep % 2 == 0;
        Graph g = testsupport::random_graph(rng, 9, 0.45, multi, !multi, true);
        auto kind = multi ? PotentialKind::multigraph : PotentialKind::simple;
        auto h = hypergraph_of(g, kind);
        for (auto [m1, m2] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, 2}})
            for (Extremal ex : {Extremal::largest, Extremal::smallest}) {
                auto a = min_potential_graph(g, kind, m1, m2, ex);
                auto b = min_potential_constrained(h, m1, m2, ex);
                REQUIRE(Rational(a.rho) == b.rho);
                REQUIRE(a.W == b.W);
                REQUIRE(rho(g, a.W, kind) == a.rho);
            }
    }
}
