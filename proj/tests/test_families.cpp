#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nbcolor/families.hpp"
#include "nbcolor/min_potential.hpp"
#include "nbcolor/oracle.hpp"
#include "nbcolor/potential.hpp"
#include "support.hpp"

using namespace nbc;

TEST_CASE("G_k shape")
{
    for (int k = 1; k <= 5; ++k) {
        Graph g = gen_Gk(k);
        CHECK(g.n() == 2 * k + 4);
        CHECK(g.edge_multiplicity_total() == 3 * k + 7);
        CHECK(rho_m(g, all_vertices(g.n())) == -2);
    }
    CHECK(gen_Gk(3).n() == 10);
    CHECK(gen_Gk(3).edge_multiplicity_total() == 16);
    CHECK_THROWS_AS(gen_Gk(0), std::invalid_argument);
}

TEST_CASE("H_k shape")
{
    for (int k = 1; k <= 3; ++k) {
        Graph h = gen_Hk(k);
        CHECK(h.n() == 5 * (k + 2));
        CHECK(h.m() == 8 * (k + 2) + 1);
        CHECK_FALSE(h.has_kind(EdgeKind::multi));
        CHECK_FALSE(h.has_kind(EdgeKind::gadget));
        CHECK(rho_s(h, all_vertices(h.n())) == -5);
    }
    CHECK(gen_Hk(3).n() == 25);
    CHECK(gen_Hk(3).m() == 41);
    CHECK_THROWS_AS(gen_Hk(0), std::invalid_argument);
}

TEST_CASE("named graph sizes")
{
    std::vector<std::tuple<std::string, int, int>> expect{{"K4", 4, 6},  {"W5", 6, 10},  {"M7", 7, 11},  {"J7", 7, 12},
                                                          {"J8", 8, 13}, {"J12", 12, 20}, {"K222", 6, 12}};
    for (auto [name, n, m] : expect) {
        Graph g = base_graph(name);
        CHECK(g.n() == n);
        CHECK(g.m() == m);
    }
    CHECK(rho_m(base_graph("m7"), all_vertices(7)) == -1);
    CHECK(rho_s(base_graph("j12"), all_vertices(12)) == -4);
    CHECK(rho_s(base_graph("k4"), all_vertices(4)) == 2);
    CHECK_THROWS_AS(base_graph("petersen"), std::invalid_argument);
}

TEST_CASE("multiedge replacement on an isolated pair")
{
    Graph g = multiedge_replacement(Graph(2), 0, 1);
    CHECK(g.n() == 5);
    CHECK(g.m() == 7);
    int seen = 0;
    enumerate_nb_colorings(g, [&](const Coloring& c) {
        CHECK((c[0] == Color::I) != (c[1] == Color::I));
        ++seen;
        return true;
    });
    CHECK(seen > 0);
    for (int e = 0; e < g.m(); ++e) {
        Graph h = with_edge_removed(g, e);
        bool both_f = false;
        enumerate_nb_colorings(h, [&](const Coloring& c) {
            both_f = c[0] == Color::F && c[1] == Color::F;
            return !both_f;
        });
        CHECK(both_f);
    }
}

TEST_CASE("forcing attachments")
{
    Graph c5 = normalize(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    Graph f = attach_force_F(c5, 0);
    CHECK(f.n() == 7);
    long long cnt = enumerate_nb_colorings(f, [&](const Coloring& c) {
        CHECK(c[0] == Color::F);
        return true;
    });
    CHECK(cnt > 0);

    Graph i = attach_force_I(c5, 0);
    CHECK(i.n() == 6);
    CHECK(i.tag(5) == Tag::fp);
    enumerate_nb_colorings(i, [&](const Coloring& c) {
        CHECK(c[0] == Color::I);
        return true;
    });

    CHECK_THROWS_AS(attach_force_F(with_tag(c5, 0, Tag::fp), 0), std::invalid_argument);
    CHECK_THROWS_AS(attach_force_I(c5, 9), std::invalid_argument);
}

TEST_CASE("G_k proper subsets are strictly above the floor")
{
    for (int k = 1; k <= 4; ++k) {
        Graph g = gen_Gk(k);
        auto r = min_potential_graph(g, PotentialKind::multigraph, 1, 1, Extremal::any);
        CHECK(r.rho > -2);
    }
}
