#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nbcolor/families.hpp"
#include "nbcolor/forbidden.hpp"
#include "nbcolor/oracle.hpp"
#include "support.hpp"

using namespace nbc;

namespace {

bool f_connected(const Graph& g, const Coloring& c, int s, int t)
{
    std::vector<char> seen(g.n(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x == t) return true;
        for (const auto& inc : g.incident(x))
            if (!seen[inc.nbr] && c[inc.nbr] == Color::F) {
                seen[inc.nbr] = 1;
                stack.push_back(inc.nbr);
            }
    }
    return false;
}

Graph cycle(int n)
{
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return normalize(n, e);
}

}

TEST_CASE("brute force on small named graphs")
{
    CHECK_FALSE(brute_nb_color(base_graph("k4")));
    CHECK_FALSE(brute_nb_color(base_graph("k222")));
    Graph tree = normalize(6, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}});
    auto c = brute_nb_color(tree);
    REQUIRE(c);
    CHECK(c->I().empty());
    CHECK(brute_nb_color(cycle(5)));
}

TEST_CASE("brute force respects precolors")
{
    Graph c = with_tags(cycle(4), {Tag::ip, Tag::none, Tag::ip, Tag::none});
    auto col = brute_nb_color(c);
    REQUIRE(col);
    CHECK((*col)[0] == Color::I);
    CHECK((*col)[2] == Color::I);

    Graph bad = with_tags(normalize(2, {{0, 1}}), {Tag::ip, Tag::ip});
    CHECK_FALSE(brute_nb_color(bad));
}

TEST_CASE("brute force agrees with plain enumeration")
{
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 300; ++rep) {
        int n = 3 + static_cast<int>(rng() % 9);
        Graph g = testsupport::random_graph(rng, n, 0.3 + 0.4 * (rep % 3) / 2.0, true, rep % 2 == 0, true);
        auto c = brute_nb_color(g);
        REQUIRE(c.has_value() == testsupport::naive_colorable(g));
        if (c) CHECK(is_valid(g, *c));
    }
}

TEST_CASE("full enumeration counts match plain enumeration")
{
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 60; ++rep) {
        int n = 3 + static_cast<int>(rng() % 8);
        Graph g = testsupport::random_graph(rng, n, 0.4, true, true, true);
        long long expect = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
            expect += is_valid(g, testsupport::coloring_from_mask(mask, n));
        long long seen = enumerate_nb_colorings(g, [&](const Coloring& c) {
            REQUIRE(is_valid(g, c));
            return true;
        });
        CHECK(seen == expect);
    }
}

TEST_CASE("threshold and cancellation")
{
    Graph big(30);
    CHECK_THROWS_AS(brute_nb_color(big), ThresholdExceeded);
    BruteOptions o;
    o.threshold = 40;
    CHECK(brute_nb_color(big, o));

    CancelToken tok;
    tok.cancel();
    BruteOptions oc;
    oc.cancel = &tok;
    CHECK_THROWS_AS(brute_nb_color(base_graph("j12"), oc), Cancelled);
}

TEST_CASE("subgraph monotonicity")
{
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 100; ++rep) {
        Graph g = testsupport::random_graph(rng, 9, 0.45, true, false, false);
        if (!brute_nb_color(g) || g.m() == 0) continue;
        Graph h = with_edge_demoted(g, static_cast<int>(rng() % g.m()));
        CHECK(brute_nb_color(h));
    }
}

TEST_CASE("criticality")
{
    CHECK(is_nb_critical(base_graph("m7")));
    CHECK(is_nb_critical(gen_Gk(2)));
    Graph k4e = normalize(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK_FALSE(is_nb_critical(k4e));
    Graph k4iso = normalize(5, base_graph("k4").edges());
    CHECK_FALSE(is_nb_critical(k4iso));

    CHECK(is_4_critical(base_graph("k4")));
    CHECK(is_4_critical(base_graph("w5")));
    CHECK_FALSE(is_4_critical(base_graph("k222")));
    CHECK(three_coloring(base_graph("k222")));
    CHECK_FALSE(three_coloring(base_graph("w5")));
    CHECK_FALSE(is_4_critical(cycle(5)));
}

TEST_CASE("sparsity")
{
    Graph g3 = gen_Gk(3);
    SparsityParams p1{Rational(3, 2), Rational(-1)};
    CHECK(check_sparse(g3, p1).ok);
    SparsityParams p2{Rational(3, 2), Rational(-1, 2)};
    auto r = check_sparse(g3, p2);
    CHECK_FALSE(r.ok);
    CHECK(r.witness == all_vertices(10));
    Graph tree = normalize(5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}});
    CHECK(check_sparse(tree, {Rational(1), Rational(1)}).ok);
    CHECK_FALSE(check_sparse(cycle(4), {Rational(1), Rational(1)}).ok);
}

TEST_CASE("sparsity paths agree")
{
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 150; ++rep) {
        int n = 1 + static_cast<int>(rng() % 12);
        Graph g = testsupport::random_graph(rng, n, 0.4, true, rep % 3 == 0, false);
        SparsityParams p{Rational(static_cast<std::int64_t>(rng() % 5) + 2, 2 + static_cast<std::int64_t>(rng() % 2)),
                         Rational(static_cast<std::int64_t>(rng() % 5) - 2, 2)};
        auto a = check_sparse(g, p, SparseMethod::enumerate);
        auto b = check_sparse(g, p, SparseMethod::flow);
        REQUIRE(a.ok == b.ok);
        REQUIRE(a.min_slack == b.min_slack);
    }
}

TEST_CASE("linked hosts constrain every coloring")
{
    Catalog cat = build_catalog(8);
    int hosts = 0;
    for (const auto& mem : cat.members) {
        const Graph& h = mem.graph;
        for (int e = 0; e < h.m() && hosts < 30; ++e) {
            Graph host = with_edge_removed(h, e);
            int s = h.edge(e).u, t = h.edge(e).v;
            auto w = are_linked(host, s, t, cat);
            REQUIRE(w);
            ++hosts;
            enumerate_nb_colorings(host, [&](const Coloring& c) {
                bool bothI = c[s] == Color::I && c[t] == Color::I;
                bool bothF = c[s] == Color::F && c[t] == Color::F;
                REQUIRE((bothI || bothF));
                if (bothF) REQUIRE(f_connected(host, c, s, t));
                return true;
            });
        }
    }
    CHECK(hosts >= 20);
}
