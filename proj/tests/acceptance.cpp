// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "nbcolor/families.hpp"
#include "nbcolor/forbidden.hpp"
#include "nbcolor/generate.hpp"
#include "nbcolor/min_potential.hpp"
#include "nbcolor/oracle.hpp"
#include "nbcolor/potential.hpp"
#include "nbcolor/solver.hpp"
#include "nbcolor/tree_coloring.hpp"
#include "support.hpp"

using namespace nbc;

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what)
{
    if (!ok) throw Failure{what};
}

std::string str(std::int64_t x) { return std::to_string(x); }

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

std::string criterion1()
{
    struct Row {
        std::string name;
        std::int64_t m, s;
    };
    for (const Row& r : {Row{"k4", 0, 2}, Row{"w5", -2, -2}, Row{"k222", -6, -12}, Row{"m7", -1, 1},
                         Row{"j7", -3, -4}, Row{"j8", -2, -1}, Row{"j12", -4, -4}}) {
        Graph g = base_graph(r.name);
        auto V = all_vertices(g.n());
        expect(rho_m(g, V) == r.m, r.name + " rho_m " + str(rho_m(g, V)));
        expect(rho_s(g, V) == r.s, r.name + " rho_s " + str(rho_s(g, V)));
    }
    for (int k = 1; k <= 5; ++k) {
        Graph g = gen_Gk(k);
        expect(rho_m(g, all_vertices(g.n())) == -2, "G_" + str(k));
    }
    for (int k = 1; k <= 3; ++k) {
        Graph g = gen_Hk(k);
        expect(rho_s(g, all_vertices(g.n())) == -5, "H_" + str(k));
    }
    return "7 named graphs, G_1..G_5, H_1..H_3";
}

std::string criterion2()
{
    auto h = flow_example();
    auto mp = min_potential_subset(h);
    expect(mp.rho == Rational(-12), "rho");
    expect(mp.W == VertexSet{0, 1, 2, 3}, "subset");
    auto net = build_aux_network(h);
    auto flow = max_flow(net);
    expect(flow.value == Rational(31), "cut value");
    expect(h.total_edge_weight() == Rational(43), "total edge weight");
    return "rho -12 on {u,v,w,x}, cut 31, edge total 43";
}

std::string criterion3()
{
    std::mt19937_64 rng(3001);
    long compared = 0;
    for (int rep = 0; rep < 200; ++rep) {
        int n = 1 + static_cast<int>(rng() % 12);
        int m = static_cast<int>(rng() % 19);
        auto h = testsupport::random_hypergraph(rng, n, m, 20);
        auto base = testsupport::enumerate_min(h, 0, 0, 1);
        auto mp = min_potential_subset(h);
        expect(mp.rho == Rational(base.rho), "unconstrained rho, instance " + str(rep));
        expect(mp.W.size() == base.W.size(), "unconstrained size, instance " + str(rep));
        for (int m1 = 0; m1 <= 3; ++m1)
            for (int m2 = 0; m2 <= 3; ++m2) {
                if (m1 > n - m2) continue;
                for (int mode = 0; mode < 3; ++mode) {
                    Extremal ex = mode == 0 ? Extremal::any : mode == 1 ? Extremal::largest : Extremal::smallest;
                    auto got = min_potential_constrained(h, m1, m2, ex);
                    auto ref = testsupport::enumerate_min(h, m1, m2, mode);
                    std::string where = "instance " + str(rep) + " m1=" + str(m1) + " m2=" + str(m2);
                    expect(got.rho == Rational(ref.rho), "rho at " + where);
                    expect(rho_hyper(h, got.W) == got.rho, "reported subset at " + where);
                    if (mode != 0) expect(got.W.size() == ref.W.size(), "extremal size at " + where);
                    ++compared;
                }
            }
    }
    return str(compared) + " constrained comparisons";
}

std::string criterion4()
{
    std::vector<std::pair<std::string, Graph>> crit;
    for (const char* name : {"k4", "w5", "m7", "j7", "j8", "j12", "k222"}) crit.push_back({name, base_graph(name)});
    for (int k = 1; k <= 4; ++k) crit.push_back({"G_" + str(k), gen_Gk(k)});
    for (int k = 1; k <= 2; ++k) crit.push_back({"H_" + str(k), gen_Hk(k)});
    BruteOptions bo;
    bo.threshold = 64;
    for (const auto& [name, g] : crit) expect(is_nb_critical(g, bo), name + " not nb-critical");
    for (const auto& name : base_graph_names()) {
        bool four = is_4_critical(base_graph(name), bo);
        expect(four == (name != "k222"), name + " 4-criticality");
    }
    expect(three_coloring(base_graph("k222"), bo).has_value(), "k222 3-coloring");
    return str(static_cast<std::int64_t>(crit.size())) + " nb-critical, 6 of 7 base graphs 4-critical";
}

std::string criterion5()
{
    SparsityParams g_ok{Rational(3, 2), Rational(-1)}, g_bad{Rational(3, 2), Rational(-1, 2)};
    SparsityParams h_ok{Rational(8, 5), Rational(-1)};
    for (int k = 1; k <= 4; ++k) {
        Graph g = gen_Gk(k);
        expect(check_sparse(g, g_ok).ok, "G_" + str(k) + " (1.5,-1)");
        expect(!check_sparse(g, g_bad).ok, "G_" + str(k) + " (1.5,-0.5)");
        auto r = min_potential_graph(g, PotentialKind::multigraph, 1, 1, Extremal::any);
        expect(r.rho > -2, "G_" + str(k) + " proper subset at " + str(r.rho));
    }
    for (int k = 1; k <= 2; ++k) {
        Graph g = gen_Hk(k);
        expect(check_sparse(g, h_ok).ok, "H_" + str(k) + " (1.6,-1)");
        auto r = min_potential_graph(g, PotentialKind::simple, 1, 1, Extremal::any);
        expect(r.rho > -5, "H_" + str(k) + " proper subset at " + str(r.rho));
    }
    return "G_1..G_4, H_1..H_2";
}

std::string criterion6()
{
    Graph g = multiedge_replacement(Graph(2), 0, 1);
    expect(g.n() == 5, "replacement size");
    long long seen = enumerate_nb_colorings(g, [&](const Coloring& c) {
        expect((c[0] == Color::I) != (c[1] == Color::I), "both roots same color");
        return true;
    });
    expect(seen > 0, "replacement has no coloring");
    for (int e = 0; e < g.m(); ++e) {
        bool both_f = false;
        enumerate_nb_colorings(with_edge_removed(g, e), [&](const Coloring& c) {
            both_f = c[0] == Color::F && c[1] == Color::F;
            return !both_f;
        });
        expect(both_f, "edge " + str(e) + " removal keeps roots apart");
    }
    std::mt19937_64 rng(6001);
    int hosts = 0;
    while (hosts < 10) {
        int n = 3 + static_cast<int>(rng() % 5);
        Graph host = testsupport::random_graph(rng, n, 0.4, false, false, false);
        int w = static_cast<int>(rng() % n);
        Graph f = attach_force_F(host, w), i = attach_force_I(host, w);
        if (!is_nb_colorable(f) || !is_nb_colorable(i)) continue;
        enumerate_nb_colorings(f, [&](const Coloring& c) {
            expect(c[w] == Color::F, "force_F host " + str(hosts));
            return true;
        });
        enumerate_nb_colorings(i, [&](const Coloring& c) {
            expect(c[w] == Color::I, "force_I host " + str(hosts));
            return true;
        });
        ++hosts;
    }
    return "replacement plus 10 forcing hosts";
}

Catalog multigraph_catalog()
{
    Catalog c;
    c.members.push_back({"k4", base_graph("k4"), Provenance::base, std::nullopt});
    c.members.push_back({"m7", base_graph("m7"), Provenance::named, std::nullopt});
    return c;
}

std::string criterion7()
{
    std::mt19937_64 rng(7001);
    Catalog forb = multigraph_catalog();
    SolveOptions opt;
    opt.brute_threshold = 0;
    SparsityParams sparse{Rational(3, 2), Rational(-1, 2)};
    int small = 0;
    for (int i = 0; i < 500; ++i) {
        GenOptions go;
        go.n = 4 + i % 57;
        go.heavy = i % 2 ? 0.25 : 0.1;
        go.precolor = 0.0;
        go.cubic_seed = i % 5 != 0;
        Graph g = random_multigraph(rng, go);
        std::string id = "instance " + str(i) + " (n=" + str(g.n()) + ")";
        expect(check_sparse(g, sparse).ok, id + " not sparse");
        expect(!find_forbidden_subgraph(g, forb), id + " contains K4 or M7");
        auto o = color_multigraph(g, opt);
        auto* c = std::get_if<Colored>(&o);
        if (!c) {
            std::string msg = outcome_kind(o);
            if (auto* d = std::get_if<Diagnostic>(&o)) msg += " at " + d->step + ": " + d->message;
            expect(false, id + " returned " + msg);
        }
        expect(is_valid(g, c->coloring), id + " invalid coloring");
        if (g.n() <= 16) {
            expect(is_nb_colorable(g), id + " disagrees with exhaustive search");
            ++small;
        }
    }
    for (int k = 1; k <= 5; ++k) {
        Graph g = gen_Gk(k);
        auto o = color_multigraph(g, opt);
        auto* cert = std::get_if<CertLowPotential>(&o);
        expect(cert && cert->rho == -2, "G_" + str(k) + " certificate");
        expect(rho_m(g, cert->W) == -2, "G_" + str(k) + " certificate subset");
    }
    return "500 colored, " + str(small) + " checked exhaustively, G_1..G_5 certified";
}

std::string criterion8()
{
    const Catalog& catalog = resolve_catalog();
    std::mt19937_64 rng(8001);
    SolveOptions opt;
    opt.brute_threshold = 0;
    SparsityParams sparse{Rational(8, 5), Rational(-4, 5)};
    int small = 0;
    for (int i = 0; i < 300; ++i) {
        GenOptions go;
        go.n = 4 + i % 37;
        go.heavy = 0.0;
        go.precolor = 0.0;
        go.cubic_seed = i % 4 != 0;
        Graph g = random_simple(rng, go, catalog);
        std::string id = "instance " + str(i) + " (n=" + str(g.n()) + ")";
        expect(check_sparse(g, sparse).ok, id + " not sparse");
        expect(!find_forbidden_subgraph(g, catalog), id + " contains a catalog member");
        auto o = color_simple(g, catalog, opt);
        auto* c = std::get_if<Colored>(&o);
        if (!c) {
            std::string msg = outcome_kind(o);
            if (auto* d = std::get_if<Diagnostic>(&o)) msg += " at " + d->step + ": " + d->message;
            expect(false, id + " returned " + msg);
        }
        expect(is_valid(g, c->coloring), id + " invalid coloring");
        if (g.n() <= 16) {
            expect(is_nb_colorable(g), id + " disagrees with exhaustive search");
            ++small;
        }
    }
    for (int k = 1; k <= 3; ++k) {
        Graph g = gen_Hk(k);
        auto o = color_simple(g, catalog, opt);
        auto* cert = std::get_if<CertLowPotential>(&o);
        expect(cert && cert->rho == -5, "H_" + str(k) + " certificate");
        expect(rho_s(g, cert->W) == -5, "H_" + str(k) + " certificate subset");
    }
    return "300 colored, " + str(small) + " checked exhaustively, H_1..H_3 certified";
}

// Random tree whose internal vertices have degree 3, with a random leaf partition
// where the outside part has odd size.
std::tuple<Graph, VertexSet, VertexSet> random_split_instance(std::mt19937_64& rng)
{
    int leaves = 2 + static_cast<int>(rng() % 14);
    std::vector<Edge> e{{0, 1}};
    VertexSet leaf{0, 1};
    int n = 2;
    while (static_cast<int>(leaf.size()) < leaves) {
        std::size_t i = rng() % leaf.size();
        int v = leaf[i];
        leaf.erase(leaf.begin() + static_cast<long>(i));
        e.push_back({v, n});
        e.push_back({v, n + 1});
        leaf.push_back(n);
        leaf.push_back(n + 1);
        n += 2;
    }
    std::shuffle(leaf.begin(), leaf.end(), rng);
    int out = 1 + 2 * static_cast<int>(rng() % ((leaf.size() + 1) / 2));
    if (out > static_cast<int>(leaf.size())) out -= 2;
    VertexSet S_out(leaf.begin(), leaf.begin() + out), S_in(leaf.begin() + out, leaf.end());
    std::sort(S_in.begin(), S_in.end());
    std::sort(S_out.begin(), S_out.end());
    return {normalize(n, e), S_in, S_out};
}

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

std::string criterion9()
{
    std::mt19937_64 rng(9001);
    for (int rep = 0; rep < 10000; ++rep) {
        bool multi = rep % 2 == 0;
        Graph g = testsupport::random_graph(rng, 10, 0.35, multi, !multi, true);
        auto kind = multi ? PotentialKind::multigraph : PotentialKind::simple;
        std::uint32_t a = rng() & 1023u, b = rng() & 1023u;
        auto r = [&](std::uint32_t m) { return rho(g, testsupport::bits(m, 10), kind); };
        expect(r(a & b) + r(a | b) <= r(a) + r(b), "submodularity, triple " + str(rep));
    }

    int contractions = 0;
    while (contractions < 100) {
        int n = 5 + static_cast<int>(rng() % 6);
        Graph g = testsupport::random_graph(rng, n, 0.35, true, false, true);
        std::uint32_t wm = 0;
        while (wm == 0 || wm == (1u << n) - 1) wm = rng() & ((1u << n) - 1);
        VertexSet W = testsupport::bits(wm, n);
        auto cW = brute_nb_color(induced_subgraph(g, W).graph);
        if (!cW) continue;
        auto ct = contract_colored_subset(g, W, *cW, ContractMode::multigraph);
        int cn = ct.graph.n();
        for (std::uint32_t mask = 0; mask < (1u << cn); ++mask) {
            Coloring c = testsupport::coloring_from_mask(mask, cn);
            if (!is_valid(ct.graph, c)) continue;
            expect(is_valid(g, ct.lift.lift(c)), "contraction lift " + str(contractions));
        }
        ++contractions;
    }

    for (int t = 0; t < 200; ++t) {
        auto [T, S_in, S_out] = random_split_instance(rng);
        VertexSet S = tree_split(T, S_in, S_out);
        auto in_S = mask_of(T.n(), S);
        for (const auto& e : T.edges()) expect(!(in_S[e.u] && in_S[e.v]), "tree_split independence " + str(t));
        for (int v : S_in) expect(in_S[v], "tree_split S_in " + str(t));
        for (int v : S_out) expect(!in_S[v], "tree_split S_out " + str(t));
        std::vector<int> comp(T.n(), -1);
        for (int s = 0; s < T.n(); ++s) {
            if (in_S[s] || comp[s] >= 0) continue;
            int leaves = 0;
            std::vector<int> stack{s};
            comp[s] = s;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                if (T.neighbour_count(x) <= 1) ++leaves;
                for (int y : T.neighbours(x))
                    if (!in_S[y] && comp[y] < 0) {
                        comp[y] = s;
                        stack.push_back(y);
                    }
            }
            expect(leaves <= 1, "tree_split leaf count " + str(t));
        }
    }

    Catalog cat = build_catalog(8);
    int hosts = 0;
    for (const auto& mem : cat.members)
        for (int e = 0; e < mem.graph.m() && hosts < 50; ++e) {
            Graph host = with_edge_removed(mem.graph, e);
            int s = mem.graph.edge(e).u, t = mem.graph.edge(e).v;
            expect(are_linked(host, s, t, cat).has_value(), "linked witness " + str(hosts));
            enumerate_nb_colorings(host, [&](const Coloring& c) {
                bool both_I = c[s] == Color::I && c[t] == Color::I;
                bool both_F = c[s] == Color::F && c[t] == Color::F;
                expect(both_I || both_F, "linked pair split, host " + str(hosts));
                if (both_F) expect(f_connected(host, c, s, t), "linked pair not F-joined, host " + str(hosts));
                return true;
            });
            ++hosts;
        }
    expect(hosts == 50, "only " + str(hosts) + " linked hosts");
    return "10000 triples, 100 contractions, 200 trees, 50 linked hosts";
}

std::string criterion10()
{
    Catalog cat = build_catalog(12);
    std::vector<std::string> names;
    for (const auto& m : cat.members) names.push_back(m.name);
    std::sort(names.begin(), names.end());
    expect(names == std::vector<std::string>{"j12", "j7", "j8", "k4", "m7", "w5"}, "catalog member names");
    BruteOptions bo;
    bo.threshold = 64;
    for (const auto& m : cat.members) {
        const Graph& g = m.graph;
        int n = g.n();
        expect(is_4_critical(g, bo), m.name + " not 4-critical");
        expect(is_nb_critical(g, bo), m.name + " not nb-critical");
        auto low = min_potential_graph(g, PotentialKind::simple, 1, 0, Extremal::any);
        expect(low.rho >= -4, m.name + " has a subset below -4");
        auto r = rho_s(g, all_vertices(n));
        expect(3 * r <= 10 - n, m.name + " potential bound");
        if (r >= 0) {
            auto proper = min_potential_graph(g, PotentialKind::simple, 1, 1, Extremal::any);
            expect(proper.rho >= 6, m.name + " proper subset bound");
        }
    }
    return "6 members verified";
}

struct Criterion {
    int id;
    double limit_seconds;
    std::function<std::string()> run;
};

}

int main()
{
    std::vector<Criterion> all{
        {1, 1, criterion1},    {2, 1, criterion2},   {3, 120, criterion3}, {4, 300, criterion4},
        {5, 60, criterion5},   {6, 30, criterion6},  {7, 300, criterion7}, {8, 600, criterion8},
        {9, 180, criterion9},  {10, 120, criterion10},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = c.run();
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && secs >= c.limit_seconds) {
            ok = false;
            detail += "; over the time limit";
        }
        failed += !ok;
        std::printf("criterion %2d: %s  (%.2fs of %.0fs)  %s\n", c.id, ok ? "PASS" : "FAIL", secs, c.limit_seconds,
                    detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
