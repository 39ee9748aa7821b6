#include "nbcolor/generate.hpp"

#include <algorithm>

#include "nbcolor/families.hpp"
#include "nbcolor/min_potential.hpp"
#include "nbcolor/potential.hpp"
#include "nbcolor/solver.hpp"

namespace nbc {

namespace {

std::pair<int, int> propose_pair(std::mt19937_64& rng, const Graph& g, double local)
{
    std::uniform_int_distribution<int> pick(0, g.n() - 1);
    int u = pick(rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < local && g.neighbour_count(u) > 0) {
        VertexSet near;
        for (int a : g.neighbours(u))
            for (int b : g.neighbours(a))
                if (b != u) near.push_back(b);
        if (!near.empty()) return {u, near[std::uniform_int_distribution<std::size_t>(0, near.size() - 1)(rng)]};
    }
    int v = pick(rng);
    return {u, v};
}

std::vector<Tag> initial_tags(std::mt19937_64& rng, const GenOptions& opt)
{
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Tag> tags(opt.n, Tag::none);
    for (auto& t : tags)
        if (coin(rng) < opt.precolor) t = Tag::fp;
    return tags;
}

template <class Accept>
Graph grow(std::mt19937_64& rng, const GenOptions& opt, EdgeKind heavy_kind, Accept&& accept)
{
    Graph g = normalize(opt.n, {}, initial_tags(rng, opt));
    if (opt.n < 2) return g;
    int proposals = opt.proposals > 0 ? opt.proposals : 8 * opt.n;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (opt.cubic_seed && opt.n >= 4) {
        // Random pairing of three stubs per vertex (four on vertex 0 when n is odd),
        // retried until it has no loops or repeats; the last attempt is kept partially.
        std::vector<int> stubs;
        for (int v = 0; v < opt.n; ++v)
            for (int k = 0; k < 3; ++k) stubs.push_back(v);
        if (opt.n % 2 == 1) stubs.push_back(0);
        for (int attempt = 0; attempt < 500; ++attempt) {
            std::shuffle(stubs.begin(), stubs.end(), rng);
            std::vector<Edge> edges;
            bool simple = true;
            for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
                int u = std::min(stubs[i], stubs[i + 1]), v = std::max(stubs[i], stubs[i + 1]);
                bool repeat = u == v || std::any_of(edges.begin(), edges.end(),
                                                    [&](const Edge& e) { return e.u == u && e.v == v; });
                if (repeat) {
                    simple = false;
                    continue;
                }
                edges.push_back({u, v, EdgeKind::single});
            }
            if (!simple && attempt + 1 < 500) continue;
            Graph h = normalize(opt.n, edges, g.tags());
            if (accept(h)) {
                g = std::move(h);
                break;
            }
        }
    }
    for (int i = 0; i < proposals; ++i) {
        auto [u, v] = propose_pair(rng, g, opt.local);
        if (u == v) continue;
        bool heavy = coin(rng) < opt.heavy;
        int e = g.edge_between(u, v);
        std::vector<Edge> edges = g.edges();
        if (e < 0) {
            edges.push_back({u, v, heavy ? heavy_kind : EdgeKind::single});
        } else if (heavy_kind == EdgeKind::multi && heavy && g.edge(e).kind == EdgeKind::single) {
            edges[e].kind = EdgeKind::multi;
        } else {
            continue;
        }
        Graph h = normalize(g.n(), edges, g.tags());
        if (accept(h)) g = std::move(h);
    }
    return g;
}

}

Graph random_multigraph(std::mt19937_64& rng, const GenOptions& opt)
{
    Catalog base;
    for (const char* name : {"k4", "m7"}) base.members.push_back({name, base_graph(name), Provenance::base, {}});
    return grow(rng, opt, EdgeKind::multi, [&](const Graph& h) {
        if (min_potential_graph(h, PotentialKind::multigraph, 1, 0, Extremal::any).rho < -1) return false;
        return !find_forbidden_subgraph(h, base);
    });
}

Graph random_simple(std::mt19937_64& rng, const GenOptions& opt, const Catalog& catalog)
{
    return grow(rng, opt, EdgeKind::gadget, [&](const Graph& h) {
        if (min_potential_graph(h, PotentialKind::simple, 1, 0, Extremal::any).rho < -4) return false;
        return !find_forbidden_subgraph(h, catalog);
    });
}

}
