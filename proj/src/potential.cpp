#include "nbcolor/potential.hpp"

#include "nbcolor/min_potential.hpp"

namespace nbc {

void check_kind(const Graph& g, PotentialKind kind)
{
    if (kind == PotentialKind::multigraph && g.has_kind(EdgeKind::gadget))
        throw KindError("multigraph potential is undefined with gadget edges");
    if (kind == PotentialKind::simple && g.has_kind(EdgeKind::multi))
        throw KindError("simple-graph potential is undefined with multi edges");
}

std::int64_t vertex_weight(PotentialKind kind, Tag t)
{
    switch (t) {
    case Tag::none: return kind == PotentialKind::multigraph ? 3 : 8;
    case Tag::fp: return kind == PotentialKind::multigraph ? 1 : 3;
    case Tag::ip: return 0;
    }
    return 0;
}

std::int64_t edge_weight(PotentialKind kind, EdgeKind k)
{
    if (kind == PotentialKind::multigraph) return k == EdgeKind::multi ? 4 : 2;
    return k == EdgeKind::gadget ? 11 : 5;
}

std::int64_t rho(const Graph& g, const VertexSet& W, PotentialKind kind)
{
    check_kind(g, kind);
    auto in = mask_of(g.n(), W);
    std::int64_t total = 0;
    for (int v = 0; v < g.n(); ++v)
        if (in[v]) total += vertex_weight(kind, g.tag(v));
    for (const auto& e : g.edges())
        if (in[e.u] && in[e.v]) total -= edge_weight(kind, e.kind);
    return total;
}

std::int64_t rho_m(const Graph& g, const VertexSet& W)
{
    return rho(g, W, PotentialKind::multigraph);
}

std::int64_t rho_s(const Graph& g, const VertexSet& W)
{
    return rho(g, W, PotentialKind::simple);
}

Rational rho_hyper(const WeightedHypergraph& h, const VertexSet& X)
{
    auto in = mask_of(h.n(), X);
    Rational total;
    for (int v : X) total += h.vertex_weight[v];
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        bool inside = true;
        for (int v : h.edges[i])
            if (!in[v]) {
                inside = false;
                break;
            }
        if (inside) total -= h.edge_weight[i];
    }
    return total;
}

}
