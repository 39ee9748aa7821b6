#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "nbcolor/graph.hpp"
#include "nbcolor/min_potential.hpp"

namespace testsupport {

using nbc::Color;
using nbc::Coloring;
using nbc::Edge;
using nbc::EdgeKind;
using nbc::Graph;
using nbc::Tag;
using nbc::VertexSet;

inline VertexSet bits(std::uint32_t mask, int n)
{
    VertexSet W;
    for (int v = 0; v < n; ++v)
        if (mask >> v & 1u) W.push_back(v);
    return W;
}

// Random graph; the flags choose whether multis, gadgets and precolors may appear.
inline Graph random_graph(std::mt19937_64& rng, int n, double p, bool multis, bool gadgets, bool tags)
{
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (U(rng) >= p) continue;
            EdgeKind k = EdgeKind::single;
            double r = U(rng);
            if (multis && r < 0.2) k = EdgeKind::multi;
            else if (gadgets && r > 0.85) k = EdgeKind::gadget;
            edges.push_back({u, v, k});
        }
    std::vector<Tag> t(n, Tag::none);
    if (tags)
        for (auto& x : t) {
            double r = U(rng);
            x = r < 0.12 ? Tag::fp : r < 0.2 ? Tag::ip : Tag::none;
        }
    return nbc::normalize(n, edges, t);
}

inline nbc::WeightedHypergraph random_hypergraph(std::mt19937_64& rng, int n, int m, int maxw)
{
    std::uniform_int_distribution<int> W(1, maxw), V(0, n - 1), S(1, std::min(n, 4));
    nbc::WeightedHypergraph h;
    for (int i = 0; i < n; ++i) h.vertex_weight.push_back(W(rng));
    for (int j = 0; j < m; ++j) {
        int k = S(rng);
        VertexSet e;
        while (static_cast<int>(e.size()) < k) {
            int v = V(rng);
            if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
        }
        std::sort(e.begin(), e.end());
        h.add_edge(e, W(rng));
    }
    return h;
}

struct EnumResult {
    std::int64_t rho = 0;
    VertexSet W;
    bool feasible = false;
};

// Exhaustive minimum over subsets with m1 <= |W| <= n - m2, integer weights only.
// mode: 0 any (smallest size wins, only rho compared by callers), 1 largest, 2 smallest.
inline EnumResult enumerate_min(const nbc::WeightedHypergraph& h, int m1, int m2, int mode)
{
    int n = h.n();
    std::vector<std::uint32_t> emask;
    for (const auto& e : h.edges) {
        std::uint32_t mk = 0;
        for (int v : e) mk |= 1u << v;
        emask.push_back(mk);
    }
    EnumResult best;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int sz = __builtin_popcount(mask);
        if (sz < m1 || sz > n - m2) continue;
        std::int64_t r = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1u) r += h.vertex_weight[v].num();
        for (int j = 0; j < h.m(); ++j)
            if ((emask[j] & mask) == emask[j]) r -= h.edge_weight[j].num();
        VertexSet W = bits(mask, n);
        bool take = false;
        if (!best.feasible || r < best.rho) take = true;
        else if (r == best.rho) {
            int bs = static_cast<int>(best.W.size());
            if (mode == 1 && sz != bs) take = sz > bs;
            else if (mode == 2 && sz != bs) take = sz < bs;
            else if (mode != 0 && sz == bs) take = W < best.W;
        }
        if (take) best = {r, W, true};
    }
    return best;
}

// Independent validity check: expand every multi into two parallel edges and every
// gadget into the five-vertex replacement, then search over the colors of the new
// vertices for a plain independent-set-plus-forest partition.
inline bool reference_valid(const Graph& g, const Coloring& c)
{
    int n = g.n();
    for (int v = 0; v < n; ++v) {
        if (g.tag(v) == Tag::fp && c[v] != Color::F) return false;
        if (g.tag(v) == Tag::ip && c[v] != Color::I) return false;
    }
    std::vector<std::pair<int, int>> plain;
    std::vector<std::pair<int, int>> gadgets;
    for (const auto& e : g.edges()) {
        if (e.kind == EdgeKind::single) plain.push_back({e.u, e.v});
        if (e.kind == EdgeKind::multi) {
            plain.push_back({e.u, e.v});
            plain.push_back({e.u, e.v});
        }
        if (e.kind == EdgeKind::gadget) gadgets.push_back({e.u, e.v});
    }
    int extra = 3 * static_cast<int>(gadgets.size());
    int total = n + extra;
    std::vector<std::pair<int, int>> all = plain;
    for (std::size_t i = 0; i < gadgets.size(); ++i) {
        int a = gadgets[i].first, b = gadgets[i].second;
        int x = n + 3 * static_cast<int>(i), y = x + 1, z = x + 2;
        for (auto pr : std::vector<std::pair<int, int>>{{a, b}, {a, x}, {a, y}, {x, y}, {x, z}, {y, z}, {z, b}})
            all.push_back(pr);
    }
    for (std::uint32_t mask = 0; mask < (1u << extra); ++mask) {
        std::vector<int> col(total);
        for (int v = 0; v < n; ++v) col[v] = c[v] == Color::I ? 0 : 1;
        for (int j = 0; j < extra; ++j) col[n + j] = mask >> j & 1u;
        std::vector<int> par(total);
        std::iota(par.begin(), par.end(), 0);
        auto find = [&](int x) {
            while (par[x] != x) x = par[x] = par[par[x]];
            return x;
        };
        bool ok = true;
        for (auto [u, v] : all) {
            if (col[u] == 0 && col[v] == 0) { ok = false; break; }
            if (col[u] == 1 && col[v] == 1) {
                int a = find(u), b = find(v);
                if (a == b) { ok = false; break; }
                par[a] = b;
            }
        }
        if (ok) return true;
    }
    return false;
}

inline Coloring coloring_from_mask(std::uint32_t mask, int n)
{
    Coloring c(n);
    for (int v = 0; v < n; ++v) c[v] = (mask >> v & 1u) ? Color::I : Color::F;
    return c;
}

// Plain 2^n nb-colorability, used to cross-check the pruned search.
inline bool naive_colorable(const Graph& g)
{
    for (std::uint32_t mask = 0; mask < (1u << g.n()); ++mask)
        if (nbc::is_valid(g, coloring_from_mask(mask, g.n()))) return true;
    return false;
}

}
