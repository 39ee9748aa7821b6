#include "nbcolor/cycle_extension.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nbc {

namespace {

// F-components of g restricted to vertices outside `skip`.
std::vector<int> f_components(const Graph& g, const Coloring& c, const std::vector<char>& skip)
{
    std::vector<int> comp(g.n(), -1);
    int next = 0;
    for (int s = 0; s < g.n(); ++s) {
        if (skip[s] || c[s] != Color::F || comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& inc : g.incident(x)) {
                int y = inc.nbr;
                if (skip[y] || c[y] != Color::F || comp[y] >= 0) continue;
                comp[y] = next;
                stack.push_back(y);
            }
        }
        ++next;
    }
    return comp;
}

VertexSet rotate(const VertexSet& v, int start)
{
    VertexSet out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[(start + i) % v.size()];
    return out;
}

}

VertexSet cycle_attachments(const Graph& g, const VertexSet& cycle)
{
    int k = static_cast<int>(cycle.size());
    if (k < 3) throw std::invalid_argument("cycle needs at least three vertices");
    auto on = mask_of(g.n(), cycle);
    VertexSet z(k);
    for (int i = 0; i < k; ++i) {
        int x = cycle[i], prev = cycle[(i + k - 1) % k], next = cycle[(i + 1) % k];
        if (g.neighbour_count(x) != 3) throw std::invalid_argument("cycle vertex without exactly three neighbours");
        int outside = -1;
        for (const auto& inc : g.incident(x)) {
            if (g.edge(inc.edge).kind != EdgeKind::single)
                throw std::invalid_argument("cycle vertex incident to a multi or gadget");
            if (inc.nbr == prev || inc.nbr == next) continue;
            if (on[inc.nbr]) throw std::invalid_argument("cycle is not induced");
            outside = inc.nbr;
        }
        if (outside < 0 || !g.adjacent(x, prev) || !g.adjacent(x, next))
            throw std::invalid_argument("vertex list is not a cycle");
        z[i] = outside;
    }
    return z;
}

std::variant<Coloring, Blocked> extend_over_induced_cycle(const Graph& g, const VertexSet& cycle,
                                                          const Coloring& partial)
{
    VertexSet z = cycle_attachments(g, cycle);
    int k = static_cast<int>(cycle.size());
    Coloring out = partial;

    int mixed_at = -1;  // index s with z_s in I and z_{s+1} in F
    for (int i = 0; i < k; ++i)
        if (partial[z[i]] == Color::I && partial[z[(i + 1) % k]] == Color::F) {
            mixed_at = i;
            break;
        }

    if (mixed_at >= 0) {
        // Relabel so that z_k is in I and z_1 is in F, then sweep.
        VertexSet x = rotate(cycle, (mixed_at + 1) % k);
        VertexSet zz = rotate(z, (mixed_at + 1) % k);
        out[x[0]] = Color::I;
        for (int j = 1; j < k; ++j)
            out[x[j]] = (out[x[j - 1]] != Color::I && partial[zz[j]] != Color::I) ? Color::I : Color::F;
        return out;
    }

    if (partial[z[0]] == Color::I) return Blocked{BlockReason::all_attachments_I};

    if (k % 2 == 0) {
        for (int j = 0; j < k; ++j) out[cycle[j]] = j % 2 == 0 ? Color::I : Color::F;
        return out;
    }

    auto comp = f_components(g, partial, mask_of(g.n(), cycle));
    for (int i = 0; i < k; ++i) {
        int a = z[i], b = z[(i + 1) % k];
        if (comp[a] == comp[b]) continue;
        // Relabel so that the split pair sits at positions k-1 and k.
        VertexSet x = rotate(cycle, (i + 2) % k);
        for (int j = 0; j < k; ++j) out[x[j]] = (j % 2 == 0 && j <= k - 3) ? Color::I : Color::F;
        return out;
    }
    return Blocked{BlockReason::odd_single_component};
}

CycleReduction reduce_cycle_gadget(const Graph& g, const VertexSet& cycle, int z1, int z2)
{
    if (z1 == z2) throw std::invalid_argument("z1 and z2 must differ");
    auto on = mask_of(g.n(), cycle);
    if (on[z1] || on[z2]) throw std::invalid_argument("z1 and z2 must lie off the cycle");
    CycleReduction red;
    red.cycle = cycle;
    red.z1 = z1;
    red.z2 = z2;
    for (int v = 0; v < g.n(); ++v)
        if (!on[v]) red.ids.push_back(v);
    Subgraph sub = induced_subgraph(g, red.ids);
    std::vector<int> pos(g.n(), -1);
    for (int i = 0; i < static_cast<int>(red.ids.size()); ++i) pos[red.ids[i]] = i;
    int a = pos[z1], b = pos[z2];
    int e = sub.graph.edge_between(a, b);
    std::vector<Edge> edges = sub.graph.edges();
    if (e >= 0 && edges[e].kind == EdgeKind::gadget) {
        red.variant = 1;
    } else if (e >= 0) {
        edges[e].kind = EdgeKind::gadget;
        red.variant = 2;
    } else {
        edges.push_back({a, b, EdgeKind::single});
        red.variant = 3;
    }
    red.graph = normalize(sub.graph.n(), edges, sub.graph.tags());
    return red;
}

Coloring lift_cycle_reduction(const Graph& g, const CycleReduction& red, const Coloring& reduced)
{
    Coloring partial(g.n(), Color::F);
    for (int i = 0; i < static_cast<int>(red.ids.size()); ++i) partial[red.ids[i]] = reduced[i];
    auto r = extend_over_induced_cycle(g, red.cycle, partial);
    if (auto* c = std::get_if<Coloring>(&r)) return *c;
    throw std::logic_error("cycle extension blocked: " + block_reason_name(std::get<Blocked>(r).reason));
}

std::string block_reason_name(BlockReason r)
{
    return r == BlockReason::all_attachments_I ? "all attachments in I" : "odd cycle with attachments in one F-component";
}

}
