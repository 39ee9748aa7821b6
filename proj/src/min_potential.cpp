#include "nbcolor/min_potential.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace nbc {

Rational WeightedHypergraph::total_edge_weight() const
{
    Rational t;
    for (const auto& w : edge_weight) t += w;
    return t;
}

void WeightedHypergraph::add_edge(VertexSet e, Rational w)
{
    edges.push_back(std::move(e));
    edge_weight.push_back(w);
}

void WeightedHypergraph::validate() const
{
    if (edges.size() != edge_weight.size()) throw std::invalid_argument("hyperedge weight table size mismatch");
    for (const auto& w : vertex_weight)
        if (w < 0) throw std::invalid_argument("negative vertex weight");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].empty()) throw std::invalid_argument("empty hyperedge");
        if (edge_weight[i] < 0) throw std::invalid_argument("negative hyperedge weight");
        for (int v : edges[i])
            if (v < 0 || v >= n()) throw std::invalid_argument("hyperedge vertex out of range");
    }
}

WeightedHypergraph hypergraph_of(const Graph& g, PotentialKind kind)
{
    check_kind(g, kind);
    WeightedHypergraph h;
    for (int v = 0; v < g.n(); ++v) h.vertex_weight.emplace_back(vertex_weight(kind, g.tag(v)));
    for (const auto& e : g.edges()) h.add_edge({e.u, e.v}, Rational(edge_weight(kind, e.kind)));
    return h;
}

namespace {

class Dinic {
public:
    explicit Dinic(int n) : head_(n, -1), level_(n), it_(n) {}

    void add_arc(int a, int b, std::int64_t cap)
    {
        to_.push_back(b); cap_.push_back(cap); next_.push_back(head_[a]); head_[a] = static_cast<int>(to_.size()) - 1;
        to_.push_back(a); cap_.push_back(0); next_.push_back(head_[b]); head_[b] = static_cast<int>(to_.size()) - 1;
    }

    std::int64_t run(int s, int t)
    {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            std::copy(head_.begin(), head_.end(), it_.begin());
            while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
        }
        return flow;
    }

    std::vector<char> reachable(int s) const
    {
        std::vector<char> seen(head_.size(), 0);
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int a = head_[x]; a >= 0; a = next_[a])
                if (cap_[a] > 0 && !seen[to_[a]]) {
                    seen[to_[a]] = 1;
                    stack.push_back(to_[a]);
                }
        }
        return seen;
    }

private:
    bool bfs(int s, int t)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<int> queue{s};
        level_[s] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int x = queue[i];
            for (int a = head_[x]; a >= 0; a = next_[a])
                if (cap_[a] > 0 && level_[to_[a]] < 0) {
                    level_[to_[a]] = level_[x] + 1;
                    queue.push_back(to_[a]);
                }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int x, int t, std::int64_t limit)
    {
        if (x == t) return limit;
        for (int& a = it_[x]; a >= 0; a = next_[a]) {
            int y = to_[a];
            if (cap_[a] <= 0 || level_[y] != level_[x] + 1) continue;
            if (std::int64_t f = dfs(y, t, std::min(limit, cap_[a]))) {
                cap_[a] -= f;
                cap_[a ^ 1] += f;
                return f;
            }
        }
        return 0;
    }

    std::vector<int> head_, level_, it_;
    std::vector<int> to_, next_;
    std::vector<std::int64_t> cap_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("capacity overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("capacity overflow");
    return r;
}

// Integer-weighted instance of the potential problem.
struct IntInstance {
    std::vector<std::int64_t> vw;
    std::vector<VertexSet> edges;
    std::vector<std::int64_t> ew;

    int n() const { return static_cast<int>(vw.size()); }

    std::int64_t rho(const std::vector<char>& in) const
    {
        std::int64_t r = 0;
        for (int v = 0; v < n(); ++v)
            if (in[v]) r += vw[v];
        for (std::size_t i = 0; i < edges.size(); ++i) {
            bool inside = std::all_of(edges[i].begin(), edges[i].end(), [&](int v) { return in[v]; });
            if (inside) r -= ew[i];
        }
        return r;
    }
};

// Minimizes rho over F ⊆ W ⊆ V \ D by one min cut, with the extremal perturbation.
// Returns the sink-side vertex set, i.e. the largest minimizer of the perturbed objective.
std::vector<char> solve_class(const IntInstance& h, const std::vector<char>& deleted, const std::vector<char>& forced,
                              Extremal extremal)
{
    int n = h.n();
    std::int64_t scale = extremal == Extremal::any ? 1 : n + 1;
    std::int64_t delta = extremal == Extremal::largest ? -1 : extremal == Extremal::smallest ? 1 : 0;

    std::vector<int> node(n, -1);
    int next = 2;
    for (int v = 0; v < n; ++v)
        if (!deleted[v]) node[v] = next++;

    std::vector<std::int64_t> cap(n, 0);
    std::vector<char> force = forced;
    std::int64_t vsum = 0;
    for (int v = 0; v < n; ++v) {
        if (deleted[v]) continue;
        cap[v] = checked_add(checked_mul(h.vw[v], scale), delta);
        if (cap[v] < 0) {
            // Including a vertex of negative weight never hurts, so it is always taken.
            force[v] = 1;
            cap[v] = 0;
        }
        vsum = checked_add(vsum, cap[v]);
    }

    std::vector<int> live_edges;
    for (int i = 0; i < static_cast<int>(h.edges.size()); ++i) {
        bool ok = std::none_of(h.edges[i].begin(), h.edges[i].end(), [&](int v) { return deleted[v]; });
        if (ok) live_edges.push_back(i);
    }
    VertexSet forced_list;
    for (int v = 0; v < n; ++v)
        if (force[v] && !deleted[v]) forced_list.push_back(v);

    std::int64_t big = checked_add(vsum, 1);
    std::int64_t finite = vsum;
    for (int i : live_edges) finite = checked_add(finite, checked_mul(h.ew[i], scale));
    if (!forced_list.empty()) finite = checked_add(finite, big);
    std::int64_t inf = checked_add(finite, 1);

    int edge_nodes = static_cast<int>(live_edges.size()) + (forced_list.empty() ? 0 : 1);
    Dinic d(next + edge_nodes);
    for (int v = 0; v < n; ++v)
        if (node[v] >= 0) d.add_arc(0, node[v], cap[v]);
    int en = next;
    for (int i : live_edges) {
        d.add_arc(en, 1, checked_mul(h.ew[i], scale));
        for (int v : h.edges[i]) d.add_arc(node[v], en, inf);
        ++en;
    }
    if (!forced_list.empty()) {
        d.add_arc(en, 1, big);
        for (int v : forced_list) d.add_arc(node[v], en, inf);
    }
    d.run(0, 1);
    auto reach = d.reachable(0);
    std::vector<char> in(n, 0);
    for (int v = 0; v < n; ++v)
        if (node[v] >= 0 && !reach[node[v]]) in[v] = 1;
    return in;
}

struct Candidate {
    std::vector<char> in;
    VertexSet W;
    std::int64_t rho;
};

bool better(const Candidate& a, const Candidate& b, Extremal extremal)
{
    if (a.rho != b.rho) return a.rho < b.rho;
    if (a.W.size() != b.W.size()) {
        if (extremal == Extremal::largest) return a.W.size() > b.W.size();
        if (extremal == Extremal::smallest) return a.W.size() < b.W.size();
    }
    return a.W < b.W;
}

void combos(int n, int k, int start, VertexSet& cur, const std::function<void(const VertexSet&)>& fn)
{
    if (static_cast<int>(cur.size()) == k) {
        fn(cur);
        return;
    }
    for (int v = start; v <= n - (k - static_cast<int>(cur.size())); ++v) {
        cur.push_back(v);
        combos(n, k, v + 1, cur, fn);
        cur.pop_back();
    }
}

void for_each_combination(int n, int k, const std::function<void(const VertexSet&)>& fn)
{
    VertexSet cur;
    combos(n, k, 0, cur, fn);
}

// Every feasible W has a unique canonical pair: Y = its m1 smallest members and
// X = the m2 smallest non-members. Fixing (X, Y) forces every vertex below max(X)
// outside X into W and deletes every vertex below max(Y) outside Y, so the classes
// partition the feasible family and each is a lattice solved by one cut.
std::pair<VertexSet, std::int64_t> int_constrained(const IntInstance& h, int m1, int m2, Extremal extremal)
{
    int n = h.n();
    if (m1 < 0 || m2 < 0 || m1 + m2 > n)
        throw std::invalid_argument("infeasible size bounds: m1=" + std::to_string(m1) + " m2=" + std::to_string(m2) +
                                    " n=" + std::to_string(n));

    std::optional<Candidate> best;
    std::vector<char> deleted(n), forced(n);
    for_each_combination(n, m1, [&](const VertexSet& Y) {
        int a = Y.empty() ? -1 : Y.back();
        std::vector<char> inY(n, 0);
        for (int v : Y) inY[v] = 1;
        for_each_combination(n, m2, [&](const VertexSet& X) {
            int b = X.empty() ? -1 : X.back();
            std::vector<char> inX(n, 0);
            for (int v : X) {
                if (inY[v]) return;
                inX[v] = 1;
            }
            int lim = std::min(a, b);
            for (int v = 0; v < lim; ++v)
                if (!inX[v] && !inY[v]) return;
            for (int v = 0; v < n; ++v) {
                deleted[v] = inX[v] || (v < a && !inY[v]);
                forced[v] = inY[v] || (v < b && !inX[v]);
            }
            Candidate c;
            c.in = solve_class(h, deleted, forced, extremal);
            for (int v = 0; v < n; ++v)
                if (c.in[v]) c.W.push_back(v);
            c.rho = h.rho(c.in);
            if (!best || better(c, *best, extremal)) best = std::move(c);
        });
    });
    return {best->W, best->rho};
}

struct Scaled {
    IntInstance inst;
    std::int64_t denom = 1;
};

Scaled scale_to_integers(const WeightedHypergraph& h)
{
    h.validate();
    std::int64_t l = 1;
    auto lcm_with = [&](const Rational& r) { l = std::lcm(l, r.den()); };
    for (const auto& w : h.vertex_weight) lcm_with(w);
    for (const auto& w : h.edge_weight) lcm_with(w);
    Scaled s;
    s.denom = l;
    for (const auto& w : h.vertex_weight) s.inst.vw.push_back(checked_mul(w.num(), l / w.den()));
    for (const auto& w : h.edge_weight) s.inst.ew.push_back(checked_mul(w.num(), l / w.den()));
    s.inst.edges = h.edges;
    return s;
}

}

FlowNetwork build_aux_network(const WeightedHypergraph& h)
{
    h.validate();
    FlowNetwork net;
    net.vertex_count = h.n();
    net.node_count = 2 + h.n() + h.m();
    Rational finite;
    for (int v = 0; v < h.n(); ++v) {
        net.arcs.push_back({net.source, net.vertex_node(v), h.vertex_weight[v], false});
        finite += h.vertex_weight[v];
    }
    for (int e = 0; e < h.m(); ++e) {
        net.arcs.push_back({net.edge_node(e), net.sink, h.edge_weight[e], false});
        finite += h.edge_weight[e];
    }
    net.infinite_capacity = finite + 1;
    for (int e = 0; e < h.m(); ++e)
        for (int v : h.edges[e]) net.arcs.push_back({net.vertex_node(v), net.edge_node(e), net.infinite_capacity, true});
    return net;
}

FlowResult max_flow(const FlowNetwork& net)
{
    std::int64_t l = 1;
    for (const auto& a : net.arcs) l = std::lcm(l, a.capacity.den());
    l = std::lcm(l, net.infinite_capacity.den());
    Dinic d(net.node_count);
    for (const auto& a : net.arcs) {
        const Rational& c = a.infinite ? net.infinite_capacity : a.capacity;
        if (c < 0) throw std::invalid_argument("negative capacity");
        d.add_arc(a.from, a.to, checked_mul(c.num(), l / c.den()));
    }
    std::int64_t f = d.run(net.source, net.sink);
    FlowResult r;
    r.value = Rational(f, l);
    auto reach = d.reachable(net.source);
    for (int x = 0; x < net.node_count; ++x)
        if (reach[x]) r.source_side.push_back(x);
    return r;
}

MinPotential min_potential_subset(const WeightedHypergraph& h)
{
    FlowNetwork net = build_aux_network(h);
    FlowResult fr = max_flow(net);
    std::vector<char> src(net.node_count, 0);
    for (int x : fr.source_side) src[x] = 1;
    MinPotential out;
    for (int v = 0; v < h.n(); ++v)
        if (!src[net.vertex_node(v)]) out.W.push_back(v);
    out.cut = fr.value;
    out.rho = fr.value - h.total_edge_weight();
    return out;
}

MinPotential min_potential_constrained(const WeightedHypergraph& h, int m1, int m2, Extremal extremal)
{
    Scaled s = scale_to_integers(h);
    auto [W, r] = int_constrained(s.inst, m1, m2, extremal);
    MinPotential out;
    out.W = std::move(W);
    out.rho = Rational(r, s.denom);
    out.cut = out.rho + h.total_edge_weight();
    return out;
}

GraphMinPotential min_potential_graph(const Graph& g, PotentialKind kind, int m1, int m2, Extremal extremal)
{
    check_kind(g, kind);
    IntInstance inst;
    for (int v = 0; v < g.n(); ++v) inst.vw.push_back(vertex_weight(kind, g.tag(v)));
    for (const auto& e : g.edges()) {
        inst.edges.push_back({e.u, e.v});
        inst.ew.push_back(edge_weight(kind, e.kind));
    }
    auto [W, r] = int_constrained(inst, m1, m2, extremal);
    return {std::move(W), r};
}

}
