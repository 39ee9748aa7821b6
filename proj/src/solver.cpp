#include "nbcolor/solver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "nbcolor/cycle_extension.hpp"
#include "nbcolor/families.hpp"
#include "nbcolor/min_potential.hpp"
#include "nbcolor/potential.hpp"

namespace nbc {

void SolveTrace::add(int depth, std::string step, int n, int m, std::string detail)
{
    ++counts[step];
    events.push_back({depth, std::move(step), n, m, std::move(detail)});
}

const char* outcome_kind(const Outcome& o)
{
    switch (o.index()) {
    case 0: return "colored";
    case 1: return "cert-low-potential";
    case 2: return "cert-forbidden";
    default: return "error";
    }
}

std::optional<Coloring> complete_coloring(const Graph& g, const std::vector<char>& free, const Coloring& c,
                                          long budget)
{
    int n = g.n();
    std::vector<char> placed(n, 1);
    for (int v = 0; v < n; ++v)
        if (free[v]) placed[v] = 0;

    std::vector<int> parent(n), sz(n, 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::pair<int, int>> history;  // (attached root, old size of new root)
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (sz[a] < sz[b]) std::swap(a, b);
        history.push_back({b, sz[a]});
        parent[b] = a;
        sz[a] += sz[b];
        return true;
    };
    auto rollback = [&](std::size_t to) {
        while (history.size() > to) {
            auto [b, old] = history.back();
            history.pop_back();
            sz[parent[b]] = old;
            parent[b] = b;
        }
    };

    Coloring out = c;
    for (int v = 0; v < n; ++v) {
        if (!placed[v]) continue;
        if (g.tag(v) == Tag::fp && out[v] != Color::F) return std::nullopt;
        if (g.tag(v) == Tag::ip && out[v] != Color::I) return std::nullopt;
    }
    for (const auto& e : g.edges()) {
        if (!placed[e.u] || !placed[e.v]) continue;
        if (out[e.u] == Color::I && out[e.v] == Color::I) return std::nullopt;
        if (out[e.u] == Color::F && out[e.v] == Color::F) {
            if (e.kind != EdgeKind::single || !unite(e.u, e.v)) return std::nullopt;
        }
    }

    // Free vertices in BFS order so that each one tends to follow a placed neighbour.
    VertexSet order;
    std::vector<char> seen(n, 0);
    std::vector<int> starts;
    for (int v = 0; v < n; ++v)
        if (free[v]) starts.push_back(v);
    std::stable_sort(starts.begin(), starts.end(), [&](int a, int b) {
        auto fixed_nbrs = [&](int x) {
            int k = 0;
            for (const auto& inc : g.incident(x)) k += placed[inc.nbr];
            return k;
        };
        return fixed_nbrs(a) > fixed_nbrs(b);
    });
    for (int s : starts) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            int x = order[head++];
            for (const auto& inc : g.incident(x))
                if (free[inc.nbr] && !seen[inc.nbr]) {
                    seen[inc.nbr] = 1;
                    order.push_back(inc.nbr);
                }
        }
    }

    long nodes = 0;
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == order.size()) return true;
        if (++nodes > budget) return false;
        int v = order[i];
        if (g.tag(v) != Tag::fp) {
            bool ok = true;
            for (const auto& inc : g.incident(v))
                if (placed[inc.nbr] && out[inc.nbr] == Color::I) ok = false;
            if (ok) {
                out[v] = Color::I;
                placed[v] = 1;
                if (place(i + 1)) return true;
                placed[v] = 0;
            }
        }
        if (g.tag(v) != Tag::ip) {
            std::size_t mark = history.size();
            bool ok = true;
            for (const auto& inc : g.incident(v)) {
                if (!placed[inc.nbr] || out[inc.nbr] != Color::F) continue;
                if (g.edge(inc.edge).kind != EdgeKind::single || !unite(v, inc.nbr)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out[v] = Color::F;
                placed[v] = 1;
                if (place(i + 1)) return true;
                placed[v] = 0;
            }
            rollback(mark);
        }
        return false;
    };
    if (!place(0)) return std::nullopt;
    return out;
}

namespace {

struct SolveFailure : std::runtime_error {
    std::string step;
    SolveFailure(std::string s, const std::string& msg) : std::runtime_error(msg), step(std::move(s)) {}
};

struct ProgressError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int size_measure(const Graph& g) { return g.n() + g.edge_multiplicity_total(); }

// Child graph plus the map from parent vertices to child vertices (-1 when removed).
struct Derived {
    Graph graph;
    std::vector<int> origin;

    Coloring pull(const Coloring& child, int n) const
    {
        Coloring c(n, Color::F);
        for (int v = 0; v < n; ++v)
            if (origin[v] >= 0) c[v] = child[origin[v]];
        return c;
    }
};

Tag merge_tags(Tag a, Tag b)
{
    if (a == Tag::none) return b;
    if (b == Tag::none || a == b) return a;
    throw SolveFailure("identify", "merging an Fp vertex with an Ip vertex");
}

// Removes `gone`, merges each pair (a, b) of `merges` into a, and adds `extra` edges.
Derived derive(const Graph& g, const VertexSet& gone, const std::vector<std::pair<int, int>>& merges = {},
               const std::vector<Edge>& extra = {}, const std::vector<std::pair<int, Tag>>& retag = {})
{
    int n = g.n();
    std::vector<int> rep(n);
    std::iota(rep.begin(), rep.end(), 0);
    for (auto [a, b] : merges) rep[b] = a;
    std::vector<char> out = mask_of(n, gone);
    Derived d;
    d.origin.assign(n, -1);
    std::vector<Tag> tags;
    for (int v = 0; v < n; ++v) {
        if (out[v] || rep[v] != v) continue;
        d.origin[v] = static_cast<int>(tags.size());
        tags.push_back(g.tag(v));
    }
    for (int v = 0; v < n; ++v)
        if (!out[v] && rep[v] != v) {
            d.origin[v] = d.origin[rep[v]];
            tags[d.origin[v]] = merge_tags(tags[d.origin[v]], g.tag(v));
        }
    for (auto [v, t] : retag) {
        Tag& cur = tags[d.origin[v]];
        if (cur != Tag::none && cur != t) throw SolveFailure("force", "conflicting precolor");
        cur = t;
    }
    std::vector<Edge> edges;
    auto push = [&](const Edge& e) {
        if (out[e.u] || out[e.v]) return;
        int a = d.origin[e.u], b = d.origin[e.v];
        if (a == b) throw SolveFailure("identify", "identification creates a loop");
        edges.push_back({a, b, e.kind});
    };
    for (const auto& e : g.edges()) push(e);
    for (const auto& e : extra) push(e);
    try {
        d.graph = normalize(static_cast<int>(tags.size()), edges, tags);
    } catch (const GraphError& e) {
        throw SolveFailure("derive", e.what());
    }
    return d;
}

Color opposite(Color c) { return c == Color::I ? Color::F : Color::I; }

// Shortest cycle of G[L] as an ordered vertex list, or empty.
VertexSet shortest_cycle(const Graph& g, const std::vector<char>& in_L)
{
    int n = g.n();
    VertexSet best;
    std::vector<int> dist(n), par(n);
    for (int s = 0; s < n; ++s) {
        if (!in_L[s]) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        par[s] = -1;
        std::vector<int> queue{s};
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            if (!best.empty() && 2 * dist[u] + 1 >= static_cast<int>(best.size())) break;
            for (const auto& inc : g.incident(u)) {
                int w = inc.nbr;
                if (!in_L[w] || w == par[u]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    par[w] = u;
                    queue.push_back(w);
                    continue;
                }
                VertexSet left, right;
                int a = u, b = w;
                while (dist[a] > dist[b]) left.push_back(a), a = par[a];
                while (dist[b] > dist[a]) right.push_back(b), b = par[b];
                while (a != b) {
                    left.push_back(a);
                    right.push_back(b);
                    a = par[a];
                    b = par[b];
                }
                left.push_back(a);
                left.insert(left.end(), right.rbegin(), right.rend());
                if (left.size() >= 3 && (best.empty() || left.size() < best.size())) best = left;
            }
        }
    }
    return best;
}

class Solver {
public:
    Solver(PotentialKind kind, const Catalog* catalog, const SolveOptions& opt, SolveTrace* trace)
        : kind_(kind), catalog_(catalog), opt_(opt), trace_(trace)
    {
        explicit_limit_ = 8;
        if (kind_ == PotentialKind::simple && catalog_)
            for (const auto& m : catalog_->members) explicit_limit_ = std::max(explicit_limit_, m.graph.n() + 1);
    }

    Coloring solve(const Graph& g, int depth)
    {
        if (opt_.cancel && opt_.cancel->is_cancelled()) throw Cancelled();
        int n = g.n();
        if (n == 0) return Coloring(0);
        if (n == 1) return Coloring(1, g.tag(0) == Tag::ip ? Color::I : Color::F);
        if (n <= opt_.brute_threshold) return brute(g, depth, "base-exhaustive");
        try {
            return kind_ == PotentialKind::multigraph ? steps_multi(g, depth) : steps_simple(g, depth);
        } catch (const SolveFailure& f) {
            if (n > explicit_limit_) throw;
            note(depth, "fallback-exhaustive", g, f.step + ": " + f.what());
            return brute(g, depth, nullptr);
        }
    }

private:
    PotentialKind kind_;
    const Catalog* catalog_;
    SolveOptions opt_;
    SolveTrace* trace_;
    int explicit_limit_;

    ContractMode mode() const
    {
        return kind_ == PotentialKind::multigraph ? ContractMode::multigraph : ContractMode::simple;
    }

    void note(int depth, const char* step, const Graph& g, std::string detail = {})
    {
        if (trace_) trace_->add(depth, step, g.n(), g.m(), std::move(detail));
    }

    Coloring brute(const Graph& g, int depth, const char* step)
    {
        if (step) note(depth, step, g);
        BruteOptions bo;
        bo.threshold = std::max(g.n(), opt_.brute_threshold);
        bo.cancel = opt_.cancel;
        auto c = brute_nb_color(g, bo);
        if (!c) throw SolveFailure("exhaustive", "subproblem is not nb-colorable");
        return *c;
    }

    Coloring child(const Graph& parent, const Graph& c, int depth)
    {
        if (size_measure(c) >= size_measure(parent))
            throw ProgressError("reduction did not shrink |V| + |E| (" + std::to_string(size_measure(parent)) +
                                " -> " + std::to_string(size_measure(c)) + ")");
        if (opt_.check_children && c.n() > 0) {
            auto mp = min_potential_graph(c, kind_, 1, 0, Extremal::any);
            if (mp.rho < potential_floor(kind_))
                throw SolveFailure("check", "child potential " + std::to_string(mp.rho) + " below the floor");
        }
        return solve(c, depth + 1);
    }

    // Accepts c when valid; otherwise searches recolorings of `local`.
    Coloring accept(const Graph& g, const Coloring& c, const VertexSet& local, int depth, const char* step)
    {
        if (is_valid(g, c)) return c;
        if (!local.empty()) {
            auto r = complete_coloring(g, mask_of(g.n(), local), c, opt_.completion_budget);
            if (r && is_valid(g, *r)) {
                note(depth, "lift-local", g, step);
                return *r;
            }
        }
        auto v = validate_coloring(g, c);
        throw SolveFailure(step, std::string("lift failed: ") + v->message);
    }

    static VertexSet ball(const Graph& g, const VertexSet& centre, int radius)
    {
        std::vector<int> dist(g.n(), -1);
        VertexSet out = centre;
        for (int v : centre) dist[v] = 0;
        for (std::size_t h = 0; h < out.size(); ++h) {
            int x = out[h];
            if (dist[x] == radius) continue;
            for (int y : g.neighbours(x))
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    out.push_back(y);
                }
        }
        return out;
    }

    template <class F>
    std::optional<Coloring> guarded(const char* step, F&& f)
    {
        try {
            return f();
        } catch (const SolveFailure&) {
            throw;
        } catch (const std::logic_error& e) {
            throw SolveFailure(step, e.what());
        } catch (const GraphError& e) {
            throw SolveFailure(step, e.what());
        }
    }

    Coloring steps_multi(const Graph& g, int depth)
    {
        if (auto c = guarded("1-components", [&] { return components(g, depth); })) return *c;
        if (auto c = guarded("2-reduce", [&] { return reductions(g, depth); })) return *c;
        if (auto c = guarded("3-low-potential", [&] { return low_potential(g, depth); })) return *c;
        if (auto c = guarded("4-potential-one", [&] { return gap(g, depth, 2, 1, 1, "4-potential-one"); }))
            return *c;
        if (auto c = guarded("5-local", [&] { return local_multi(g, depth); })) return *c;
        if (auto c = guarded("6-identify", [&] { return identify_step(g, depth); })) return *c;
        throw SolveFailure("end", "no reduction applies");
    }

    Coloring steps_simple(const Graph& g, int depth)
    {
        if (auto c = guarded("1-components", [&] { return components(g, depth); })) return *c;
        if (auto c = guarded("2-reduce", [&] { return reductions(g, depth); })) return *c;
        if (auto c = guarded("3-low-potential", [&] { return low_potential(g, depth); })) return *c;
        if (auto c = guarded("4-short-cycle", [&] { return cycle_step(g, depth, 3, 4, "4-short-cycle"); }))
            return *c;
        if (auto c = guarded("5-gap", [&] { return gap(g, depth, 2, 2, 3, "5-gap"); })) return *c;
        if (auto c = guarded("6-five-cycle", [&] { return cycle_step(g, depth, 5, 5, "6-five-cycle"); }))
            return *c;
        if (auto c = guarded("7-degree-two", [&] { return degree_two(g, depth); })) return *c;
        if (auto c = guarded("8-cycle", [&] { return cycle_step(g, depth, 3, g.n(), "8-cycle"); })) return *c;
        if (auto c = guarded("9-endgame", [&] { return endgame(g, depth); })) return *c;
        throw SolveFailure("end", "no reduction applies");
    }

    std::optional<Coloring> components(const Graph& g, int depth)
    {
        int n = g.n();
        std::vector<int> comp(n, -1);
        int k = 0;
        for (int s = 0; s < n; ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = k;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (const auto& inc : g.incident(x))
                    if (comp[inc.nbr] < 0) {
                        comp[inc.nbr] = k;
                        stack.push_back(inc.nbr);
                    }
            }
            ++k;
        }
        if (k == 1) return std::nullopt;
        note(depth, "1-components", g, std::to_string(k) + " components");
        Coloring c(n);
        for (int i = 0; i < k; ++i) {
            VertexSet part;
            for (int v = 0; v < n; ++v)
                if (comp[v] == i) part.push_back(v);
            Subgraph sub = induced_subgraph(g, part);
            Coloring cc = child(g, sub.graph, depth);
            for (std::size_t j = 0; j < part.size(); ++j) c[part[j]] = cc[static_cast<int>(j)];
        }
        return accept(g, c, {}, depth, "1-components");
    }

    std::optional<Coloring> reductions(const Graph& g, int depth)
    {
        int n = g.n();
        for (int v = 0; v < n; ++v) {
            if (g.tag(v) != Tag::ip) continue;
            note(depth, "2-ip-vertex", g, std::to_string(v));
            std::vector<std::pair<int, Tag>> retag;
            for (int w : g.neighbours(v)) retag.push_back({w, Tag::fp});
            Derived d = derive(g, {v}, {}, {}, retag);
            Coloring c = d.pull(child(g, d.graph, depth), n);
            c[v] = Color::I;
            return accept(g, c, {}, depth, "2-ip-vertex");
        }
        for (int v = 0; v < n; ++v) {
            if (g.neighbour_count(v) != 1) continue;
            const auto& inc = g.incident(v).front();
            int w = inc.nbr;
            EdgeKind k = g.edge(inc.edge).kind;
            if (k == EdgeKind::single) {
                note(depth, "2-pendant", g, std::to_string(v));
                Derived d = derive(g, {v});
                Coloring c = d.pull(child(g, d.graph, depth), n);
                c[v] = Color::F;
                return accept(g, c, {}, depth, "2-pendant");
            }
            note(depth, "2-heavy-pendant", g, std::to_string(v));
            if (g.tag(v) == Tag::fp) {
                Derived d = derive(g, {v}, {}, {}, {{w, Tag::ip}});
                Coloring c = d.pull(child(g, d.graph, depth), n);
                c[v] = Color::F;
                return accept(g, c, {}, depth, "2-heavy-pendant");
            }
            Derived d = derive(g, {v});
            Coloring c = d.pull(child(g, d.graph, depth), n);
            c[v] = opposite(c[w]);
            return accept(g, c, {}, depth, "2-heavy-pendant");
        }
        for (int v = 0; v < n; ++v) {
            if (g.tag(v) != Tag::none || g.degree(v) != 2 || g.neighbour_count(v) != 2) continue;
            bool singles = true;
            for (const auto& inc : g.incident(v)) singles = singles && g.edge(inc.edge).kind == EdgeKind::single;
            if (!singles) continue;
            note(depth, "2-degree-two", g, std::to_string(v));
            VertexSet nb = g.neighbours(v);
            Derived d = derive(g, {v});
            Coloring c = d.pull(child(g, d.graph, depth), n);
            c[v] = (c[nb[0]] == Color::F && c[nb[1]] == Color::F) ? Color::I : Color::F;
            return accept(g, c, {}, depth, "2-degree-two");
        }
        return std::nullopt;
    }

    std::optional<Coloring> low_potential(const Graph& g, int depth)
    {
        auto mp = min_potential_graph(g, kind_, 2, 1, Extremal::largest);
        if (mp.W.size() < 2 || mp.rho > 0) return std::nullopt;
        note(depth, "3-low-potential", g, "|W|=" + std::to_string(mp.W.size()) + " rho=" + std::to_string(mp.rho));
        Subgraph sub = induced_subgraph(g, mp.W);
        Coloring cw = child(g, sub.graph, depth);
        return contract_and_lift(g, mp.W, cw, depth, "3-low-potential");
    }

    // Small-potential subset with at least two vertices: force a boundary vertex into F,
    // color G[W], contract and recurse.
    std::optional<Coloring> gap(const Graph& g, int depth, int m1, int m2, std::int64_t max_rho, const char* step)
    {
        if (g.n() < m1 + m2) return std::nullopt;
        auto mp = min_potential_graph(g, kind_, m1, m2, Extremal::largest);
        if (mp.W.size() < 2 || mp.rho > max_rho) return std::nullopt;
        note(depth, step, g, "|W|=" + std::to_string(mp.W.size()) + " rho=" + std::to_string(mp.rho));
        std::vector<char> in_W = mask_of(g.n(), mp.W);
        int boundary = -1;
        bool have_fp = false;
        for (int w : mp.W) {
            bool crosses = false;
            for (const auto& inc : g.incident(w)) crosses = crosses || !in_W[inc.nbr];
            if (!crosses) continue;
            if (g.tag(w) == Tag::fp) have_fp = true;
            if (boundary < 0 && g.tag(w) == Tag::none) boundary = w;
        }
        Subgraph sub = induced_subgraph(g, mp.W);
        Graph inner = sub.graph;
        if (!have_fp && boundary >= 0) {
            int pos = static_cast<int>(std::find(mp.W.begin(), mp.W.end(), boundary) - mp.W.begin());
            inner = with_tag(inner, pos, Tag::fp);
        }
        Coloring cw = child(g, inner, depth);
        return contract_and_lift(g, mp.W, cw, depth, step);
    }

    Coloring contract_and_lift(const Graph& g, const VertexSet& W, const Coloring& cw, int depth, const char* step)
    {
        Contraction ct;
        try {
            ct = contract_colored_subset(g, W, cw, mode());
        } catch (const GraphError& e) {
            if (g.n() - static_cast<int>(W.size()) <= 2) return remainder(g, W, depth, step);
            throw SolveFailure(step, e.what());
        }
        if (size_measure(ct.graph) >= size_measure(g)) {
            if (g.n() - static_cast<int>(W.size()) <= 2) return remainder(g, W, depth, step);
            throw SolveFailure(step, "contraction does not shrink the graph");
        }
        Coloring c = ct.lift.lift(child(g, ct.graph, depth));
        return accept(g, c, {}, depth, step);
    }

    // Colors G[W] under every tagging of N(R) compatible with a coloring of R = V - W.
    Coloring remainder(const Graph& g, const VertexSet& W, int depth, const char* step)
    {
        int n = g.n();
        std::vector<char> in_W = mask_of(n, W);
        VertexSet R;
        for (int v = 0; v < n; ++v)
            if (!in_W[v]) R.push_back(v);
        note(depth, "remainder", g, std::string(step) + " |R|=" + std::to_string(R.size()));
        std::vector<int> pos(n, -1);
        for (int i = 0; i < static_cast<int>(W.size()); ++i) pos[W[i]] = i;
        Subgraph sub = induced_subgraph(g, W);
        int r = static_cast<int>(R.size());

        for (unsigned pat = 0; pat < (1u << r); ++pat) {
            Coloring rc(n, Color::F);
            for (int i = 0; i < r; ++i) rc[R[i]] = (pat >> i) & 1 ? Color::I : Color::F;
            bool ok = true;
            for (int v : R) {
                if (g.tag(v) == Tag::fp && rc[v] != Color::F) ok = false;
                if (g.tag(v) == Tag::ip && rc[v] != Color::I) ok = false;
            }
            if (!ok) continue;

            std::vector<Tag> tags(W.size());
            for (std::size_t i = 0; i < W.size(); ++i) tags[i] = g.tag(W[i]);
            auto set_tag = [&](int w, Tag t) {
                Tag& cur = tags[pos[w]];
                if (cur != Tag::none && cur != t) ok = false;
                cur = t;
            };
            std::vector<std::vector<int>> choices;  // single F-edges of each F vertex of R into W
            for (int v : R) {
                for (const auto& inc : g.incident(v)) {
                    int w = inc.nbr;
                    EdgeKind k = g.edge(inc.edge).kind;
                    if (!in_W[w]) {
                        if (rc[v] == Color::I && rc[w] == Color::I) ok = false;
                        if (rc[v] == Color::F && rc[w] == Color::F && k != EdgeKind::single) ok = false;
                        continue;
                    }
                    if (rc[v] == Color::I || k != EdgeKind::single) set_tag(w, rc[v] == Color::I ? Tag::fp : Tag::ip);
                }
                if (rc[v] == Color::F) {
                    std::vector<int> singles;
                    for (const auto& inc : g.incident(v))
                        if (in_W[inc.nbr] && g.edge(inc.edge).kind == EdgeKind::single) singles.push_back(inc.nbr);
                    choices.push_back(singles);
                }
            }
            if (!ok) continue;

            // Each F vertex of R keeps at most one F-neighbour in W; the rest go to I.
            std::vector<int> pick(choices.size(), 0);
            while (true) {
                std::vector<Tag> t2 = tags;
                bool ok2 = true;
                for (std::size_t i = 0; i < choices.size(); ++i)
                    for (int j = 0; j < static_cast<int>(choices[i].size()); ++j) {
                        if (j + 1 == pick[i]) continue;
                        Tag& cur = t2[pos[choices[i][j]]];
                        if (cur == Tag::fp) ok2 = false;
                        cur = Tag::ip;
                    }
                if (ok2) {
                    if (auto c = try_remainder(g, sub, W, t2, rc, depth)) return *c;
                }
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] > static_cast<int>(choices[i].size())) pick[i++] = 0;
                if (i == pick.size()) break;
            }
        }
        throw SolveFailure(step, "no coloring of the remainder extends");
    }

    std::optional<Coloring> try_remainder(const Graph& g, const Subgraph& sub, const VertexSet& W,
                                          const std::vector<Tag>& tags, const Coloring& rc, int depth)
    {
        Graph inner = with_tags(sub.graph, tags);
        if (inner.n() > 0) {
            auto mp = min_potential_graph(inner, kind_, 1, 0, Extremal::any);
            if (mp.rho < potential_floor(kind_)) return std::nullopt;
        }
        try {
            Coloring cw = child(g, inner, depth);
            Coloring c = rc;
            for (std::size_t i = 0; i < W.size(); ++i) c[W[i]] = cw[static_cast<int>(i)];
            if (is_valid(g, c)) return c;
        } catch (const SolveFailure&) {
        }
        return std::nullopt;
    }

    // Multigraph local reductions.
    std::optional<Coloring> local_multi(const Graph& g, int depth)
    {
        int n = g.n();
        for (int v = 0; v < n; ++v) {
            if (g.tag(v) != Tag::fp || g.degree(v) != 2 || g.neighbour_count(v) != 2) continue;
            VertexSet nb = g.neighbours(v);
            note(depth, "5-fp-degree-two", g, std::to_string(v));
            Derived d = derive(g, {v}, {}, {{nb[0], nb[1], EdgeKind::single}});
            Coloring c = d.pull(child(g, d.graph, depth), n);
            c[v] = Color::F;
            return accept(g, c, {v}, depth, "5-fp-degree-two");
        }
        for (int v = 0; v < n; ++v) {
            if (g.degree(v) != 3 || g.neighbour_count(v) != 2) continue;
            int w = -1, x = -1;
            for (const auto& inc : g.incident(v))
                (g.edge(inc.edge).kind == EdgeKind::multi ? x : w) = inc.nbr;
            if (w < 0 || x < 0) continue;
            note(depth, "5-multi", g, std::to_string(v));
            if (g.tag(v) == Tag::fp) {
                Derived d = derive(g, {v}, {}, {}, {{x, Tag::ip}});
                Coloring c = d.pull(child(g, d.graph, depth), n);
                c[v] = Color::F;
                return accept(g, c, {v}, depth, "5-multi");
            }
            Derived d = derive(g, {v}, {}, {}, {{w, Tag::fp}});
            Coloring c = d.pull(child(g, d.graph, depth), n);
            c[v] = opposite(c[x]);
            return accept(g, c, {v}, depth, "5-multi");
        }
        // Triangles through single edges.
        auto single = [&](int a, int b) {
            int e = g.edge_between(a, b);
            return e >= 0 && g.edge(e).kind == EdgeKind::single;
        };
        for (int w = 0; w < n; ++w)
            for (int x : g.neighbours(w)) {
                if (x <= w || !single(w, x)) continue;
                VertexSet apex;
                for (int v : g.neighbours(w))
                    if (v != x && single(v, w) && single(v, x)) apex.push_back(v);
                if (apex.size() < 2) continue;
                int v = apex[0], y = apex[1];
                if (g.adjacent(v, y)) continue;
                note(depth, "5-double-triangle", g, std::to_string(w) + "," + std::to_string(x));
                Derived d = derive(g, {w, x}, {{v, y}});
                Coloring c = d.pull(child(g, d.graph, depth), n);
                if (c[v] == Color::I) {
                    c[w] = c[x] = Color::F;
                } else {
                    c[w] = Color::I;
                    c[x] = Color::F;
                    if (!is_valid(g, c)) std::swap(c[w], c[x]);
                }
                return accept(g, c, {w, x}, depth, "5-double-triangle");
            }
        // Prefer an apex of degree 3; with a degree-4 apex the lift may need a wider repair.
        for (int pass = 0; pass < 2; ++pass)
        for (int v = 0; v < n; ++v)
            for (int w : g.neighbours(v))
                for (int x : g.neighbours(v)) {
                    if (pass == 0 && g.degree(v) != 3) continue;
                    if (w == x || !single(v, w) || !single(v, x) || !single(w, x)) continue;
                    if (g.degree(w) != 3 || g.degree(x) != 3 || g.neighbour_count(x) != 3) continue;
                    int y = -1;
                    for (int u : g.neighbours(x))
                        if (u != v && u != w) y = u;
                    if (y < 0 || g.degree(y) != 3 || g.adjacent(w, y) || g.adjacent(v, y)) continue;
                    note(depth, "5-triangle", g, std::to_string(v) + "," + std::to_string(w) + "," + std::to_string(x));
                    Derived d = derive(g, {v, x}, {{w, y}});
                    Coloring c = d.pull(child(g, d.graph, depth), n);
                    if (c[w] == Color::I) {
                        c[v] = c[x] = Color::F;
                    } else {
                        c[v] = Color::I;
                        c[x] = Color::F;
                        if (!is_valid(g, c)) {
                            c[v] = Color::F;
                            c[x] = Color::I;
                        }
                    }
                    return accept(g, c, ball(g, {v, w, x, y}, 2), depth, "5-triangle");
                }
        return std::nullopt;
    }

    std::optional<Coloring> identify_step(const Graph& g, int depth)
    {
        int n = g.n();
        for (int v = 0; v < n; ++v) {
            if (g.degree(v) != 3 || g.neighbour_count(v) != 3) continue;
            VertexSet nb = g.neighbours(v);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int w = nb[i], x = nb[j], y = nb[3 - i - j];
                    if (g.adjacent(w, x)) continue;
                    if ((g.tag(w) == Tag::fp && g.tag(x) == Tag::ip) || (g.tag(w) == Tag::ip && g.tag(x) == Tag::fp))
                        continue;
                    note(depth, "6-identify", g, std::to_string(v));
                    Derived d = derive(g, {v}, {{w, x}});
                    Coloring c = d.pull(child(g, d.graph, depth), n);
                    c[v] = (c[y] == Color::F && c[w] == Color::F) ? Color::I : Color::F;
                    return accept(g, c, {v}, depth, "6-identify");
                }
        }
        return std::nullopt;
    }

    VertexSet light_vertices(const Graph& g) const
    {
        VertexSet L;
        for (int v = 0; v < g.n(); ++v) {
            if (g.tag(v) != Tag::none || g.degree_prime(v) != 3 || g.neighbour_count(v) != 3) continue;
            bool plain = true;
            for (const auto& inc : g.incident(v)) plain = plain && g.edge(inc.edge).kind == EdgeKind::single;
            if (plain) L.push_back(v);
        }
        return L;
    }

    bool linked_outside(const Graph& g, const VertexSet& cycle, int a, int b)
    {
        std::vector<char> on = mask_of(g.n(), cycle);
        VertexSet W;
        for (int v = 0; v < g.n(); ++v)
            if (!on[v]) W.push_back(v);
        Subgraph sub = induced_subgraph(g, W);
        int pa = static_cast<int>(std::lower_bound(W.begin(), W.end(), a) - W.begin());
        int pb = static_cast<int>(std::lower_bound(W.begin(), W.end(), b) - W.begin());
        return are_linked(sub.graph, pa, pb, *catalog_).has_value();
    }

    // Induced cycle of G[L] with length in [lo, hi].
    std::optional<Coloring> cycle_step(const Graph& g, int depth, int lo, int hi, const char* step)
    {
        int n = g.n();
        VertexSet cycle = shortest_cycle(g, mask_of(n, light_vertices(g)));
        int k = static_cast<int>(cycle.size());
        if (k < lo || k > hi) return std::nullopt;
        VertexSet z = cycle_attachments(g, cycle);
        if (k % 2 == 0) {
            note(depth, step, g, "even length " + std::to_string(k));
            Derived d = derive(g, cycle, {}, {}, {{z[0], Tag::fp}});
            Coloring partial = d.pull(child(g, d.graph, depth), n);
            auto r = extend_over_induced_cycle(g, cycle, partial);
            if (auto* c = std::get_if<Coloring>(&r)) return accept(g, *c, cycle, depth, step);
            throw SolveFailure(step, block_reason_name(std::get<Blocked>(r).reason));
        }
        int pair = -1;
        for (int i = 0; i < k && pair < 0; ++i) {
            int a = z[i], b = z[(i + 1) % k];
            if (a != b && !linked_outside(g, cycle, a, b)) pair = i;
        }
        if (pair < 0 && k == 5)
            for (int i = 0; i < k && pair < 0; ++i)
                if (z[i] != z[(i + 1) % k]) pair = i;
        if (pair < 0) {
            note(depth, "cycle-all-linked", g, std::to_string(k));
            return std::nullopt;
        }
        note(depth, step, g, "odd length " + std::to_string(k));
        CycleReduction red = reduce_cycle_gadget(g, cycle, z[pair], z[(pair + 1) % k]);
        Coloring reduced = child(g, red.graph, depth);
        return accept(g, lift_cycle_reduction(g, red, reduced), cycle, depth, step);
    }

    std::optional<Coloring> degree_two(const Graph& g, int depth)
    {
        int n = g.n();
        for (int v = 0; v < n; ++v) {
            if (g.degree(v) != 2) continue;
            note(depth, "7-degree-two", g, std::to_string(v));
            VertexSet nb = g.neighbours(v);
            std::vector<EdgeKind> kinds;
            for (int w : nb) kinds.push_back(g.edge(g.edge_between(v, w)).kind);
            if (g.tag(v) == Tag::none && nb.size() == 2 && kinds[0] != kinds[1]) {
                int w1 = kinds[0] == EdgeKind::gadget ? nb[0] : nb[1];
                int w2 = w1 == nb[0] ? nb[1] : nb[0];
                try {
                    Derived d = derive(g, {v}, {}, {}, {{w2, Tag::fp}});
                    Coloring c = d.pull(child(g, d.graph, depth), n);
                    c[v] = opposite(c[w1]);
                    return accept(g, c, {v}, depth, "7-degree-two");
                } catch (const SolveFailure&) {
                }
            } else if (g.tag(v) == Tag::fp && nb.size() == 2 && kinds[0] == EdgeKind::single &&
                       kinds[1] == EdgeKind::single) {
                int w1 = nb[0], w2 = nb[1];
                int e = g.edge_between(w1, w2);
                try {
                    if (e >= 0) {
                        Derived d = derive(g, {v});
                        std::vector<Edge> edges = d.graph.edges();
                        int de = d.graph.edge_between(d.origin[w1], d.origin[w2]);
                        edges[de].kind = EdgeKind::gadget;
                        Graph h = normalize(d.graph.n(), edges, d.graph.tags());
                        Coloring c = d.pull(child(g, h, depth), n);
                        c[v] = Color::F;
                        return accept(g, c, {v}, depth, "7-degree-two");
                    }
                    if (!are_linked(derive(g, {v}).graph, w1 - (w1 > v), w2 - (w2 > v),
                                    *catalog_)) {
                        Derived d = derive(g, {v}, {}, {{w1, w2, EdgeKind::single}});
                        Coloring c = d.pull(child(g, d.graph, depth), n);
                        c[v] = Color::F;
                        return accept(g, c, {v}, depth, "7-degree-two");
                    }
                } catch (const SolveFailure&) {
                }
            }
            VertexSet W;
            for (int u = 0; u < n; ++u)
                if (u != v) W.push_back(u);
            return remainder(g, W, depth, "7-degree-two");
        }
        return std::nullopt;
    }

    std::optional<Coloring> endgame(const Graph& g, int depth)
    {
        DischargeReport rep = discharge_classify(g);
        note(depth, "9-endgame", g,
             "l=" + std::to_string(rep.ell) + " e'=" + std::to_string(rep.e1) + " lhs=" + std::to_string(rep.lhs));
        Outcome o = finish_structured(g, rep, *catalog_, opt_, trace_);
        if (auto* c = std::get_if<Colored>(&o)) return accept(g, c->coloring, {}, depth, "10-finish");
        if (auto* d = std::get_if<Diagnostic>(&o)) throw SolveFailure(d->step, d->message);
        throw SolveFailure("10-finish", "forbidden subgraph inside the recursion");
    }
};

Outcome run(Solver& s, const Graph& g)
{
    try {
        Coloring c = s.solve(g, 0);
        if (auto v = validate_coloring(g, c)) return Diagnostic{"validate", v->message};
        return Colored{c};
    } catch (const SolveFailure& f) {
        return Diagnostic{f.step, f.what()};
    } catch (const ProgressError& e) {
        return Diagnostic{"progress", e.what()};
    } catch (const Cancelled&) {
        return Diagnostic{"cancelled", "search cancelled"};
    }
}

std::optional<CertLowPotential> low_potential_certificate(const Graph& g, PotentialKind kind)
{
    if (g.n() == 0) return std::nullopt;
    auto mp = min_potential_graph(g, kind, 1, 0, Extremal::smallest);
    if (mp.rho >= potential_floor(kind)) return std::nullopt;
    return CertLowPotential{mp.W, mp.rho, potential_floor(kind)};
}

}

Outcome color_multigraph(const Graph& g, const SolveOptions& opt, SolveTrace* trace)
{
    if (g.has_kind(EdgeKind::gadget)) return Diagnostic{"input", "multigraph mode does not accept gadgets"};
    if (auto cert = low_potential_certificate(g, PotentialKind::multigraph)) return *cert;
    Catalog base;
    for (const char* name : {"k4", "m7"}) base.members.push_back({name, base_graph(name), Provenance::base, {}});
    if (auto emb = find_forbidden_subgraph(g, base)) return CertForbidden{*emb};
    Solver s(PotentialKind::multigraph, nullptr, opt, trace);
    return run(s, g);
}

Outcome color_simple(const Graph& g, const Catalog& catalog, const SolveOptions& opt, SolveTrace* trace)
{
    if (g.has_kind(EdgeKind::multi)) return Diagnostic{"input", "simple mode does not accept multis"};
    if (auto cert = low_potential_certificate(g, PotentialKind::simple)) return *cert;
    if (auto emb = find_forbidden_subgraph(g, catalog)) return CertForbidden{*emb};
    Solver s(PotentialKind::simple, &catalog, opt, trace);
    return run(s, g);
}

}
