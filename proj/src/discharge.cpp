#include "nbcolor/discharge.hpp"

#include <algorithm>
#include <stdexcept>

#include "nbcolor/solver.hpp"
#include "nbcolor/tree_coloring.hpp"

namespace nbc {

namespace {

bool has_gadget(const Graph& g, int v)
{
    for (const auto& inc : g.incident(v))
        if (g.edge(inc.edge).kind == EdgeKind::gadget) return true;
    return false;
}

Rational vertex_charge(const Graph& g, int v)
{
    int w = g.tag(v) == Tag::none ? 8 : g.tag(v) == Tag::fp ? 3 : 0;
    return Rational(5 * g.degree_prime(v), 2) - Rational(w);
}

int units(EdgeKind k) { return k == EdgeKind::single ? 1 : 2; }

}

DischargeReport discharge_classify(const Graph& g)
{
    int n = g.n();
    DischargeReport r;
    std::vector<char> in_L(n, 0);
    for (int v = 0; v < n; ++v) {
        int d = g.degree_prime(v);
        bool gad = has_gadget(g, v);
        if (g.tag(v) == Tag::none) {
            if (d == 3 && !gad) {
                r.L.push_back(v);
                in_L[v] = 1;
                continue;
            }
            if (!gad && d == 4)
                r.B4.push_back(v);
            else if (!gad && d == 5)
                r.B5.push_back(v);
            else if (gad && d == 4)
                r.B4_eg.push_back(v);
            else if (gad && d == 5)
                r.B5_eg.push_back(v);
            else
                r.B_star.push_back(v);
        } else if (g.tag(v) == Tag::fp && d == 3) {
            r.B3_f.push_back(v);
        } else {
            r.B_star.push_back(v);
        }
        r.B.push_back(v);
    }

    r.ch.resize(n);
    for (int v = 0; v < n; ++v) r.ch[v] = vertex_charge(g, v);
    r.edge_ch.assign(g.m(), Rational(0));
    for (int e = 0; e < g.m(); ++e)
        if (g.edge(e).kind == EdgeKind::gadget) r.edge_ch[e] = Rational(1);

    r.ch_star = r.ch;
    r.edge_ch_star = r.edge_ch;
    std::vector<char> in_Btilde(n, 0);
    for (int e = 0; e < g.m(); ++e) {
        const Edge& ed = g.edge(e);
        bool bu = !in_L[ed.u], bv = !in_L[ed.v];
        Rational half(units(ed.kind), 2);
        if (bu && bv) {
            r.edge_ch_star[e] += half + half;
            r.ch_star[ed.u] -= half;
            r.ch_star[ed.v] -= half;
            if (ed.kind == EdgeKind::gadget)
                ++r.e2;
            else
                ++r.e1;
            in_Btilde[ed.u] = in_Btilde[ed.v] = 1;
        } else if (bu || bv) {
            int b = bu ? ed.u : ed.v;
            r.ch_star[b] -= half;
            r.ch_star[ed.other(b)] += half;
        }
    }
    for (int v = 0; v < n; ++v)
        if (in_Btilde[v]) r.Btilde.push_back(v);

    std::vector<int> comp(n, -1);
    for (int s : r.L) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(r.trees.size());
        VertexSet tree{s};
        comp[s] = id;
        int edge_ends = 0;
        for (std::size_t i = 0; i < tree.size(); ++i)
            for (const auto& inc : g.incident(tree[i])) {
                if (!in_L[inc.nbr]) continue;
                ++edge_ends;
                if (comp[inc.nbr] < 0) {
                    comp[inc.nbr] = id;
                    tree.push_back(inc.nbr);
                }
            }
        if (edge_ends / 2 != static_cast<int>(tree.size()) - 1) r.L_is_forest = false;
        std::sort(tree.begin(), tree.end());
        Rational sum(0);
        for (int v : tree) sum += r.ch_star[v];
        r.tree_charge.push_back(sum);
        r.trees.push_back(std::move(tree));
    }
    r.ell = static_cast<int>(r.trees.size());

    r.lhs = r.ell + r.e1 + 3 * r.e2 + 2 * static_cast<int>(r.B5.size()) + 2 * static_cast<int>(r.B5_eg.size()) +
            3 * static_cast<int>(r.B3_f.size()) + 4 * static_cast<int>(r.B_star.size());
    r.inequality_holds = r.lhs <= 4;
    r.structured = r.B.size() == r.B4.size() && r.ell >= 1 && r.e1 >= 1 && r.e1 <= 4 - r.ell && r.e2 == 0;
    return r;
}

namespace {

// Colors B from F_B (everything else in B goes to I) and checks the rules inside G[B].
std::optional<Coloring> color_B(const Graph& g, const std::vector<char>& in_B, const std::vector<char>& in_F)
{
    Coloring c(g.n(), Color::F);
    for (int v = 0; v < g.n(); ++v) {
        if (!in_B[v]) continue;
        c[v] = in_F[v] ? Color::F : Color::I;
        if (g.tag(v) == Tag::fp && !in_F[v]) return std::nullopt;
        if (g.tag(v) == Tag::ip && in_F[v]) return std::nullopt;
    }
    VertexSet B;
    for (int v = 0; v < g.n(); ++v)
        if (in_B[v]) B.push_back(v);
    Subgraph sub = induced_subgraph(g, B);
    Coloring cb(static_cast<int>(B.size()));
    for (std::size_t i = 0; i < B.size(); ++i) cb[static_cast<int>(i)] = c[B[i]];
    if (!is_valid(sub.graph, cb)) return std::nullopt;
    return c;
}

std::optional<Coloring> color_trees(const Graph& g, const std::vector<char>& in_B, const Coloring& partial,
                                    int helper, long budget)
{
    Coloring c = partial;
    auto trees = classify_trees(g, in_B, partial);
    std::vector<char> leftover(g.n(), 0);
    bool any_left = false;
    for (const auto& t : trees) {
        if (t.f_odd || t.f_leaf_good) {
            extend_tree(g, in_B, t.vertices, c);
            continue;
        }
        bool done = false;
        if (helper >= 0) {
            bool touches = false;
            for (int v : t.vertices) touches = touches || g.adjacent(v, helper);
            if (touches) {
                VertexSet local = t.vertices;
                local.push_back(helper);
                std::sort(local.begin(), local.end());
                Subgraph sub = induced_subgraph(g, local);
                int h = static_cast<int>(std::find(local.begin(), local.end(), helper) - local.begin());
                try {
                    Coloring lc = helper_extend(sub.graph, h);
                    for (std::size_t i = 0; i < local.size(); ++i)
                        if (local[i] != helper) c[local[i]] = lc[static_cast<int>(i)];
                    done = true;
                } catch (const std::logic_error&) {
                }
            }
        }
        if (!done) {
            for (int v : t.vertices) leftover[v] = 1;
            any_left = true;
        }
    }
    if (any_left) {
        auto r = complete_coloring(g, leftover, c, budget);
        if (!r) return std::nullopt;
        c = *r;
    }
    if (is_valid(g, c)) return c;
    std::vector<char> free(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) free[v] = !in_B[v];
    return complete_coloring(g, free, c, budget);
}

}

Outcome finish_structured(const Graph& g, const DischargeReport& report, const Catalog& catalog,
                          const SolveOptions& opt, SolveTrace* trace)
{
    int n = g.n();
    auto note = [&](const std::string& detail) {
        if (trace) trace->add(0, "10-finish", n, g.m(), detail);
    };
    if (!report.L_is_forest) return Diagnostic{"10-finish", "G[L] is not a forest"};

    std::vector<char> in_B = mask_of(n, report.B);
    std::vector<char> in_Bt = mask_of(n, report.Btilde);
    VertexSet others;
    for (int v : report.B)
        if (!in_Bt[v]) others.push_back(v);

    int bt = static_cast<int>(report.Btilde.size());
    if (bt <= 20) {
        std::vector<unsigned> masks;
        for (unsigned m = 0; m < (1u << bt); ++m) masks.push_back(m);
        std::stable_sort(masks.begin(), masks.end(),
                         [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
        VertexSet helpers{-1};
        helpers.insert(helpers.end(), others.begin(), others.end());
        long total = 0;
        for (int helper : helpers)
            for (unsigned m : masks) {
                if (opt.cancel && opt.cancel->is_cancelled()) throw Cancelled();
                std::vector<char> in_F(n, 0);
                for (int i = 0; i < bt; ++i)
                    if (m & (1u << i)) in_F[report.Btilde[i]] = 1;
                if (helper >= 0) in_F[helper] = 1;
                for (int v : report.B)
                    if (g.tag(v) == Tag::fp) in_F[v] = 1;
                auto partial = color_B(g, in_B, in_F);
                if (!partial) continue;
                if (++total > 4096) break;
                try {
                    if (auto c = color_trees(g, in_B, *partial, helper, opt.completion_budget)) {
                        note("F_B size " + std::to_string(__builtin_popcount(m)) +
                             (helper >= 0 ? " with helper " + std::to_string(helper) : ""));
                        return Colored{*c};
                    }
                } catch (const std::invalid_argument&) {
                }
            }
    }

    if (auto emb = find_forbidden_subgraph(g, catalog)) return CertForbidden{*emb};
    if (n <= opt.brute_threshold) {
        BruteOptions bo;
        bo.threshold = opt.brute_threshold;
        bo.cancel = opt.cancel;
        if (auto c = brute_nb_color(g, bo)) {
            note("exhaustive");
            return Colored{*c};
        }
        return Diagnostic{"10-finish", "graph is not nb-colorable"};
    }
    return Diagnostic{"10-finish", "no F-set in B extends over the trees of G[L]"};
}

}
