#include "nbcolor/tree_coloring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nbc {

namespace {

enum : char { unlabeled = 0, in_label = 1, out_label = 2 };

struct MutableTree {
    std::vector<std::set<int>> adj;
    std::vector<char> alive;
    std::vector<char> label;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    void remove(int v)
    {
        for (int u : adj[v]) adj[u].erase(v);
        adj[v].clear();
        alive[v] = 0;
    }

    VertexSet leaves() const
    {
        VertexSet out;
        for (int v = 0; v < static_cast<int>(adj.size()); ++v)
            if (alive[v] && degree(v) <= 1) out.push_back(v);
        return out;
    }
};

bool independent(const Graph& g, const VertexSet& s)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j])) return false;
    return true;
}

}

VertexSet tree_split(const Graph& T, const VertexSet& S_in, const VertexSet& S_out)
{
    int n = T.n();
    if (n == 0) throw std::invalid_argument("empty tree");
    if (T.m() != n - 1) throw std::invalid_argument("not a tree: wrong edge count");
    {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& inc : T.incident(x))
                if (!seen[inc.nbr]) {
                    seen[inc.nbr] = 1;
                    ++count;
                    stack.push_back(inc.nbr);
                }
        }
        if (count != n) throw std::invalid_argument("not a tree: disconnected");
    }

    MutableTree t;
    t.adj.resize(n);
    t.alive.assign(n, 1);
    t.label.assign(n, unlabeled);
    for (const auto& e : T.edges()) {
        t.adj[e.u].insert(e.v);
        t.adj[e.v].insert(e.u);
    }
    for (int v : S_in) {
        if (v < 0 || v >= n || t.label[v] != unlabeled) throw std::invalid_argument("bad S_in entry");
        t.label[v] = in_label;
    }
    for (int v : S_out) {
        if (v < 0 || v >= n || t.label[v] != unlabeled) throw std::invalid_argument("bad S_out entry");
        t.label[v] = out_label;
    }
    for (int v = 0; v < n; ++v) {
        int d = t.degree(v);
        bool leaf = d <= 1;
        if (!leaf && d != 3) throw std::invalid_argument("non-leaf of degree other than 3");
        if (leaf != (t.label[v] != unlabeled)) throw std::invalid_argument("S_in and S_out must partition the leaves");
    }
    if (S_out.size() % 2 == 0) throw std::invalid_argument("|S_out| must be odd");

    VertexSet S;
    while (true) {
        VertexSet leaves = t.leaves();
        int k = static_cast<int>(leaves.size());
        if (k == 1) break;
        if (k == 2) {
            for (int w : leaves)
                if (t.label[w] == in_label) S.push_back(w);
            break;
        }
        if (k == 3) {
            int outs = 0;
            for (int w : leaves) outs += t.label[w] == out_label;
            if (outs == 3) {
                for (int v = 0; v < n; ++v)
                    if (t.alive[v] && t.degree(v) == 3) S.push_back(v);
            } else {
                for (int w : leaves)
                    if (t.label[w] == in_label) S.push_back(w);
            }
            break;
        }

        int v = -1, w1 = -1, w2 = -1;
        for (int x = 0; x < n && v < 0; ++x) {
            if (!t.alive[x] || t.degree(x) != 3) continue;
            VertexSet lf;
            for (int y : t.adj[x])
                if (t.degree(y) == 1) lf.push_back(y);
            if (lf.size() == 2) {
                v = x;
                w1 = lf[0];
                w2 = lf[1];
            }
        }
        if (v < 0) throw std::logic_error("no vertex with two leaf neighbours");

        char l1 = t.label[w1], l2 = t.label[w2];
        if (l1 == out_label && l2 == out_label) {
            t.remove(w1);
            t.remove(w2);
            t.label[v] = in_label;
        } else if (l1 != l2) {
            if (l1 == in_label) std::swap(w1, w2);
            t.remove(w1);
            t.remove(w2);
            t.label[v] = out_label;
            S.push_back(w2);
        } else {
            int x = -1;
            for (int y : t.adj[v])
                if (y != w1 && y != w2) x = y;
            t.remove(w1);
            t.remove(w2);
            t.remove(v);
            VertexSet ab(t.adj[x].begin(), t.adj[x].end());
            t.remove(x);
            if (ab.size() == 2) {
                t.adj[ab[0]].insert(ab[1]);
                t.adj[ab[1]].insert(ab[0]);
            }
            S.push_back(w1);
            S.push_back(w2);
        }
    }
    std::sort(S.begin(), S.end());
    return S;
}

std::vector<TreeStatus> classify_trees(const Graph& g, const std::vector<char>& in_W, const Coloring& partial)
{
    std::vector<TreeStatus> out;
    std::vector<char> seen(g.n(), 0);
    for (int s = 0; s < g.n(); ++s) {
        if (in_W[s] || seen[s]) continue;
        TreeStatus ts;
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ts.vertices.push_back(x);
            int tdeg = 0, i_nbrs = 0;
            for (const auto& inc : g.incident(x)) {
                int y = inc.nbr;
                if (in_W[y]) {
                    if (partial[y] == Color::F) ++ts.f_edges;
                    else ++i_nbrs;
                    continue;
                }
                ++tdeg;
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
            if (tdeg <= 1 && i_nbrs >= 2) ts.f_leaf_good = true;
        }
        std::sort(ts.vertices.begin(), ts.vertices.end());
        ts.f_odd = ts.f_edges % 2 == 1;
        out.push_back(std::move(ts));
    }
    return out;
}

void extend_tree(const Graph& g, const std::vector<char>& in_W, const VertexSet& tree, Coloring& c)
{
    auto on = mask_of(g.n(), tree);
    for (int u : tree)
        if (g.neighbour_count(u) != 3 || g.degree_prime(u) != 3)
            throw std::invalid_argument("tree vertex without degree 3");

    auto count = [&](int u, int& tdeg, int& fe, int& ie) {
        tdeg = fe = ie = 0;
        for (const auto& inc : g.incident(u)) {
            int y = inc.nbr;
            if (on[y]) ++tdeg;
            else if (!in_W[y]) throw std::invalid_argument("tree touches a vertex outside W");
            else if (c[y] == Color::F) ++fe;
            else ++ie;
        }
    };

    if (tree.size() == 1) {
        int u = tree[0], tdeg, fe, ie;
        count(u, tdeg, fe, ie);
        if (fe % 2 == 0 && ie < 2) throw std::invalid_argument("tree is neither F-odd nor F-leaf-good");
        c[u] = fe == 3 ? Color::I : Color::F;
        return;
    }

    // Local ids 0..|tree|-1 for tree vertices, then one added leaf per F-edge on a non-leaf.
    int t = static_cast<int>(tree.size());
    std::vector<int> local(g.n(), -1);
    for (int i = 0; i < t; ++i) local[tree[i]] = i;
    std::vector<std::set<int>> adj(t);
    for (int i = 0; i < t; ++i)
        for (const auto& inc : g.incident(tree[i]))
            if (on[inc.nbr]) adj[i].insert(local[inc.nbr]);

    VertexSet S_in, S_out, pending;
    std::vector<char> keep(t, 1);
    int total_f = 0;
    std::vector<std::pair<int, int>> extra;  // (tree local id, added leaf)
    int next_id = t;
    for (int i = 0; i < t; ++i) {
        int tdeg, fe, ie;
        count(tree[i], tdeg, fe, ie);
        total_f += fe;
        if (tdeg == 1) {
            if (fe == 2) S_in.push_back(i);
            else if (fe == 1) S_out.push_back(i);
            else pending.push_back(i);
        } else if (tdeg == 2) {
            if (ie == 1) keep[i] = 0;
            else extra.push_back({i, next_id++});
        }
    }
    if (pending.empty() && total_f % 2 == 0) throw std::invalid_argument("tree is neither F-odd nor F-leaf-good");

    for (int i = 0; i < t; ++i) {
        if (keep[i]) continue;
        VertexSet ab(adj[i].begin(), adj[i].end());
        for (int y : ab) adj[y].erase(i);
        adj[i].clear();
        adj[ab[0]].insert(ab[1]);
        adj[ab[1]].insert(ab[0]);
    }
    for (auto [i, w] : extra) S_out.push_back(w);
    for (std::size_t j = 0; j + 1 < pending.size(); ++j) S_in.push_back(pending[j]);
    if (!pending.empty()) {
        if (S_out.size() % 2 == 0) S_out.push_back(pending.back());
        else S_in.push_back(pending.back());
    }

    // Compact the kept vertices and added leaves into a Graph.
    std::vector<int> cid(next_id, -1);
    int m = 0;
    for (int i = 0; i < t; ++i)
        if (keep[i]) cid[i] = m++;
    for (auto [i, w] : extra) cid[w] = m++;
    std::vector<Edge> edges;
    for (int i = 0; i < t; ++i)
        for (int j : adj[i])
            if (i < j) edges.push_back({cid[i], cid[j]});
    for (auto [i, w] : extra) edges.push_back({cid[i], cid[w]});
    Graph tp = normalize(m, edges);
    auto remap = [&](const VertexSet& s) {
        VertexSet r;
        for (int x : s) r.push_back(cid[x]);
        return r;
    };
    VertexSet S = tree_split(tp, remap(S_in), remap(S_out));
    std::vector<char> inS(m, 0);
    for (int x : S) inS[x] = 1;
    std::vector<char> two_I(t, 0);
    for (int i : pending) two_I[i] = 1;
    for (int i = 0; i < t; ++i) c[tree[i]] = (keep[i] && inS[cid[i]] && !two_I[i]) ? Color::I : Color::F;
}

Coloring extend_to_forest(const Graph& g, const std::vector<char>& in_W, const Coloring& partial)
{
    Coloring c = partial;
    for (const auto& ts : classify_trees(g, in_W, partial)) extend_tree(g, in_W, ts.vertices, c);
    return c;
}

Coloring helper_extend(const Graph& g, int v)
{
    int n = g.n();
    if (v < 0 || v >= n) throw std::invalid_argument("helper vertex out of range");
    for (const auto& e : g.edges())
        if (e.kind != EdgeKind::single) throw std::invalid_argument("helper extension needs single edges");
    VertexSet S = g.neighbours(v);
    if (S.size() > 4) throw std::invalid_argument("helper vertex has more than four neighbours");

    // G1 = g - v must be connected with at most one cycle.
    int n1 = n - 1, m1 = g.m() - static_cast<int>(S.size());
    std::vector<int> deg(n, 0);
    std::vector<char> alive(n, 1);
    alive[v] = 0;
    for (const auto& e : g.edges())
        if (e.u != v && e.v != v) {
            ++deg[e.u];
            ++deg[e.v];
        }
    if (n1 > 0) {
        int start = v == 0 ? 1 : 0;
        std::vector<char> seen(n, 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& inc : g.incident(x))
                if (inc.nbr != v && !seen[inc.nbr]) {
                    seen[inc.nbr] = 1;
                    ++cnt;
                    stack.push_back(inc.nbr);
                }
        }
        if (cnt != n1) throw std::invalid_argument("helper extension needs a connected base graph");
    }
    if (m1 > n1) throw std::invalid_argument("base graph has more than one cycle");
    std::vector<char> on_cycle(n, 0);
    bool has_cycle = m1 == n1;
    if (has_cycle) {
        std::vector<char> peeled(n, 0);
        peeled[v] = 1;
        std::vector<int> queue;
        for (int x = 0; x < n; ++x)
            if (x != v && deg[x] <= 1) queue.push_back(x);
        while (!queue.empty()) {
            int x = queue.back();
            queue.pop_back();
            if (peeled[x]) continue;
            peeled[x] = 1;
            for (const auto& inc : g.incident(x))
                if (!peeled[inc.nbr] && --deg[inc.nbr] == 1) queue.push_back(inc.nbr);
        }
        int len = 0;
        for (int x = 0; x < n; ++x)
            if (!peeled[x]) {
                on_cycle[x] = 1;
                ++len;
            }
        if (len == 3) throw std::invalid_argument("the cycle of the base graph is a triangle");
        if (std::none_of(S.begin(), S.end(), [&](int x) { return on_cycle[x]; }))
            throw std::invalid_argument("helper vertex has no neighbour on the cycle");
    }

    int d = static_cast<int>(S.size());
    auto meets_cycle = [&](const VertexSet& s) {
        return !has_cycle || std::any_of(s.begin(), s.end(), [&](int x) { return on_cycle[x]; });
    };
    std::vector<std::pair<int, int>> inner;
    std::vector<int> sdeg(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (g.adjacent(S[i], S[j])) {
                inner.push_back({i, j});
                ++sdeg[i];
                ++sdeg[j];
            }

    std::vector<VertexSet> candidates;
    auto add = [&](VertexSet s) {
        std::sort(s.begin(), s.end());
        candidates.push_back(std::move(s));
    };
    // Large independent subsets first: all of S, then S minus one vertex.
    if (independent(g, S) && meets_cycle(S)) add(S);
    for (int i = 0; i < d; ++i) {
        VertexSet s;
        for (int j = 0; j < d; ++j)
            if (j != i) s.push_back(S[j]);
        if (independent(g, s) && meets_cycle(s)) add(s);
    }
    int e = static_cast<int>(inner.size());
    if (d == 3 && e == 2) {
        for (int i = 0; i < d; ++i)
            if (sdeg[i] == 2) add({S[i]});
    }
    if (d == 4) {
        int center = -1, isolated = -1;
        for (int i = 0; i < d; ++i) {
            if (sdeg[i] == 3 || (e == 2 && sdeg[i] == 2)) center = i;
            if (sdeg[i] == 0) isolated = i;
        }
        if (e == 3 && center >= 0) {
            // K_{1,3}: the leaves unless they miss the cycle, then the center.
            add({S[center]});
        } else if (e == 2 && center >= 0 && isolated >= 0) {
            // P3 + K1: the center together with the isolated vertex.
            add({S[center], S[isolated]});
        }
        // C4, P4 and 2K2: the independent pairs, most cycle vertices first.
        std::vector<VertexSet> pairs;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (!g.adjacent(S[i], S[j])) pairs.push_back({S[i], S[j]});
        std::stable_sort(pairs.begin(), pairs.end(), [&](const VertexSet& a, const VertexSet& b) {
            return on_cycle[a[0]] + on_cycle[a[1]] > on_cycle[b[0]] + on_cycle[b[1]];
        });
        for (auto& p : pairs) add(p);
    }
    if (d <= 1 && !has_cycle) add(S);

    for (const auto& s : candidates) {
        Coloring c(n, Color::F);
        for (int x : s) c[x] = Color::I;
        if (is_valid(g, c)) return c;
    }
    throw std::logic_error("helper extension produced no valid coloring");
}

}
