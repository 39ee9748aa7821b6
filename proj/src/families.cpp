#include "nbcolor/families.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nbc {

namespace {

Graph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs)
{
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) edges.push_back({u, v, EdgeKind::single});
    return normalize(n, edges);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}

Graph gen_Gk(int k)
{
    if (k < 1) throw std::invalid_argument("G_k needs k >= 1");
    int n = 2 * k + 4;
    int a = 0, b = 1, c = 2 * k + 2, d = 2 * k + 3;
    auto vi = [](int i) { return i + 1; };  // v_i, 1-based
    std::vector<Edge> edges{{a, b, EdgeKind::multi}, {c, d, EdgeKind::multi}};
    for (int i = 1; i <= k; ++i) edges.push_back({vi(2 * i - 1), vi(2 * i), EdgeKind::multi});
    edges.push_back({a, vi(1), EdgeKind::single});
    edges.push_back({b, vi(1), EdgeKind::single});
    edges.push_back({vi(2 * k), c, EdgeKind::single});
    edges.push_back({vi(2 * k), d, EdgeKind::single});
    for (int i = 1; i < 2 * k; ++i) edges.push_back({vi(i), vi(i + 1), EdgeKind::single});
    return normalize(n, edges);
}

Graph multiedge_replacement(const Graph& g, int a, int b)
{
    if (a == b || a < 0 || b < 0 || a >= g.n() || b >= g.n())
        throw std::invalid_argument("multiedge replacement needs two distinct vertices");
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) edges.push_back(e);
    int x = g.n(), y = g.n() + 1, z = g.n() + 2;
    for (auto [u, v] : std::vector<std::pair<int, int>>{{a, b}, {a, x}, {a, y}, {x, y}, {x, z}, {y, z}, {z, b}})
        edges.push_back({u, v, EdgeKind::single});
    auto tags = g.tags();
    tags.resize(g.n() + 3, Tag::none);
    return normalize(g.n() + 3, edges, tags);
}

Graph gen_Hk(int k)
{
    Graph g = gen_Gk(k);
    std::vector<std::pair<int, int>> multis;
    for (const auto& e : g.edges())
        if (e.kind == EdgeKind::multi) multis.push_back({e.u, e.v});
    for (auto [u, v] : multis) g = multiedge_replacement(g, u, v);
    return g;
}

const std::vector<std::string>& base_graph_names()
{
    static const std::vector<std::string> names{"k4", "w5", "m7", "j7", "j8", "j12", "k222"};
    return names;
}

Graph base_graph(const std::string& raw_name)
{
    std::string name = lower(raw_name);
    if (name == "k4") return from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    if (name == "w5")
        return from_pairs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 5}, {2, 5}, {3, 5}, {4, 5}});
    if (name == "m7")
        // 5-cycle 0..4; vertex 5 sees 0,1,2 and vertex 6 sees 0,3,4.
        return from_pairs(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 0}, {5, 1}, {5, 2}, {6, 0}, {6, 3}, {6, 4}});
    if (name == "j7")
        // w1..w4 = 0..3, v1..v3 = 4..6.
        return from_pairs(7, {{1, 5}, {5, 2}, {5, 6}, {6, 0}, {0, 4}, {4, 5}, {1, 4}, {4, 6}, {6, 2}, {0, 3}, {1, 3}, {3, 2}});
    if (name == "j8")
        // w1=0, w2=1, z1..z3 = 2..4, v1..v3 = 5..7.
        return from_pairs(8, {{5, 6}, {6, 7}, {7, 5}, {2, 0}, {0, 3}, {3, 1}, {1, 4}, {4, 0}, {0, 1}, {1, 2},
                              {2, 5}, {3, 6}, {4, 7}});
    if (name == "j12")
        // w1=0, w2=1, v1..v4 = 2..5, z1..z6 = 6..11.
        return from_pairs(12, {{0, 1}, {2, 3}, {4, 5}, {6, 10}, {10, 8}, {7, 11}, {11, 9}, {10, 11}, {2, 6}, {6, 3},
                               {3, 7}, {7, 2}, {4, 8}, {8, 5}, {5, 9}, {9, 4}, {2, 0}, {0, 3}, {4, 1}, {1, 5}});
    if (name == "k222") {
        std::vector<std::pair<int, int>> p;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v)
                if (u / 2 != v / 2) p.push_back({u, v});
        return from_pairs(6, p);
    }
    throw std::invalid_argument("unknown base graph: " + raw_name);
}

Graph attach_force_F(const Graph& g, int w)
{
    if (w < 0 || w >= g.n()) throw std::invalid_argument("force target out of range");
    if (g.tag(w) != Tag::none) throw std::invalid_argument("force target is already precolored");
    int y = g.n(), y2 = g.n() + 1;
    auto edges = g.edges();
    edges.push_back({w, y, EdgeKind::single});
    edges.push_back({w, y2, EdgeKind::single});
    edges.push_back({y, y2, EdgeKind::multi});
    auto tags = g.tags();
    tags.resize(g.n() + 2, Tag::none);
    return normalize(g.n() + 2, edges, tags);
}

Graph attach_force_I(const Graph& g, int w)
{
    if (w < 0 || w >= g.n()) throw std::invalid_argument("force target out of range");
    if (g.tag(w) != Tag::none) throw std::invalid_argument("force target is already precolored");
    int z = g.n();
    auto edges = g.edges();
    edges.push_back({w, z, EdgeKind::multi});
    auto tags = g.tags();
    tags.push_back(Tag::fp);
    return normalize(g.n() + 1, edges, tags);
}

}
