#include "nbcolor/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace nbc {

int Graph::edge_between(int u, int v) const
{
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int target = adj_[u].size() <= adj_[v].size() ? v : u;
    for (const auto& inc : a)
        if (inc.nbr == target) return inc.edge;
    return -1;
}

int Graph::degree(int v) const
{
    int d = 0;
    for (const auto& inc : adj_[v]) d += edges_[inc.edge].kind == EdgeKind::multi ? 2 : 1;
    return d;
}

int Graph::degree_prime(int v) const
{
    int d = 0;
    for (const auto& inc : adj_[v]) d += edges_[inc.edge].kind == EdgeKind::single ? 1 : 2;
    return d;
}

VertexSet Graph::neighbours(int v) const
{
    VertexSet out;
    out.reserve(adj_[v].size());
    for (const auto& inc : adj_[v]) out.push_back(inc.nbr);
    std::sort(out.begin(), out.end());
    return out;
}

bool Graph::has_kind(EdgeKind k) const
{
    return std::any_of(edges_.begin(), edges_.end(), [k](const Edge& e) { return e.kind == k; });
}

int Graph::edge_multiplicity_total() const
{
    int t = 0;
    for (const auto& e : edges_) t += e.kind == EdgeKind::multi ? 2 : 1;
    return t;
}

VertexSet Graph::with_tag(Tag t) const
{
    VertexSet out;
    for (int v = 0; v < n(); ++v)
        if (tags_[v] == t) out.push_back(v);
    return out;
}

Graph normalize(int n, const std::vector<Edge>& raw, const std::vector<Tag>& tags)
{
    if (n < 0) throw GraphError("negative vertex count");
    if (!tags.empty() && static_cast<int>(tags.size()) != n)
        throw GraphError("precolor table size does not match vertex count");

    struct Acc {
        int parallel = 0;  // singles count 1, multis count 2
        int gadgets = 0;
        int records = 0;
    };
    std::map<std::pair<int, int>, Acc> pairs;
    for (const auto& e : raw) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw GraphError("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
        if (e.u == e.v) throw GraphError("loop at vertex " + std::to_string(e.u));
        auto& a = pairs[{std::min(e.u, e.v), std::max(e.u, e.v)}];
        ++a.records;
        switch (e.kind) {
        case EdgeKind::single: a.parallel += 1; break;
        case EdgeKind::multi: a.parallel += 2; break;
        case EdgeKind::gadget: a.gadgets += 1; break;
        }
    }

    Graph g(n);
    if (!tags.empty()) g.tags_ = tags;
    for (const auto& [key, a] : pairs) {
        if (a.gadgets > 0 && a.records > 1)
            throw GraphError("gadget shares pair " + std::to_string(key.first) + " " + std::to_string(key.second) +
                             " with another record");
        EdgeKind k = a.gadgets > 0 ? EdgeKind::gadget : (a.parallel >= 2 ? EdgeKind::multi : EdgeKind::single);
        int idx = static_cast<int>(g.edges_.size());
        g.edges_.push_back({key.first, key.second, k});
        g.adj_[key.first].push_back({key.second, idx});
        g.adj_[key.second].push_back({key.first, idx});
    }
    return g;
}

Graph with_tags(const Graph& g, const std::vector<Tag>& tags)
{
    return normalize(g.n(), g.edges(), tags);
}

Graph with_tag(const Graph& g, int v, Tag t)
{
    auto tags = g.tags();
    tags.at(v) = t;
    return normalize(g.n(), g.edges(), tags);
}

Graph with_edges_added(const Graph& g, const std::vector<Edge>& extra)
{
    auto raw = g.edges();
    raw.insert(raw.end(), extra.begin(), extra.end());
    return normalize(g.n(), raw, g.tags());
}

Graph with_edge_removed(const Graph& g, int edge_index)
{
    auto raw = g.edges();
    raw.erase(raw.begin() + edge_index);
    return normalize(g.n(), raw, g.tags());
}

Graph with_edge_demoted(const Graph& g, int edge_index)
{
    auto raw = g.edges();
    if (raw[edge_index].kind == EdgeKind::multi)
        raw[edge_index].kind = EdgeKind::single;
    else
        raw.erase(raw.begin() + edge_index);
    return normalize(g.n(), raw, g.tags());
}

VertexSet Coloring::I() const
{
    VertexSet out;
    for (int v = 0; v < n(); ++v)
        if (c_[v] == Color::I) out.push_back(v);
    return out;
}

VertexSet Coloring::F() const
{
    VertexSet out;
    for (int v = 0; v < n(); ++v)
        if (c_[v] == Color::F) out.push_back(v);
    return out;
}

namespace {

// Path between a and b in the forest spanned by parent pointers of a BFS tree.
VertexSet forest_path(const std::vector<int>& parent, const std::vector<int>& depth, int a, int b)
{
    VertexSet left, right;
    while (depth[a] > depth[b]) { left.push_back(a); a = parent[a]; }
    while (depth[b] > depth[a]) { right.push_back(b); b = parent[b]; }
    while (a != b) {
        left.push_back(a);
        right.push_back(b);
        a = parent[a];
        b = parent[b];
    }
    left.push_back(a);
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

}

std::optional<Violation> validate_coloring(const Graph& g, const Coloring& c)
{
    if (c.n() != g.n())
        return Violation{Rule::size_mismatch, {}, "coloring has " + std::to_string(c.n()) + " entries for " +
                                                       std::to_string(g.n()) + " vertices"};

    for (const auto& e : g.edges())
        if (c[e.u] == Color::I && c[e.v] == Color::I)
            return Violation{Rule::edge_inside_I, {e.u, e.v}, std::string(kind_name(e.kind)) + " edge inside I"};

    for (const auto& e : g.edges()) {
        if (c[e.u] != Color::F || c[e.v] != Color::F) continue;
        if (e.kind == EdgeKind::multi) return Violation{Rule::multi_inside_F, {e.u, e.v}, "2-circuit inside F"};
        if (e.kind == EdgeKind::gadget) return Violation{Rule::gadget_inside_F, {e.u, e.v}, "gadget with both ends in F"};
    }

    // BFS forest over F using single edges; any non-tree edge closes a cycle.
    int n = g.n();
    std::vector<int> parent(n, -1), depth(n, -1), parent_edge(n, -1);
    for (int r = 0; r < n; ++r) {
        if (c[r] != Color::F || depth[r] >= 0) continue;
        depth[r] = 0;
        std::vector<int> queue{r};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (const auto& inc : g.incident(x)) {
                if (c[inc.nbr] != Color::F || g.edge(inc.edge).kind == EdgeKind::gadget) continue;
                if (inc.edge == parent_edge[x]) continue;
                if (depth[inc.nbr] >= 0)
                    return Violation{Rule::cycle_in_F, forest_path(parent, depth, x, inc.nbr), "cycle inside F"};
                depth[inc.nbr] = depth[x] + 1;
                parent[inc.nbr] = x;
                parent_edge[inc.nbr] = inc.edge;
                queue.push_back(inc.nbr);
            }
        }
    }

    for (int v = 0; v < n; ++v) {
        if (g.tag(v) == Tag::fp && c[v] != Color::F)
            return Violation{Rule::precolor_F, {v}, "Fp vertex not in F"};
        if (g.tag(v) == Tag::ip && c[v] != Color::I)
            return Violation{Rule::precolor_I, {v}, "Ip vertex not in I"};
    }
    return std::nullopt;
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& W)
{
    std::vector<int> index(g.n(), -1);
    for (int i = 0; i < static_cast<int>(W.size()); ++i) {
        int v = W[i];
        if (v < 0 || v >= g.n()) throw GraphError("vertex id out of range: " + std::to_string(v));
        if (index[v] >= 0) throw GraphError("duplicate vertex in subset: " + std::to_string(v));
        index[v] = i;
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (index[e.u] >= 0 && index[e.v] >= 0) edges.push_back({index[e.u], index[e.v], e.kind});
    std::vector<Tag> tags(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) tags[i] = g.tag(W[i]);
    return {normalize(static_cast<int>(W.size()), edges, tags), W};
}

Coloring LiftMap::lift(const Coloring& contracted) const
{
    Coloring out(original_n);
    for (int i = 0; i < static_cast<int>(outer_vertices.size()); ++i)
        if (outer_vertices[i] >= 0) out[outer_vertices[i]] = contracted[i];
    for (std::size_t i = 0; i < inner_subset.size(); ++i) out[inner_subset[i]] = inner_coloring[i];
    return out;
}

Contraction contract_colored_subset(const Graph& g, const VertexSet& W, const Coloring& cW, ContractMode mode)
{
    int n = g.n();
    if (W.empty() || static_cast<int>(W.size()) >= n)
        throw GraphError("contraction needs a nonempty proper subset");
    if (cW.n() != static_cast<int>(W.size()))
        throw GraphError("inner coloring does not match subset size");

    std::vector<int> pos(n, -1);
    for (int i = 0; i < static_cast<int>(W.size()); ++i) {
        if (W[i] < 0 || W[i] >= n || pos[W[i]] >= 0) throw GraphError("bad subset for contraction");
        pos[W[i]] = i;
    }

    LiftMap lm;
    lm.original_n = n;
    lm.inner_subset = W;
    lm.inner_coloring = cW.raw();

    std::vector<int> newid(n, -1);
    for (int v = 0; v < n; ++v)
        if (pos[v] < 0) {
            newid[v] = static_cast<int>(lm.outer_vertices.size());
            lm.outer_vertices.push_back(v);
        }
    int outer = static_cast<int>(lm.outer_vertices.size());

    std::vector<int> to_i(outer, 0), to_f(outer, 0);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        bool in_u = pos[e.u] >= 0, in_v = pos[e.v] >= 0;
        if (in_u && in_v) continue;
        if (!in_u && !in_v) {
            edges.push_back({newid[e.u], newid[e.v], e.kind});
            continue;
        }
        int out_v = in_u ? e.v : e.u;
        int in_w = in_u ? e.u : e.v;
        if (e.kind == EdgeKind::gadget)
            throw GraphError("contraction with a gadget crossing into the subset");
        int mult = e.kind == EdgeKind::multi ? 2 : 1;
        if (cW[pos[in_w]] == Color::I)
            to_i[newid[out_v]] += mult;
        else
            to_f[newid[out_v]] += mult;
    }

    if (mode == ContractMode::simple)
        for (int u = 0; u < outer; ++u)
            if (to_i[u] + to_f[u] >= 2)
                throw GraphError("outside vertex " + std::to_string(lm.outer_vertices[u]) +
                                 " has two edges into the contracted subset");

    bool need_i = std::any_of(to_i.begin(), to_i.end(), [](int x) { return x > 0; });
    bool need_f = std::any_of(to_f.begin(), to_f.end(), [](int x) { return x > 0; });
    std::vector<Tag> tags;
    for (int v : lm.outer_vertices) tags.push_back(g.tag(v));
    int next = outer;
    if (need_i) {
        lm.w_i = next++;
        lm.outer_vertices.push_back(-1);
        tags.push_back(Tag::ip);
    }
    if (need_f) {
        lm.w_f = next++;
        lm.outer_vertices.push_back(-1);
        tags.push_back(Tag::fp);
    }
    auto kind_for = [](int count) { return count >= 2 ? EdgeKind::multi : EdgeKind::single; };
    for (int u = 0; u < outer; ++u) {
        if (to_i[u] > 0) edges.push_back({u, lm.w_i, kind_for(to_i[u])});
        if (to_f[u] > 0) edges.push_back({u, lm.w_f, kind_for(to_f[u])});
    }
    return {normalize(next, edges, tags), std::move(lm)};
}

Graph parse_nbg(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int declared = -1, max_id = -1, lineno = 0;
    std::vector<Edge> edges;
    std::vector<std::pair<int, Tag>> tags;
    auto fail = [&](const std::string& why) {
        throw GraphError("nbg line " + std::to_string(lineno) + ": " + why);
    };
    auto read_id = [&](std::istringstream& ls) {
        long long x;
        if (!(ls >> x) || x < 0 || x > 10'000'000) fail("expected a vertex id");
        max_id = std::max<int>(max_id, static_cast<int>(x));
        return static_cast<int>(x);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (op == "nbg") {
            std::string ver;
            if (!(ls >> ver) || ver != "1") fail("unsupported format version");
        } else if (op == "n") {
            long long x;
            if (!(ls >> x) || x < 0 || x > 10'000'000) fail("bad vertex count");
            declared = static_cast<int>(x);
        } else if (op == "v") {
            int v = read_id(ls);
            std::string t;
            if (!(ls >> t) || (t != "f" && t != "i")) fail("precolor must be f or i");
            tags.emplace_back(v, t == "f" ? Tag::fp : Tag::ip);
        } else if (op == "e" || op == "m" || op == "g") {
            int u = read_id(ls);
            int v = read_id(ls);
            EdgeKind k = op == "e" ? EdgeKind::single : op == "m" ? EdgeKind::multi : EdgeKind::gadget;
            edges.push_back({u, v, k});
        } else {
            fail("unknown declaration '" + op + "'");
        }
        std::string rest;
        if (ls >> rest) fail("trailing tokens");
    }
    int n = declared >= 0 ? declared : max_id + 1;
    if (max_id >= n) throw GraphError("vertex id " + std::to_string(max_id) + " exceeds declared count");
    std::vector<Tag> tv(n, Tag::none);
    for (auto [v, t] : tags) {
        if (tv[v] != Tag::none && tv[v] != t) throw GraphError("vertex " + std::to_string(v) + " has two precolors");
        tv[v] = t;
    }
    return normalize(n, edges, tv);
}

Graph read_nbg_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_nbg(ss.str());
}

std::string to_nbg(const Graph& g)
{
    std::ostringstream out;
    out << "nbg 1\nn " << g.n() << "\n";
    for (int v = 0; v < g.n(); ++v) {
        if (g.tag(v) == Tag::fp) out << "v " << v << " f\n";
        if (g.tag(v) == Tag::ip) out << "v " << v << " i\n";
    }
    for (const auto& e : g.edges()) {
        char op = e.kind == EdgeKind::single ? 'e' : e.kind == EdgeKind::multi ? 'm' : 'g';
        out << op << ' ' << e.u << ' ' << e.v << '\n';
    }
    return out.str();
}

void write_nbg_file(const Graph& g, const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << to_nbg(g);
}

std::string coloring_json(const Coloring& c)
{
    nlohmann::ordered_json j;
    j["status"] = "colored";
    j["I"] = c.I();
    j["F"] = c.F();
    return j.dump();
}

const char* kind_name(EdgeKind k)
{
    switch (k) {
    case EdgeKind::single: return "single";
    case EdgeKind::multi: return "multi";
    case EdgeKind::gadget: return "gadget";
    }
    return "?";
}

const char* rule_name(Rule r)
{
    switch (r) {
    case Rule::size_mismatch: return "size-mismatch";
    case Rule::edge_inside_I: return "edge-inside-I";
    case Rule::multi_inside_F: return "multi-inside-F";
    case Rule::gadget_inside_F: return "gadget-inside-F";
    case Rule::cycle_in_F: return "cycle-in-F";
    case Rule::precolor_F: return "precolor-F";
    case Rule::precolor_I: return "precolor-I";
    }
    return "?";
}

std::vector<char> mask_of(int n, const VertexSet& W)
{
    std::vector<char> m(n, 0);
    for (int v : W) m.at(v) = 1;
    return m;
}

VertexSet all_vertices(int n)
{
    VertexSet v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}
