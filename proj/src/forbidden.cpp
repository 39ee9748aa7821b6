#include "nbcolor/forbidden.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "nbcolor/families.hpp"
#include "nbcolor/min_potential.hpp"

namespace nbc {

namespace {

class Matcher {
public:
    Matcher(const Graph& p, const Graph& h, const CancelToken* cancel) : p_(p), h_(h), cancel_(cancel)
    {
        int nh = h.n();
        hadj_.assign(static_cast<std::size_t>(nh) * nh, 0);
        for (const auto& e : h.edges()) {
            hadj_[static_cast<std::size_t>(e.u) * nh + e.v] = 1;
            hadj_[static_cast<std::size_t>(e.v) * nh + e.u] = 1;
        }
    }

    std::optional<VertexSet> run(const std::vector<std::pair<int, int>>& fixed)
    {
        int np = p_.n(), nh = h_.n();
        if (np > nh || p_.m() > h_.m()) return std::nullopt;
        map_.assign(np, -1);
        used_.assign(nh, 0);
        for (auto [pv, hv] : fixed) {
            if (pv < 0 || pv >= np || hv < 0 || hv >= nh) return std::nullopt;
            if (map_[pv] >= 0 || used_[hv]) return std::nullopt;
            if (h_.neighbour_count(hv) < p_.neighbour_count(pv)) return std::nullopt;
            map_[pv] = hv;
            used_[hv] = 1;
        }
        for (auto [pv, hv] : fixed)
            for (const auto& inc : p_.incident(pv))
                if (map_[inc.nbr] >= 0 && !hadj(hv, map_[inc.nbr])) return std::nullopt;

        // Order the free pattern vertices so each one has as many placed neighbours as possible.
        std::vector<int> score(np, 0);
        std::vector<char> placed(np, 0);
        for (int v = 0; v < np; ++v)
            if (map_[v] >= 0) {
                placed[v] = 1;
                for (const auto& inc : p_.incident(v)) ++score[inc.nbr];
            }
        order_.clear();
        for (int step = 0; step < np; ++step) {
            int best = -1;
            for (int v = 0; v < np; ++v) {
                if (placed[v]) continue;
                if (best < 0 || score[v] > score[best] ||
                    (score[v] == score[best] && p_.neighbour_count(v) > p_.neighbour_count(best)))
                    best = v;
            }
            if (best < 0) break;
            placed[best] = 1;
            order_.push_back(best);
            for (const auto& inc : p_.incident(best)) ++score[inc.nbr];
        }
        if (!extend(0)) return std::nullopt;
        return map_;
    }

private:
    bool hadj(int a, int b) const { return hadj_[static_cast<std::size_t>(a) * h_.n() + b] != 0; }

    bool extend(std::size_t i)
    {
        if (cancel_ && (++ticks_ & 1023) == 0 && cancel_->is_cancelled()) throw Cancelled();
        if (i == order_.size()) return true;
        int pv = order_[i];
        int anchor = -1;
        for (const auto& inc : p_.incident(pv))
            if (map_[inc.nbr] >= 0) {
                anchor = map_[inc.nbr];
                break;
            }
        auto consider = [&](int hv) {
            if (used_[hv] || h_.neighbour_count(hv) < p_.neighbour_count(pv)) return false;
            for (const auto& inc : p_.incident(pv))
                if (map_[inc.nbr] >= 0 && !hadj(hv, map_[inc.nbr])) return false;
            map_[pv] = hv;
            used_[hv] = 1;
            if (extend(i + 1)) return true;
            map_[pv] = -1;
            used_[hv] = 0;
            return false;
        };
        if (anchor >= 0) {
            for (const auto& inc : h_.incident(anchor))
                if (consider(inc.nbr)) return true;
        } else {
            for (int hv = 0; hv < h_.n(); ++hv)
                if (consider(hv)) return true;
        }
        return false;
    }

    const Graph& p_;
    const Graph& h_;
    const CancelToken* cancel_;
    std::vector<char> hadj_;
    VertexSet map_;
    std::vector<char> used_;
    std::vector<int> order_;
    unsigned ticks_ = 0;
};

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex(std::uint64_t x)
{
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << x;
    return os.str();
}

bool isomorphic(const Graph& a, const Graph& b)
{
    return a.n() == b.n() && a.m() == b.m() && find_embedding(a, b).has_value();
}

// Induced cycles of length k through degree-3 vertices, each listed once (smallest vertex first,
// second vertex smaller than the last).
void induced_cycles_of_cubic(const Graph& g, int k, const std::function<bool(const VertexSet&)>& fn)
{
    int n = g.n();
    VertexSet path;
    std::vector<char> on(n, 0);
    std::function<bool(int)> grow = [&](int x) -> bool {
        if (static_cast<int>(path.size()) == k) {
            int first = path.front();
            if (!g.adjacent(x, first) || path[1] > path.back()) return false;
            return fn(path);
        }
        for (const auto& inc : g.incident(x)) {
            int y = inc.nbr;
            if (on[y] || y < path.front() || g.neighbour_count(y) != 3 || g.degree_prime(y) != 3) continue;
            // Induced: y may touch only its predecessor and, when closing, the first vertex.
            bool chord = false;
            for (std::size_t j = 0; j + 1 < path.size(); ++j) {
                int z = path[j];
                bool allowed = (j == 0 && static_cast<int>(path.size()) == k - 1);
                if (g.adjacent(y, z) && !allowed) {
                    chord = true;
                    break;
                }
            }
            if (chord) continue;
            if (static_cast<int>(path.size()) == k - 1 && !g.adjacent(y, path.front())) continue;
            on[y] = 1;
            path.push_back(y);
            if (grow(y)) return true;
            path.pop_back();
            on[y] = 0;
        }
        return false;
    };
    for (int s = 0; s < n; ++s) {
        if (g.neighbour_count(s) != 3 || g.degree_prime(s) != 3) continue;
        path = {s};
        on[s] = 1;
        bool stop = grow(s);
        on[s] = 0;
        if (stop) return;
    }
}

}

std::optional<VertexSet> find_embedding(const Graph& pattern, const Graph& host,
                                        const std::vector<std::pair<int, int>>& fixed, const CancelToken* cancel)
{
    Matcher m(pattern, host, cancel);
    return m.run(fixed);
}

std::optional<Embedding> find_forbidden_subgraph(const Graph& g, const Catalog& catalog)
{
    for (int i = 0; i < static_cast<int>(catalog.members.size()); ++i) {
        const auto& mem = catalog.members[i];
        if (auto map = find_embedding(mem.graph, g)) return Embedding{i, mem.name, *map};
    }
    return std::nullopt;
}

std::optional<LinkWitness> are_linked(const Graph& g, int s, int t, const Catalog& catalog)
{
    if (s == t) throw std::invalid_argument("linked pair must be distinct");
    for (int i = 0; i < static_cast<int>(catalog.members.size()); ++i) {
        const auto& mem = catalog.members[i];
        for (int e = 0; e < mem.graph.m(); ++e) {
            Graph pattern = with_edge_removed(mem.graph, e);
            int v = mem.graph.edge(e).u, w = mem.graph.edge(e).v;
            for (auto [a, b] : {std::pair{s, t}, std::pair{t, s}}) {
                if (auto map = find_embedding(pattern, g, {{v, a}, {w, b}})) return LinkWitness{i, mem.name, v, w, *map};
            }
        }
    }
    return std::nullopt;
}

MemberCheck check_member(const Graph& cand, const Catalog& catalog, const BruteOptions& opt)
{
    MemberCheck r;
    if (cand.has_kind(EdgeKind::multi) || cand.has_kind(EdgeKind::gadget) ||
        static_cast<int>(cand.with_tag(Tag::none).size()) != cand.n()) {
        r.reason = "candidate must be simple, gadget-free and uncolored";
        return r;
    }
    auto pot = min_potential_graph(cand, PotentialKind::simple, 1, 0, Extremal::any);
    r.potential_ok = pot.rho >= -4;

    for (const char* name : {"k4", "w5", "j7", "j12"})
        if (isomorphic(cand, base_graph(name))) {
            r.member = r.base = true;
            r.reason = std::string("isomorphic to base graph ") + name;
            return r;
        }

    if (!is_nb_critical(cand, opt)) {
        r.reason = "not nb-critical";
        return r;
    }
    for (int k : {3, 5}) {
        induced_cycles_of_cubic(cand, k, [&](const VertexSet& cyc) {
            auto in = mask_of(cand.n(), cyc);
            VertexSet z;
            for (int x : cyc) {
                int att = -1;
                for (const auto& inc : cand.incident(x))
                    if (!in[inc.nbr]) att = inc.nbr;
                z.push_back(att);
            }
            VertexSet rest;
            for (int v = 0; v < cand.n(); ++v)
                if (!in[v]) rest.push_back(v);
            auto sub = induced_subgraph(cand, rest);
            std::vector<int> local(cand.n(), -1);
            for (int i = 0; i < static_cast<int>(rest.size()); ++i) local[rest[i]] = i;
            for (int j = 0; j < k; ++j) {
                int a = z[j], b = z[(j + 1) % k];
                if (a == b) continue;
                if (!are_linked(sub.graph, local[a], local[b], catalog)) return false;
            }
            r.member = true;
            r.witness = WitnessCycle{cyc, z};
            return true;
        });
        if (r.member) {
            r.reason = "nb-critical with a linked induced " + std::to_string(k) + "-cycle";
            return r;
        }
    }
    r.reason = "no induced 3- or 5-cycle of degree-3 vertices with linked attachments";
    return r;
}

bool verify_member(const Graph& cand, const Catalog& catalog, const BruteOptions& opt)
{
    auto r = check_member(cand, catalog, opt);
    return r.member && r.potential_ok;
}

Catalog build_catalog(int vertex_bound)
{
    if (vertex_bound > 22) throw std::invalid_argument("catalog vertex bound is at most 22");
    Catalog cat;
    cat.vertex_bound = vertex_bound;
    struct Seed {
        const char* name;
        Provenance prov;
    };
    for (auto seed : {Seed{"k4", Provenance::base}, Seed{"w5", Provenance::base}, Seed{"j7", Provenance::base},
                      Seed{"j12", Provenance::base}, Seed{"m7", Provenance::named}, Seed{"j8", Provenance::named}}) {
        Graph g = base_graph(seed.name);
        if (g.n() > vertex_bound) continue;
        auto chk = check_member(g, cat);
        if (!chk.member || !chk.potential_ok)
            throw std::logic_error(std::string("catalog seed ") + seed.name + " failed verification: " + chk.reason);
        cat.members.push_back({seed.name, std::move(g), seed.prov, chk.witness});
    }
    return cat;
}

bool add_candidate(Catalog& catalog, const std::string& name, const Graph& cand)
{
    if (cand.n() > catalog.vertex_bound) return false;
    auto chk = check_member(cand, catalog);
    if (!chk.member || !chk.potential_ok) return false;
    catalog.members.push_back({name, cand, Provenance::verified_candidate, chk.witness});
    return true;
}

std::string provenance_name(Provenance p)
{
    switch (p) {
    case Provenance::base: return "base";
    case Provenance::named: return "named";
    case Provenance::verified_candidate: return "verified-candidate";
    }
    return "?";
}

void save_catalog(const Catalog& catalog, const std::string& dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::ordered_json manifest;
    manifest["vertex_bound"] = catalog.vertex_bound;
    manifest["members"] = nlohmann::json::array();
    for (const auto& m : catalog.members) {
        std::string text = to_nbg(m.graph);
        std::string file = m.name + ".nbg";
        std::ofstream(fs::path(dir) / file) << text;
        nlohmann::ordered_json j;
        j["name"] = m.name;
        j["file"] = file;
        j["provenance"] = provenance_name(m.provenance);
        j["n"] = m.graph.n();
        j["m"] = m.graph.m();
        j["fnv1a"] = hex(fnv1a(text));
        if (m.witness) j["witness"] = {{"cycle", m.witness->cycle}, {"attachments", m.witness->attachments}};
        manifest["members"].push_back(j);
    }
    std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << "\n";
}

Catalog load_catalog(const std::string& dir)
{
    namespace fs = std::filesystem;
    std::ifstream in(fs::path(dir) / "manifest.json");
    if (!in) throw std::runtime_error("catalog manifest missing in " + dir);
    auto manifest = nlohmann::json::parse(in);
    Catalog cat;
    cat.vertex_bound = manifest.at("vertex_bound").get<int>();
    for (const auto& j : manifest.at("members")) {
        std::string file = j.at("file").get<std::string>();
        std::ifstream gf(fs::path(dir) / file);
        if (!gf) throw std::runtime_error("catalog member file missing: " + file);
        std::stringstream ss;
        ss << gf.rdbuf();
        std::string text = ss.str();
        if (hex(fnv1a(text)) != j.at("fnv1a").get<std::string>())
            throw std::runtime_error("catalog hash mismatch for " + file);
        Graph g = parse_nbg(text);
        std::string name = j.at("name").get<std::string>();
        if (g.n() > cat.vertex_bound) throw std::runtime_error("catalog member above vertex bound: " + name);
        auto chk = check_member(g, cat);
        if (!chk.member || !chk.potential_ok)
            throw std::runtime_error("catalog member " + name + " failed verification: " + chk.reason);
        std::string prov = j.value("provenance", "verified-candidate");
        Provenance p = prov == "base" ? Provenance::base : prov == "named" ? Provenance::named : Provenance::verified_candidate;
        cat.members.push_back({name, std::move(g), p, chk.witness});
    }
    return cat;
}

Catalog resolve_catalog(const std::string& dir)
{
    if (const char* env = std::getenv("NBCOLOR_CATALOG"); env && *env) return load_catalog(env);
    if (!dir.empty()) return load_catalog(dir);
    return build_catalog(12);
}

}
