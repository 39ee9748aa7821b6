#include "nbcolor/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "nbcolor/min_potential.hpp"

namespace nbc {

namespace {

// Maximum-cardinality-search order: each vertex is picked to have as many earlier
// neighbours as possible, so constraints bite early.
std::vector<int> search_order(const Graph& g)
{
    int n = g.n();
    std::vector<int> order, score(n, 0);
    std::vector<char> done(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            if (best < 0 || score[v] > score[best] ||
                (score[v] == score[best] && g.degree_prime(v) > g.degree_prime(best)))
                best = v;
        }
        done[best] = 1;
        order.push_back(best);
        for (const auto& inc : g.incident(best)) ++score[inc.nbr];
    }
    return order;
}

class NbSearch {
public:
    NbSearch(const Graph& g, const BruteOptions& opt) : g_(g), opt_(opt), color_(g.n(), unset), parent_(g.n()), size_(g.n(), 1)
    {
        if (g.n() > opt.threshold)
            throw ThresholdExceeded("brute force limited to " + std::to_string(opt.threshold) + " vertices, got " +
                                    std::to_string(g.n()));
        std::iota(parent_.begin(), parent_.end(), 0);
        order_ = search_order(g);
    }

    long long run(const std::function<bool(const Coloring&)>& fn)
    {
        fn_ = &fn;
        stop_ = false;
        found_ = 0;
        recurse(0);
        return found_;
    }

private:
    static constexpr int unset = -1;
    static constexpr int colI = 0;
    static constexpr int colF = 1;

    int find(int x) const
    {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    void recurse(int depth)
    {
        if (stop_) return;
        if (opt_.cancel && (ticks_++ & 4095) == 0 && opt_.cancel->is_cancelled()) throw Cancelled();
        if (depth == g_.n()) {
            ++found_;
            Coloring c(g_.n());
            for (int v = 0; v < g_.n(); ++v) c[v] = color_[v] == colI ? Color::I : Color::F;
            if (!(*fn_)(c)) stop_ = true;
            return;
        }
        int v = order_[depth];
        Tag t = g_.tag(v);
        if (t != Tag::ip) try_f(v, depth);
        if (stop_) return;
        if (t != Tag::fp) try_i(v, depth);
    }

    void try_i(int v, int depth)
    {
        for (const auto& inc : g_.incident(v))
            if (color_[inc.nbr] == colI) return;
        color_[v] = colI;
        recurse(depth + 1);
        color_[v] = unset;
    }

    void try_f(int v, int depth)
    {
        std::size_t mark = undo_.size();
        bool ok = true;
        for (const auto& inc : g_.incident(v)) {
            if (color_[inc.nbr] != colF) continue;
            if (g_.edge(inc.edge).kind != EdgeKind::single) {
                ok = false;
                break;
            }
            int a = find(v), b = find(inc.nbr);
            if (a == b) {
                ok = false;
                break;
            }
            if (size_[a] < size_[b]) std::swap(a, b);
            parent_[b] = a;
            size_[a] += size_[b];
            undo_.push_back(b);
        }
        if (ok) {
            color_[v] = colF;
            recurse(depth + 1);
            color_[v] = unset;
        }
        while (undo_.size() > mark) {
            int b = undo_.back();
            undo_.pop_back();
            size_[parent_[b]] -= size_[b];
            parent_[b] = b;
        }
    }

    const Graph& g_;
    const BruteOptions& opt_;
    std::vector<int> order_;
    std::vector<int> color_;
    std::vector<int> parent_, size_;
    std::vector<int> undo_;
    const std::function<bool(const Coloring&)>* fn_ = nullptr;
    bool stop_ = false;
    long long found_ = 0;
    unsigned ticks_ = 0;
};

}

std::optional<Coloring> brute_nb_color(const Graph& g, const BruteOptions& opt)
{
    std::optional<Coloring> result;
    NbSearch s(g, opt);
    s.run([&](const Coloring& c) {
        result = c;
        return false;
    });
    if (result && !is_valid(g, *result))
        throw std::logic_error("brute force produced an invalid coloring");
    return result;
}

long long enumerate_nb_colorings(const Graph& g, const std::function<bool(const Coloring&)>& fn, const BruteOptions& opt)
{
    NbSearch s(g, opt);
    return s.run(fn);
}

bool is_nb_colorable(const Graph& g, const BruteOptions& opt)
{
    return brute_nb_color(g, opt).has_value();
}

bool is_nb_critical(const Graph& g, const BruteOptions& opt)
{
    if (g.n() > opt.threshold)
        throw ThresholdExceeded("criticality check limited to " + std::to_string(opt.threshold) + " vertices");
    for (int v = 0; v < g.n(); ++v)
        if (g.neighbour_count(v) == 0) return false;
    if (is_nb_colorable(g, opt)) return false;
    for (int e = 0; e < g.m(); ++e)
        if (!is_nb_colorable(with_edge_demoted(g, e), opt)) return false;
    return true;
}

SparseReport check_sparse(const Graph& g, const SparsityParams& p, SparseMethod method)
{
    int n = g.n();
    SparseReport rep;
    if (n == 0) return rep;
    if (method == SparseMethod::automatic)
        method = n < sparse_enumeration_limit ? SparseMethod::enumerate : SparseMethod::flow;

    if (method == SparseMethod::enumerate) {
        if (n > 22) throw ThresholdExceeded("sparsity enumeration limited to 22 vertices");
        std::vector<std::vector<std::pair<int, int>>> lower(n);
        for (const auto& e : g.edges()) {
            int w = e.kind == EdgeKind::multi ? 2 : 1;
            lower[std::max(e.u, e.v)].push_back({std::min(e.u, e.v), w});
        }
        // e(W) by dynamic programming over the highest vertex of W.
        std::vector<int> ecount(std::size_t{1} << n, 0);
        std::optional<Rational> best;
        std::uint32_t best_mask = 0;
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
            int top = 31 - __builtin_clz(mask);
            std::uint32_t rest = mask & ~(std::uint32_t{1} << top);
            int c = ecount[rest];
            for (auto [u, w] : lower[top])
                if (rest >> u & 1) c += w;
            ecount[mask] = c;
            Rational slack = p.a * Rational(__builtin_popcount(mask)) - Rational(c);
            if (!best || slack < *best || (slack == *best && __builtin_popcount(mask) > __builtin_popcount(best_mask))) {
                best = slack;
                best_mask = mask;
            }
        }
        rep.min_slack = *best;
        if (*best < p.b) {
            rep.ok = false;
            for (int v = 0; v < n; ++v)
                if (best_mask >> v & 1) rep.witness.push_back(v);
        }
        return rep;
    }

    WeightedHypergraph h;
    for (int v = 0; v < n; ++v) h.vertex_weight.push_back(p.a);
    for (const auto& e : g.edges()) h.add_edge({e.u, e.v}, Rational(e.kind == EdgeKind::multi ? 2 : 1));
    if (p.a < 0) throw std::invalid_argument("sparsity coefficient a must be non-negative for the flow method");
    auto mp = min_potential_constrained(h, 1, 0, Extremal::largest);
    rep.min_slack = mp.rho;
    if (mp.rho < p.b) {
        rep.ok = false;
        rep.witness = mp.W;
    }
    return rep;
}

std::optional<std::vector<int>> three_coloring(const Graph& g, const BruteOptions& opt)
{
    if (g.n() > opt.threshold * 2)
        throw ThresholdExceeded("3-coloring search limited to " + std::to_string(opt.threshold * 2) + " vertices");
    int n = g.n();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.neighbour_count(a) > g.neighbour_count(b); });
    std::vector<int> col(n, -1);
    unsigned ticks = 0;
    std::function<bool(int, int)> go = [&](int i, int used) {
        if (opt.cancel && (ticks++ & 4095) == 0 && opt.cancel->is_cancelled()) throw Cancelled();
        if (i == n) return true;
        int v = order[i];
        // Colours are interchangeable, so a fresh colour is only ever the next unused one.
        int limit = std::min(3, used + 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (const auto& inc : g.incident(v))
                if (col[inc.nbr] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            col[v] = c;
            if (go(i + 1, std::max(used, c + 1))) return true;
            col[v] = -1;
        }
        return false;
    };
    if (go(0, 0)) return col;
    return std::nullopt;
}

bool is_4_critical(const Graph& g, const BruteOptions& opt)
{
    for (int v = 0; v < g.n(); ++v)
        if (g.neighbour_count(v) == 0) return false;
    if (three_coloring(g, opt)) return false;
    for (int e = 0; e < g.m(); ++e)
        if (!three_coloring(with_edge_removed(g, e), opt)) return false;
    return true;
}

}
