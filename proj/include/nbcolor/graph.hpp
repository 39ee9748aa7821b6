#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbc {

enum class EdgeKind : std::uint8_t { single, multi, gadget };
enum class Tag : std::uint8_t { none, fp, ip };
enum class Color : std::uint8_t { I, F };

using VertexSet = std::vector<int>;

struct Edge {
    int u = 0;
    int v = 0;
    EdgeKind kind = EdgeKind::single;

    int other(int x) const { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
    int nbr;
    int edge;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Loopless multigraph with at most one record per vertex pair. A multi record is
// a parallel pair of edges; a gadget record forces exactly one endpoint into I.
// Values are immutable once built; use normalize() or the with_* helpers.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : tags_(n, Tag::none), adj_(n) {}

    int n() const { return static_cast<int>(tags_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[i]; }
    const std::vector<Incidence>& incident(int v) const { return adj_[v]; }
    Tag tag(int v) const { return tags_[v]; }
    const std::vector<Tag>& tags() const { return tags_; }

    // Index of the record joining u and v, or -1.
    int edge_between(int u, int v) const;
    bool adjacent(int u, int v) const { return edge_between(u, v) >= 0; }

    // d(v): multis count twice, gadgets once.
    int degree(int v) const;
    // d'(v): gadgets count twice, multis count twice.
    int degree_prime(int v) const;
    // Number of distinct neighbours, |N(v)|.
    int neighbour_count(int v) const { return static_cast<int>(adj_[v].size()); }
    VertexSet neighbours(int v) const;

    bool has_kind(EdgeKind k) const;
    // Edge count with multis counted twice.
    int edge_multiplicity_total() const;

    VertexSet with_tag(Tag t) const;

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.tags_ == b.tags_ && a.edges_ == b.edges_;
    }

    friend Graph normalize(int n, const std::vector<Edge>& raw, const std::vector<Tag>& tags);

private:
    std::vector<Tag> tags_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adj_;
};

// Builds a graph from a raw record list: repeated pairs collapse (two singles, or a
// single plus a multi, become one multi). Loops and gadgets sharing a pair with
// any other record are rejected. Records are stored sorted with u < v.
Graph normalize(int n, const std::vector<Edge>& raw, const std::vector<Tag>& tags = {});

// Convenience constructors that re-normalize.
Graph with_tags(const Graph& g, const std::vector<Tag>& tags);
Graph with_tag(const Graph& g, int v, Tag t);
Graph with_edges_added(const Graph& g, const std::vector<Edge>& extra);
Graph with_edge_removed(const Graph& g, int edge_index);
// Removing one parallel edge of a multi leaves a single; other kinds vanish.
Graph with_edge_demoted(const Graph& g, int edge_index);

class Coloring {
public:
    Coloring() = default;
    explicit Coloring(int n, Color c = Color::F) : c_(n, c) {}
    explicit Coloring(std::vector<Color> c) : c_(std::move(c)) {}

    int n() const { return static_cast<int>(c_.size()); }
    Color operator[](int v) const { return c_[v]; }
    Color& operator[](int v) { return c_[v]; }
    VertexSet I() const;
    VertexSet F() const;
    const std::vector<Color>& raw() const { return c_; }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<Color> c_;
};

enum class Rule : std::uint8_t {
    size_mismatch,
    edge_inside_I,
    multi_inside_F,
    gadget_inside_F,
    cycle_in_F,
    precolor_F,
    precolor_I,
};

struct Violation {
    Rule rule;
    VertexSet witness;  // an edge (two endpoints), a cycle, or a single vertex
    std::string message;
};

// First violated rule in the order: I independent, no multi or gadget inside F,
// F acyclic, precolor respected.
std::optional<Violation> validate_coloring(const Graph& g, const Coloring& c);
inline bool is_valid(const Graph& g, const Coloring& c) { return !validate_coloring(g, c); }

struct Subgraph {
    Graph graph;
    VertexSet ids;  // new id -> original id
};

// Dense re-indexing in the order W is given (sorted if the caller sorts).
Subgraph induced_subgraph(const Graph& g, const VertexSet& W);

struct LiftMap {
    int original_n = 0;
    VertexSet outer_vertices;  // contracted id -> original id; -1 for w_i and w_f
    VertexSet inner_subset;
    std::vector<Color> inner_coloring;  // aligned with inner_subset
    int w_i = -1;
    int w_f = -1;

    Coloring lift(const Coloring& contracted) const;
};

enum class ContractMode : std::uint8_t { simple, multigraph };

struct Contraction {
    Graph graph;
    LiftMap lift;
};

// Replaces W by an Ip vertex w_i and an Fp vertex w_f; an outside vertex is joined
// to w_i (w_f) iff it has an edge to an I (F) vertex of W. In multigraph mode the
// new multiplicity is the number of such edges capped at 2.
Contraction contract_colored_subset(const Graph& g, const VertexSet& W, const Coloring& cW,
                                    ContractMode mode);

// Text format "nbg 1".
Graph parse_nbg(const std::string& text);
Graph read_nbg_file(const std::string& path);
std::string to_nbg(const Graph& g);
void write_nbg_file(const Graph& g, const std::string& path);

std::string coloring_json(const Coloring& c);

const char* kind_name(EdgeKind k);
const char* rule_name(Rule r);

// Sorted copy / membership mask helpers shared across modules.
std::vector<char> mask_of(int n, const VertexSet& W);
VertexSet all_vertices(int n);

}
