#pragma once

#include <cstdint>
#include <vector>

#include "nbcolor/graph.hpp"
#include "nbcolor/potential.hpp"
#include "nbcolor/rational.hpp"

namespace nbc {

struct WeightedHypergraph {
    std::vector<Rational> vertex_weight;
    std::vector<VertexSet> edges;
    std::vector<Rational> edge_weight;

    int n() const { return static_cast<int>(vertex_weight.size()); }
    int m() const { return static_cast<int>(edges.size()); }
    Rational total_edge_weight() const;
    void add_edge(VertexSet e, Rational w);
    // Throws on an empty hyperedge, an out-of-range vertex or a negative weight.
    void validate() const;
};

// Vertex weights {3,1,0} / {8,3,0} by precolor, edge weights 2 per parallel edge / {5,11}.
WeightedHypergraph hypergraph_of(const Graph& g, PotentialKind kind);

struct FlowArc {
    int from;
    int to;
    Rational capacity;
    bool infinite = false;
};

// Node 0 is the source, node 1 the sink, then one node per vertex, then one per hyperedge.
struct FlowNetwork {
    int node_count = 2;
    int source = 0;
    int sink = 1;
    int vertex_count = 0;
    std::vector<FlowArc> arcs;
    Rational infinite_capacity;

    int vertex_node(int v) const { return 2 + v; }
    int edge_node(int e) const { return 2 + vertex_count + e; }
};

FlowNetwork build_aux_network(const WeightedHypergraph& h);

struct FlowResult {
    Rational value;
    std::vector<int> source_side;  // nodes reachable from the source in the final residual network
};

FlowResult max_flow(const FlowNetwork& net);

struct MinPotential {
    VertexSet W;  // sorted
    Rational rho;
    Rational cut;  // only meaningful for min_potential_subset
};

// Largest minimizer of rho over all subsets, including the empty set.
MinPotential min_potential_subset(const WeightedHypergraph& h);

enum class Extremal : std::uint8_t { any, largest, smallest };

// Minimizes rho over m1 <= |W| <= n - m2. Ties within an extremal cardinality go to
// the lexicographically smallest sorted vertex list.
MinPotential min_potential_constrained(const WeightedHypergraph& h, int m1, int m2, Extremal extremal);

struct GraphMinPotential {
    VertexSet W;
    std::int64_t rho = 0;
};

// Integer fast path over rho_m / rho_s of a graph.
GraphMinPotential min_potential_graph(const Graph& g, PotentialKind kind, int m1, int m2, Extremal extremal);

}
