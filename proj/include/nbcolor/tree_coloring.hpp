#pragma once

#include "nbcolor/graph.hpp"

namespace nbc {

// T is a tree whose non-leaves have degree 3; S_in and S_out partition its leaves and
// |S_out| is odd. Returns an independent S with S_in inside, S_out outside, and at most
// one leaf of T in each component of T - S. Throws std::invalid_argument otherwise.
VertexSet tree_split(const Graph& T, const VertexSet& S_in, const VertexSet& S_out);

// Leaf classification of one tree of G - W against a fixed coloring of W.
struct TreeStatus {
    VertexSet vertices;
    int f_edges = 0;
    bool f_odd = false;
    bool f_leaf_good = false;
};

// Trees of G - W, each tagged with its F-edge count and leaf status.
std::vector<TreeStatus> classify_trees(const Graph& g, const std::vector<char>& in_W, const Coloring& partial);

// Colors every tree of G - W so that no F-path inside a tree joins two vertices with
// F-edges. Requires each tree to be F-odd or F-leaf-good and every tree vertex to have
// degree 3 in G; throws std::invalid_argument otherwise. Only tree entries change.
Coloring extend_to_forest(const Graph& g, const std::vector<char>& in_W, const Coloring& partial);

// Colors one tree of G - W the same way; other entries are left alone.
void extend_tree(const Graph& g, const std::vector<char>& in_W, const VertexSet& tree, Coloring& c);

// g is a tree or a connected unicyclic graph (cycle length at least 4) plus the vertex v,
// which has at most four neighbours, one on the cycle when there is one. Returns a
// coloring of g with v in F and I a subset of N(v).
Coloring helper_extend(const Graph& g, int v);

}
