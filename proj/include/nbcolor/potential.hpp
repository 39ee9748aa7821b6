#pragma once

#include <cstdint>
#include <stdexcept>

#include "nbcolor/graph.hpp"
#include "nbcolor/rational.hpp"

namespace nbc {

enum class PotentialKind : std::uint8_t { multigraph, simple };

class KindError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 3|W∩U| + |W∩Fp| - 2|e(W)|, a multi counting as two edges.
std::int64_t rho_m(const Graph& g, const VertexSet& W);
// 8|W∩U| + 3|W∩Fp| - 5|e'(W)| - 11|e''(W)|.
std::int64_t rho_s(const Graph& g, const VertexSet& W);
std::int64_t rho(const Graph& g, const VertexSet& W, PotentialKind kind);

// Per-vertex and per-edge weights of the two potentials, used to build hypergraphs.
std::int64_t vertex_weight(PotentialKind kind, Tag t);
std::int64_t edge_weight(PotentialKind kind, EdgeKind k);
void check_kind(const Graph& g, PotentialKind kind);

// Lowest subset potential a colorable input may have.
inline std::int64_t potential_floor(PotentialKind kind) { return kind == PotentialKind::multigraph ? -1 : -4; }

struct WeightedHypergraph;
Rational rho_hyper(const WeightedHypergraph& h, const VertexSet& X);

}
