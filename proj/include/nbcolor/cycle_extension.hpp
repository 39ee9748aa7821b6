#pragma once

#include <string>
#include <variant>

#include "nbcolor/graph.hpp"

namespace nbc {

enum class BlockReason : std::uint8_t { all_attachments_I, odd_single_component };

struct Blocked {
    BlockReason reason;
};

// Outside neighbour z_i of each x_i on an induced cycle whose vertices have exactly
// three neighbours, all joined by single edges. Throws std::invalid_argument otherwise.
VertexSet cycle_attachments(const Graph& g, const VertexSet& cycle);

// Extends a coloring of G - C (entries on C are ignored) over the cycle C = x_1..x_k.
// Blocked when every z_i is in I, or when k is odd and all z_i lie in one F-component.
std::variant<Coloring, Blocked> extend_over_induced_cycle(const Graph& g, const VertexSet& cycle,
                                                          const Coloring& partial);

struct CycleReduction {
    Graph graph;
    VertexSet ids;  // reduced id -> id in the original graph
    VertexSet cycle;
    int z1 = -1;
    int z2 = -1;
    int variant = 0;  // 1: gadget already present, 2: edge made a gadget, 3: edge added
};

// G(C, z1, z2): G - C with z1z2 turned into a gadget (if an edge) or added as an edge.
CycleReduction reduce_cycle_gadget(const Graph& g, const VertexSet& cycle, int z1, int z2);

// Recolors the cycle after coloring the reduced graph; throws std::logic_error if blocked.
Coloring lift_cycle_reduction(const Graph& g, const CycleReduction& red, const Coloring& reduced);

std::string block_reason_name(BlockReason r);

}
