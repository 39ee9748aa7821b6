#pragma once

#include <vector>

#include "nbcolor/graph.hpp"
#include "nbcolor/rational.hpp"

namespace nbc {

// Strata and charges of the discharging argument. Degrees are d' (gadgets count twice).
struct DischargeReport {
    VertexSet L;  // uncolored, d' = 3, no incident gadget
    VertexSet B;
    VertexSet B4, B5;        // uncolored, no gadget
    VertexSet B4_eg, B5_eg;  // incident to a gadget
    VertexSet B3_f;          // precolored F with d' = 3
    VertexSet B_star;        // everything else in B
    std::vector<VertexSet> trees;  // components of G[L]
    bool L_is_forest = true;
    int ell = 0;
    int e1 = 0;  // e'(B): non-gadget edges inside B
    int e2 = 0;  // e''(B): gadgets inside B
    VertexSet Btilde;  // endpoints of edges inside B

    std::vector<Rational> ch, ch_star;            // per vertex
    std::vector<Rational> edge_ch, edge_ch_star;  // per edge record
    std::vector<Rational> tree_charge;            // ch* summed over each tree

    int lhs = 0;  // l + e'(B) + 3e''(B) + 2|B5| + 2|B5_eg| + 3|B3_f| + 4|B_*|
    bool inequality_holds = false;
    bool structured = false;  // V = L + B4, l >= 1 and 1 <= e'(B) <= 4 - l
};

DischargeReport discharge_classify(const Graph& g);

}
