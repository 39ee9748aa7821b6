#pragma once

#include <random>

#include "nbcolor/forbidden.hpp"
#include "nbcolor/graph.hpp"

namespace nbc {

struct GenOptions {
    int n = 20;
    int proposals = 0;      // edge proposals after the seed; 0 means 8n
    double heavy = 0.2;     // chance a proposal is a multi (multigraph) or gadget (simple)
    double precolor = 0.0;  // chance a vertex starts as Fp
    double local = 0.5;     // chance the second endpoint is drawn near the first
    bool cubic_seed = true; // start from a random pairing of three stubs per vertex
};

// Grows a multigraph edge by edge, keeping every nonempty subset at rho_m >= -1 and
// avoiding K4 and M7.
Graph random_multigraph(std::mt19937_64& rng, const GenOptions& opt);

// Grows a graph with singles and gadgets, keeping rho_s >= -4 on every nonempty subset
// and avoiding every catalog member (a gadget counts as an edge for containment).
Graph random_simple(std::mt19937_64& rng, const GenOptions& opt, const Catalog& catalog);

}
