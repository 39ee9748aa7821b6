#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nbcolor/discharge.hpp"
#include "nbcolor/forbidden.hpp"
#include "nbcolor/graph.hpp"
#include "nbcolor/oracle.hpp"

namespace nbc {

struct Colored {
    Coloring coloring;
};

struct CertLowPotential {
    VertexSet W;
    std::int64_t rho = 0;
    std::int64_t threshold = 0;
};

struct CertForbidden {
    Embedding embedding;
};

struct Diagnostic {
    std::string step;
    std::string message;
};

using Outcome = std::variant<Colored, CertLowPotential, CertForbidden, Diagnostic>;

const char* outcome_kind(const Outcome& o);

struct SolveOptions {
    // Graphs with at most this many vertices are colored by exhaustive search.
    int brute_threshold = default_brute_threshold;
    // Node budget for each exact completion of a partial coloring.
    long completion_budget = 200000;
    // Recompute the minimum potential of every contracted child and fail if it drops below the floor.
    bool check_children = false;
    const CancelToken* cancel = nullptr;
};

struct TraceEvent {
    int depth = 0;
    std::string step;
    int n = 0;
    int m = 0;
    std::string detail;
};

struct SolveTrace {
    std::vector<TraceEvent> events;
    std::map<std::string, int> counts;

    void add(int depth, std::string step, int n, int m, std::string detail = {});
};

// Multigraph algorithm. Input must be gadget-free.
Outcome color_multigraph(const Graph& g, const SolveOptions& opt = {}, SolveTrace* trace = nullptr);

// Simple-graph algorithm; gadgets and precolors allowed, multis rejected.
Outcome color_simple(const Graph& g, const Catalog& catalog, const SolveOptions& opt = {},
                     SolveTrace* trace = nullptr);

// Colors the structured endgame graph (V = L + B4) by choosing F inside B and extending
// over the trees of G[L].
Outcome finish_structured(const Graph& g, const DischargeReport& report, const Catalog& catalog,
                          const SolveOptions& opt = {}, SolveTrace* trace = nullptr);

// Backtracking completion of c over the vertices marked free, keeping the rest fixed.
// Gives up after `budget` search nodes.
std::optional<Coloring> complete_coloring(const Graph& g, const std::vector<char>& free, const Coloring& c,
                                          long budget);

}
