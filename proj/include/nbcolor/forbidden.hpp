#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nbcolor/graph.hpp"
#include "nbcolor/oracle.hpp"

namespace nbc {

enum class Provenance : std::uint8_t { base, named, verified_candidate };

// Induced cycle x_1..x_k of degree-3 vertices; attachments[i] is the outside neighbour of x_i.
struct WitnessCycle {
    VertexSet cycle;
    VertexSet attachments;
};

struct CatalogMember {
    std::string name;
    Graph graph;
    Provenance provenance = Provenance::named;
    std::optional<WitnessCycle> witness;
};

struct Catalog {
    std::vector<CatalogMember> members;
    int vertex_bound = 12;
};

// Injective map from pattern vertices to host vertices carrying every pattern edge
// onto a host edge of any kind.
struct Embedding {
    int member = -1;
    std::string name;
    VertexSet map;
};

struct LinkWitness {
    int member = -1;
    std::string name;
    int v = -1;  // endpoints of the deleted pattern edge
    int w = -1;
    VertexSet map;  // pattern vertex -> host vertex; map[v] and map[w] are s and t
};

// Backtracking subgraph search. fixed lists (pattern, host) pairs that must be used.
std::optional<VertexSet> find_embedding(const Graph& pattern, const Graph& host,
                                        const std::vector<std::pair<int, int>>& fixed = {},
                                        const CancelToken* cancel = nullptr);

std::optional<Embedding> find_forbidden_subgraph(const Graph& g, const Catalog& catalog);

std::optional<LinkWitness> are_linked(const Graph& g, int s, int t, const Catalog& catalog);

struct MemberCheck {
    bool member = false;       // in the recursive family H'
    bool base = false;
    bool potential_ok = false;  // every subset has rho_s >= -4
    std::optional<WitnessCycle> witness;
    std::string reason;
};

MemberCheck check_member(const Graph& cand, const Catalog& catalog, const BruteOptions& opt = {});
// Membership in H: H' membership plus the potential filter.
bool verify_member(const Graph& cand, const Catalog& catalog, const BruteOptions& opt = {});

// Seeds K4, W5, J7, J12 (base) and M7, J8 (named); a failing seed throws.
Catalog build_catalog(int vertex_bound = 12);
// Verifies cand against the catalog and appends it as a verified candidate; false if rejected.
bool add_candidate(Catalog& catalog, const std::string& name, const Graph& cand);

// Directory of <name>.nbg files plus manifest.json with FNV-1a hashes of each file.
void save_catalog(const Catalog& catalog, const std::string& dir);
Catalog load_catalog(const std::string& dir);

// Catalog from $NBCOLOR_CATALOG when set, else dir when nonempty, else the built-in one.
Catalog resolve_catalog(const std::string& dir = {});

std::string provenance_name(Provenance p);

}
