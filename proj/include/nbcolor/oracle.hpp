#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <stdexcept>

#include "nbcolor/graph.hpp"
#include "nbcolor/rational.hpp"

namespace nbc {

inline constexpr int default_brute_threshold = 22;

struct CancelToken {
    std::atomic<bool> cancelled{false};
    void cancel() { cancelled.store(true, std::memory_order_relaxed); }
    bool is_cancelled() const { return cancelled.load(std::memory_order_relaxed); }
};

class ThresholdExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("search cancelled") {}
};

struct BruteOptions {
    int threshold = default_brute_threshold;
    const CancelToken* cancel = nullptr;
};

// Exhaustive nb-coloring search honouring Ip/Fp. Returns a validated coloring or nullopt.
std::optional<Coloring> brute_nb_color(const Graph& g, const BruteOptions& opt = {});

// Calls fn on every nb-coloring; stops early when fn returns false. Returns the number visited.
long long enumerate_nb_colorings(const Graph& g, const std::function<bool(const Coloring&)>& fn,
                                 const BruteOptions& opt = {});

bool is_nb_colorable(const Graph& g, const BruteOptions& opt = {});

// Not nb-colorable while every single-edge deletion is (a multi loses one parallel edge).
// A graph with an isolated vertex is never critical.
bool is_nb_critical(const Graph& g, const BruteOptions& opt = {});

struct SparsityParams {
    Rational a;
    Rational b;
};

enum class SparseMethod { automatic, enumerate, flow };

struct SparseReport {
    bool ok = true;
    VertexSet witness;  // a nonempty W with |e(W)| > a|W| - b when !ok
    Rational min_slack;  // min over nonempty W of a|W| - |e(W)|
};

inline constexpr int sparse_enumeration_limit = 14;

// |e(W)| counts a multi as two edges and a gadget as one.
SparseReport check_sparse(const Graph& g, const SparsityParams& p, SparseMethod method = SparseMethod::automatic);

std::optional<std::vector<int>> three_coloring(const Graph& g, const BruteOptions& opt = {});
bool is_4_critical(const Graph& g, const BruteOptions& opt = {});

}
