#pragma once

#include <optional>
#include <string>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/lp.hpp"
#include "girthforge/rng.hpp"

namespace gf {

// Exact rational clique weighting over a shared enumeration handle. Dense by
// clique id; absent cliques carry weight zero.
struct FractionalWeighting {
    int q = 3;
    const CliqueSet* cliques = nullptr;
    std::vector<Rat> weights;

    Rat boundary(const Graph& g, int edge_id) const;  // sum over cliques on the edge
};

struct BalanceReport {
    Rat min_scaled;         // min weight * binom(n-2, q-2)
    Rat max_scaled;
    Rat worst_edge_defect;  // max |boundary - 1|
};

enum class FracStatus { Feasible, Infeasible, Error };

struct FracResult {
    FracStatus status = FracStatus::Error;
    FractionalWeighting w;
    std::vector<Rat> certificate;  // Farkas vector over edge rows when infeasible
    Rat objective;                 // max-min value when requested
    std::string note;
};

enum class FracObjective { Feasible, MaxMinWeight };

// Solve for weights with boundary exactly 1 on every edge of g. Support
// restricts the usable cliques (default: all); box constrains each supported
// weight to [lo, hi]. Infeasible results carry an independently re-checked
// Farkas certificate.
FracResult solve_fractional(const Graph& g, const CliqueSet& cliques,
                            const std::optional<std::vector<int>>& support,
                            const std::optional<std::pair<Rat, Rat>>& box,
                            FracObjective objective);

BalanceReport verify_fractional(const Graph& g, const FractionalWeighting& w);

// Fractional decomposition with strictly positive weight on every clique:
// greedy edge-disjoint coloring with per-vertex cap max(1, floor(eps*n/(2q))),
// one LP per color class, averaged; falls back to the max-min LP when a class
// complement is infeasible.
struct SeededResult {
    FracStatus status = FracStatus::Error;
    FractionalWeighting w;
    Rat min_weight;  // achieved floor
    std::string note;
};
SeededResult seeded_decomposition(const Graph& g, const CliqueSet& cliques, int q,
                                  const Rat& epsilon, Rng& rng);

// Fractional packing hitting per-edge boundary targets in [1 - 1/e(G), 1]:
// lambda_e-mixes the seeded decomposition of G with seeded decompositions of
// each G - e. Decompositions of G - e are only built when lambda_e < 1.
struct SeededFixedResult {
    FracStatus status = FracStatus::Error;
    FractionalWeighting w;
    Rat min_weight;
    std::string failing_edge_note;  // names the edge when some G - e fails
};
SeededFixedResult seeded_fixed(const Graph& g, const CliqueSet& cliques, int q,
                               const std::vector<Rat>& targets, const Rat& epsilon, Rng& rng);

// Balanced fractional decomposition by averaging seeded-fixed packings over
// high-minimum-degree s-subsets.
struct BalancedOptions {
    int s = 7;
    bool exhaustive = true;
    int sample_count = 100;
    Rat delta_star = Rat(3, 4);  // min-degree filter threshold
    Rat epsilon = Rat(1, 10);
    bool repair = true;  // exact repair pass when sampling leaves a defect
};

struct BalancedResult {
    FracStatus status = FracStatus::Error;
    FractionalWeighting w;
    BalanceReport report;
    int subsets_used = 0;
    int targets_clamped = 0;
    bool repaired = false;
    std::string note;  // names the uncovered edge on failure
};

BalancedResult balanced_decomposition(const Graph& g, const CliqueSet& cliques, int q,
                                      const BalancedOptions& opts, Rng& rng);

}  // namespace gf
