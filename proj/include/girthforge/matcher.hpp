#pragma once

#include <optional>
#include <string>
#include <vector>

#include "girthforge/girth.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rng.hpp"
#include "girthforge/treasury.hpp"

namespace gf {

// ---- exact clique decompositions (exact cover with girth pruning) ----

enum class SearchStatus { Found, ProvenInfeasible, BudgetExhausted };

struct DecompositionResult {
    SearchStatus status = SearchStatus::ProvenInfeasible;
    Packing packing;
    long long nodes_explored = 0;
};

// Exact-cover search (dancing-links column selection) over the q-cliques of g,
// pruning any partial that contains an (i(q-2)+2, i)-configuration with
// i < girth_min. girth_min <= 3 imposes nothing for q = 3. Exhausting the tree
// without a solution proves infeasibility; hitting the time budget does not.
DecompositionResult exact_decomposition(const Graph& g, int q, int girth_min,
                                        long long time_budget_ms, uint64_t seed = 1);

// ---- treasury matching ----

struct Matching {
    std::vector<int> design_edges;   // indices into t.g1.edges
    std::vector<int> reserve_edges;  // indices into t.g2.edges
};

struct MatchingFailure {
    int uncovered = 0;
    int total_A = 0;
    long long restarts_used = 0;
};

struct MatcherOptions {
    int restarts = 64;
    long long backtrack_budget = 200000;  // per restart
    bool force_lazy = false;              // ignore materialized H (cross-check use)
    bool force_materialized = false;      // fail rather than lazily check
};

// Randomized greedy over A-vertices in random order with bounded backtracking
// and restarts: admissible hyperedges are vertex-disjoint from the chosen set
// and complete no H-edge (materialized or lazily re-derived, including the
// projection family). G1 hyperedges are preferred; reserves are touched only
// when an A-vertex has no admissible G1 option. Success is re-verified before
// returning.
std::optional<Matching> find_perfect_matching(const Treasury& t, Rng& rng,
                                              const MatcherOptions& opts,
                                              MatchingFailure* fail = nullptr);

// Is `chosen + candidate` admissible w.r.t. the treasury's forbidden
// configurations? Exposed for the lazy-vs-materialized equivalence tests.
bool h_admissible(const Treasury& t, const std::vector<int>& chosen_cliques,
                  int candidate_clique, bool use_lazy);

// blocks of a matching as host cliques
Packing matching_blocks(const Treasury& t, const Matching& m);

}  // namespace gf
