#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "girthforge/boosting.hpp"
#include "girthforge/matcher.hpp"
#include "girthforge/omniabsorber.hpp"
#include "girthforge/treasury.hpp"

namespace gf {

// Named parameters shared across the pipeline. The paper-side constants are
// asymptotic; these are their configurable desk-scale stand-ins.
struct Config {
    int q = 3;
    int g = 4;
    Rat epsilon = Rat(1, 10);
    Rat alpha = Rat(1, 4);
    Rat beta = Rat(1, 8);
    Rat gamma = Rat(1, 20);
    Rat p = Rat(1, 10);
    long long C = 8;
    int c_prime = 60;
    Rat sigma = Rat(1, 100);
    uint64_t rng_seed = 1;

    void validate() const;  // throws input_error on out-of-range values
};

struct StageReport {
    std::string name;
    bool ok = false;
    std::string detail;
    long long elapsed_ms = 0;
};

enum class PipelineStatus { Success, ProvenInfeasible, BudgetExhausted, Failed };

struct PipelineResult {
    PipelineStatus status = PipelineStatus::Failed;
    bool fallback = false;          // exact-cover route produced the result
    bool relaxed_girth = false;     // fallback settled for girth >= g (strict level infeasible)
    Packing decomposition;
    GirthValue measured_girth;
    std::vector<StageReport> stages;
};

// Builds the final high-girth packing from a perfect matching of the
// projected treasury: leftover := X-edges not covered by reserve blocks; the
// result is matching blocks ∪ Q_A(leftover), re-verified as a decomposition.
// Throws input_error naming the edge when the matching misses an A-vertex or
// the leftover is not divisible.
Packing assemble_steiner(const OmniAbsorber& a, const Treasury& t, const Matching& m,
                         const Graph& g, const Graph& x);

// End-to-end run: reserves -> private omni-absorber -> canonical boost ->
// projection -> restricted boosting -> treasury matching -> assembly, with
// verification after every stage and an exact-cover fallback when the
// treasury route cannot finish.
PipelineResult run_pipeline(const Graph& g, int girth_target, const Config& cfg, Rng& rng,
                            long long budget_ms = 300000);

}  // namespace gf
