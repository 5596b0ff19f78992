#pragma once

#include <optional>
#include <string>
#include <vector>

#include "girthforge/fractional.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rng.hpp"

namespace gf {

struct ReserveSample {
    Graph x;
    Rat p;
    long long per_edge_min_extensions = 0;  // measured minimum over e outside X
    int retries_used = 0;
};

struct ReserveFailure {
    int worst_u = -1, worst_v = -1;
    long long worst_count = 0;
    std::string reason;
};

// Edge-independent sampling of X ⊆ G with probability p, re-sampled until
// Delta(X) <= 2pn and every non-X pair of K_n is in at least `threshold`
// q-cliques of X ∪ {e}. The default threshold is p^(binom(q,2)-1) *
// binom(n, q-2) / (q+1)^q evaluated at the instance (floored).
std::optional<ReserveSample> sample_reserves(const Graph& g, int q, const Rat& p, Rng& rng,
                                             int max_retries,
                                             std::optional<long long> threshold = std::nullopt,
                                             ReserveFailure* fail = nullptr);

struct RegularFamily {
    std::vector<int> cliques;  // clique ids in the host enumeration
    Rat target_d;
    Rat max_deviation;
    int clamping_events = 0;
    int coverage_patches = 0;
    Rat box_widening = Rat(1);    // widening factor applied to the boosting LP box
    long long kq2_census = 0;     // K_{q+2} copies whose q-subcliques all landed in H
    std::vector<int> sampled_h;   // the intermediate family H (for re-verification)
};

struct BoostOptions {
    Rat alpha = Rat(1, 4);       // forbidden-density precondition per edge
    int max_widenings = 12;
    BalancedOptions balanced;    // how the balanced weighting is produced
    bool balanced_via_lp = true; // use the max-min LP as the balanced weighting
};

// Restricted regularity boosting: zero the forbidden weights of a balanced
// weighting, sample a clique family at rate phi*d, re-weight the sampled
// support with a box LP (weights in (1 +- 1/2)/d, box widened geometrically on
// infeasibility), then downsample at 2/3 * psi * d. Output never meets F_orb
// and covers every edge (patched from admissible cliques when sampling leaves
// a hole; patches are counted).
std::optional<RegularFamily> restricted_boost(const Graph& j, const CliqueSet& cliques, int q,
                                              const std::vector<int>& f_orb,
                                              const BoostOptions& opts, Rng& rng,
                                              std::string* error = nullptr);

}  // namespace gf
