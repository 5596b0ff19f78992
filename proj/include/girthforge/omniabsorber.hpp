#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "girthforge/gadgets.hpp"
#include "girthforge/girth.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rng.hpp"

namespace gf {

// One private absorber, embedded in the host: body edges are host edges and
// the two decompositions are host-vertex packings.
struct AbsorberEntry {
    std::vector<std::pair<int, int>> l_edges;  // the divisible L ⊆ X it absorbs
    std::vector<std::pair<int, int>> body_edges;
    Packing on;   // decomposition of body ∪ L
    Packing off;  // decomposition of body
};

// Omni-absorber for X inside a host G: an edge-disjoint union of private
// absorbers, one per divisible L ⊆ X, with the decomposition function
// assembled from per-absorber on/off switching. Boosting replaces every family
// clique by a sphere booster (canonical omni-absorber).
struct OmniAbsorber {
    int q = 3;
    Graph host;     // the graph the absorber lives in
    Graph x;        // the reserve it absorbs
    Graph a;        // union of absorber bodies (plus booster bodies once boosted)
    std::vector<AbsorberEntry> entries;
    std::vector<Packing> family_blocks;  // one packing: every family clique once
    int refinement = 0;                  // max family members per edge of A ∪ X

    bool boosted = false;
    int collective_girth_bound = 0;  // verified lower bound after boosting
    std::vector<RootedBooster> boosters;  // parallel to family order
    std::vector<std::vector<int>> family; // family blocks as sorted vertex tuples

    // decomposition function: blocks covering a ∪ L for a divisible L ⊆ X
    Packing decomposition(const std::vector<std::pair<int, int>>& l_edges) const;
    // every family clique as a block list
    std::vector<std::vector<int>> family_list() const { return family; }
};

struct OmniBudget {
    int max_x_edges = 20;
    AbsorberBudget absorber;
    int c_prime = 60;  // embedding degree factor
};

struct OmniFailure {
    std::string stage;   // "divisible-enumeration", "absorber-search", "embedding", "verify"
    std::string detail;  // names the culprit L where applicable
};

// Builds the private omni-absorber: enumerate divisible L ⊆ X, find an
// abstract absorber per L, embed them all edge-disjointly into G \ X, then
// verify every decomposition exhaustively.
std::optional<OmniAbsorber> build_private_omniabsorber(const Graph& g, const Graph& x, int q,
                                                       const OmniBudget& budget, Rng& rng,
                                                       OmniFailure* fail = nullptr);

struct BoostBudget {
    int sphere_g = 0;          // 0 = use the collective target g
    int placement_retries = 4000;
    long long selection_cap = 4096;  // exhaustive selection verification cap
};

// Canonical boost: a g-sphere per family clique, placed in G edge-disjointly
// from A ∪ X and from each other, rejection-sampled so that no forbidden
// configuration of size < g can appear in any on/off selection. Collective
// girth >= g is then verified (exhaustively over matchable selections when
// their number is small, otherwise by the configuration-intersection check).
std::optional<OmniAbsorber> boost_omniabsorber(const OmniAbsorber& base, const Graph& g_host,
                                               int g, const BoostBudget& budget, Rng& rng,
                                               OmniFailure* fail = nullptr);

// Exhaustive re-verification that Q_A(L) decomposes A ∪ L for every divisible
// L ⊆ X; for boosted absorbers also re-checks the collective girth bound.
bool verify_omniabsorber(const OmniAbsorber& a, std::string* why = nullptr,
                         long long selection_cap = 4096);

// Collective girth check exposed for tests: true iff no forbidden
// configuration of size <= bound fits inside any matchable on/off selection.
bool collective_girth_at_least(const OmniAbsorber& a, int g, long long selection_cap,
                               std::string* why = nullptr);

}  // namespace gf
