#pragma once

#include <optional>
#include <string>
#include <vector>

#include "girthforge/girth.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rng.hpp"

namespace gf {

enum class GadgetKind { AntiEdge, FakeEdge, Sphere, Absorber, Booster };

// Monotone id source for gadget-internal vertices. Callers own it so that many
// gadgets can be composed without id collisions.
class IdAllocator {
public:
    explicit IdAllocator(int first_free) : next_(first_free) {}
    int fresh() { return next_++; }
    int peek() const { return next_; }

private:
    int next_;
};

// A rooted gadget: root vertices live in the host id-space, internal vertices
// are fresh ids. No gadget edge joins two root vertices.
struct RootedGadget {
    GadgetKind kind = GadgetKind::AntiEdge;
    std::vector<int> root_vertices;
    std::vector<int> internal_vertices;
    std::vector<std::pair<int, int>> edges;

    int vertex_count() const {
        return static_cast<int>(root_vertices.size() + internal_vertices.size());
    }
    int edge_count() const { return static_cast<int>(edges.size()); }
    bool is_internal(int v) const;
    // degree of v over the gadget edges
    int degree(int v) const;
};

// Rooted booster: gadget body B plus the two decompositions. `on` decomposes
// B ∪ R (root clique R excluded as a block), `off` decomposes B alone.
struct RootedBooster {
    RootedGadget gadget;
    std::vector<int> root;  // the root clique's vertices, sorted
    Packing on;
    Packing off;
};

// AntiEdge_q(S): q-2 fresh vertices x_i, edges = all pairs of S ∪ {x_i} except S.
RootedGadget anti_edge(const std::vector<int>& S, int q, IdAllocator& ids);

// FakeEdge_q(S): q-2 fresh vertices x_i plus an anti-edge on every pair T of
// S ∪ {x_i} other than S itself.
RootedGadget fake_edge(const std::vector<int>& S, int q, IdAllocator& ids);

// Divisibility signature of a gadget relative to its root S: matches an edge
// iff e ≡ 1 (mod q(q-1)/2), root degrees ≡ 1 (mod q-1), other degrees ≡ 0.
bool has_edge_divisibility_signature(const RootedGadget& w, int q);

// g-sphere rooted at the triangle (v, b_1, b_2g). The b_2g-b_1 edge belongs to
// the root, not the body: the body must be edge-disjoint from R and the off
// decomposition has 2g-1 triangles covering exactly the 6g-3 body edges.
RootedBooster g_sphere(const std::vector<int>& root, int g, IdAllocator& ids);

// exact rooted degeneracy by reverse greedy peeling
int rooted_degeneracy(const RootedGadget& w, const std::vector<int>& roots);
// reference implementation over all orderings (exponential, test use)
int rooted_degeneracy_exhaustive(const RootedGadget& w, const std::vector<int>& roots);

// rooted girth of a packing at a root set: smallest m >= 1 with m blocks using
// fewer than m vertices outside R (exact subset search)
GirthValue rooted_girth_at(const Packing& p, const std::vector<int>& roots, int m_max);

// booster validity: off decomposes B, on decomposes B ∪ R, R not in on, the
// two packings are disjoint as clique sets
bool verify_booster(const RootedBooster& b, std::string* why = nullptr);

// rooted girth of a booster: min of girth(on), girth(off ∪ {R}), and the
// rooted girth of `on` at V(R)
int rooted_girth(const RootedBooster& b);

// ---- absorbers ----

// Is `a` an absorber for L? V(L) must be independent in the gadget and both
// body and body ∪ L must admit K_q-decompositions (found by exact cover).
// L's vertices must coincide with the gadget roots. Throws input_error when L
// is not K_q-divisible.
bool verify_absorber(const RootedBooster& a, const Graph& L, int q,
                     std::string* why = nullptr);

struct AbsorberBudget {
    int max_internal = 14;
    int max_attempts = 4000;
    long long cover_budget_ms = 2000;
};

struct AbsorberFailure {
    long long attempts = 0;
    std::string reason;
};

// Finds an absorber for L (given as a host-labelled graph on root vertex set
// `l_vertices`; edges of L are host edges between those vertices). Strategies:
// spheres for single cliques, per-block booster unions when L decomposes,
// per-component recursion, then randomized triangle-union bodies verified by
// exact cover. Returned booster: on decomposes body ∪ L, off decomposes body.
std::optional<RootedBooster> find_absorber(const std::vector<int>& l_vertices,
                                           const std::vector<std::pair<int, int>>& l_edges,
                                           int q, const AbsorberBudget& budget, Rng& rng,
                                           IdAllocator& ids, AbsorberFailure* fail = nullptr);

}  // namespace gf
