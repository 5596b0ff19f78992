#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "girthforge/gadgets.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rng.hpp"

namespace gf {

// One member of a supergraph system: a gadget W rooted on a subgraph H of the
// base graph J. Root vertices are host ids; internal ids are fresh and
// pairwise disjoint across members.
struct SystemMember {
    RootedGadget gadget;
    std::vector<std::pair<int, int>> rooted_edges;  // E(H): host edges owned by the member
};

struct SupergraphSystem {
    Graph base;  // J
    std::vector<SystemMember> members;
    int C = 1;  // boundedness/refinement parameter (max of e(W), v(W), per-edge membership)
};

struct Embedding {
    // per member: internal id -> host vertex
    std::vector<std::map<int, int>> placement;
    std::vector<std::pair<int, int>> image_edges;  // all embedded gadget edges
    int image_max_degree = 0;
};

enum class EmbedFailureKind { Overlap, CounterSaturated, NoPlacement };

struct EmbedFailure {
    int member = -1;
    EmbedFailureKind kind = EmbedFailureKind::NoPlacement;
    std::string detail;
};

// Number of edge-preserving injections of W into G fixing the roots and
// avoiding `forbidden` edges; exact below cap, stops counting at cap.
long long count_embeddings(const RootedGadget& w, const Graph& g, const Graph* forbidden,
                           long long cap);

// Greedy embedding of the system into G: members are placed one at a time in
// randomized order; a placement is rejected when it overlaps J \ H or earlier
// images (the overlap class) or when it would push a per-vertex image counter
// past m = max(1, floor(sqrt(C')/(4C) * Delta(J))) (the saturation class).
// On success Delta(image) <= C' * Delta(J) is re-verified.
std::optional<Embedding> embed_system(const SupergraphSystem& s, const Graph& g,
                                      int c_prime, Rng& rng, EmbedFailure* fail = nullptr);

}  // namespace gf
