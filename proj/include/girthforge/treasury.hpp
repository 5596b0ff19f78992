#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "girthforge/girth.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rational.hpp"

namespace gf {

// Uniform hypergraph over an integer vertex space. For design hypergraphs the
// vertices are edge ids of a host graph and each hyperedge records the clique
// it came from.
struct UniformHypergraph {
    int n_vertices = 0;
    std::vector<std::vector<int>> edges;          // vertex-id sets, sorted
    std::vector<int> clique_of_edge;              // host clique id per hyperedge (-1 if n/a)
};

// Bipartite reserve hypergraph: parts A and B partition the vertex space,
// every hyperedge has exactly one A-vertex.
struct BipartiteHypergraph {
    int n_vertices = 0;
    std::vector<char> in_A;                       // per vertex
    std::vector<std::vector<int>> edges;          // sorted; exactly one A-vertex each
    std::vector<int> clique_of_edge;
};

// Configuration hypergraph over clique ids. May be materialized, lazy, or
// both: the lazy part re-derives forbidden configurations on demand from the
// host graph (plus the projection family).
struct ConfigHypergraph {
    std::vector<std::vector<int>> edges;          // sorted clique-id sets, |e| >= 2
    bool lazy = false;
    int lazy_bound = 0;                           // forbid configurations of size <= lazy_bound
};

struct Treasury {
    const Graph* host = nullptr;                  // girth checks run against this graph
    const CliqueSet* cliques = nullptr;           // shared clique enumeration of host
    UniformHypergraph g1;
    BipartiteHypergraph g2;
    ConfigHypergraph h;
    // projection family: clique-id sets M_i whose union with a matching must
    // not complete a forbidden configuration (empty list = no projection)
    std::vector<std::vector<int>> projection_family;
};

UniformHypergraph design_hypergraph(const Graph& g, int q);

// Hyperedges are q-cliques of g with exactly one edge in U and the rest in W.
// U and W are edge-id sets of g; throws input_error if they overlap.
BipartiteHypergraph reserve_hypergraph(const Graph& g, int q, const std::vector<int>& U,
                                       const std::vector<int>& W);

// Girth-g design treasury of G with reserve X inside G': G1 = Design(G'\X),
// G2 = Reserve(G, K_q, G'\X, X), H = Girth^g(G, K_q). X ⊆ G' ⊆ G (edge
// containment), checked. The configuration hypergraph is materialized when the
// enumeration stays below config_budget, else marked lazy.
Treasury design_treasury(const Graph& g, const CliqueSet& cliques, const Graph& g_prime,
                         int q, const Graph& x, int g_bound,
                         long long config_budget = 200000);

// ---- regularity audit ----

struct RuleReport {
    bool pass = true;
    std::string witness;  // empty when pass
};

struct RegularityReport {
    RuleReport rt1, rt2, rt3, rt4;
    long long D = 0;
    long long sigma = 0;
    Rat beta, alpha;
    std::string log_note;  // RT4 log base note
    bool all_pass() const { return rt1.pass && rt2.pass && rt3.pass && rt4.pass; }
};

// Exact evaluation of RT1-RT4 with maximizing witnesses. Power comparisons
// degree <= D^(1-beta) are exact integer tests; the RT4 log factor uses the
// natural log (recorded in log_note).
RegularityReport check_regular(const Treasury& t, long long D, long long sigma,
                               const Rat& beta, const Rat& alpha, int g_bound);

// ---- projection ----

// Common projection T ⊥ M_family. Every M_i ∩ (G1 ∪ G2) must be a matching
// (checked; input_error otherwise). Works on the materialized part of H and
// records the family for lazy use.
Treasury common_projection(const Treasury& t, const std::vector<std::vector<int>>& m_family);

// All divisible subgraphs of X (as sorted edge-id lists over X's edge ids).
// Fails (overflow) when 2^e(X) exceeds the cap.
struct DivisibleEnum {
    bool overflow = false;
    long long checked = 0;
    std::vector<std::vector<int>> subgraphs;  // includes the empty one
};
DivisibleEnum enumerate_divisible_subgraphs(const Graph& x, int q, long long cap = (1LL << 20));

}  // namespace gf
