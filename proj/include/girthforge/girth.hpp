#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "girthforge/graph.hpp"

namespace gf {

// A set of q-cliques, stored as sorted vertex tuples. Validity (no host edge
// covered twice) is checked by is_packing / is_decomposition, not enforced by
// the container.
struct Packing {
    int q = 3;
    std::vector<std::vector<int>> blocks;  // each sorted ascending

    int size() const { return static_cast<int>(blocks.size()); }
    void add(std::vector<int> b);
    void sort_blocks();
};

// every block is a clique of g and no edge is covered twice
bool is_packing(const Graph& g, const Packing& p);
// every edge of g covered exactly once (throws input_error if some block is
// not a clique of g)
bool is_decomposition(const Graph& g, const Packing& p);

// Girth of a packing: smallest i in [i_min, g_max] such that some i blocks
// span at most i(q-2)+2 vertices. AtLeast(g_max+1) is the explicit "no such i"
// variant -- never an in-band number.
struct GirthValue {
    int value = 0;
    bool at_least = false;  // when true, girth is >= value (exhausted search)
};

GirthValue packing_girth(const Packing& p, int g_max, int i_min = 2);

// i blocks spanning exactly i(q-2)+2 vertices with no smaller configuration
// (girth exactly i)
struct ConfigurationWitness {
    int i = 0;
    std::vector<std::vector<int>> cliques;  // the blocks
    std::vector<int> span;                  // sorted union of their vertices
};

struct ConfigurationOverflow {
    long long partial_count = 0;
};

using ConfigurationResult =
    std::variant<std::vector<ConfigurationWitness>, ConfigurationOverflow>;

// All Erdos configurations of g with i_min <= i <= g_bound: exactly i
// edge-disjoint q-cliques on exactly i(q-2)+2 vertices containing no
// (j(q-2)+2, j)-configuration for 3 <= j < i. Aborts with a counted overflow
// once more than `limit` witnesses have been produced.
ConfigurationResult enumerate_erdos_configurations(const Graph& g, int q, int g_bound,
                                                   long long limit, int i_min = 3);

// Does chosen ∪ {candidate} contain a configuration of size <= bound that uses
// `candidate`? The workhorse behind girth pruning and lazy H-avoidance. Blocks
// are sorted vertex tuples; q is the clique order.
bool completes_configuration(const std::vector<std::vector<int>>& chosen,
                             const std::vector<int>& candidate, int q, int bound);

}  // namespace gf
