#pragma once

#include <vector>

#include "girthforge/girth.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rng.hpp"

namespace gf::fixtures {

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph(n, es);
}

// C_4 blow-up with parts of size s: complete inside each part, complete
// bipartite between cyclically adjacent parts
inline Graph graham_blowup(int s) {
    int n = 4 * s;
    std::vector<std::pair<int, int>> es;
    for (int part = 0; part < 4; ++part)
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) es.emplace_back(part * s + i, part * s + j);
    for (int part = 0; part < 4; ++part) {
        int nxt = (part + 1) % 4;
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) es.emplace_back(part * s + i, nxt * s + j);
    }
    return Graph(n, es);
}

// the classical 7-point plane as a triangle decomposition of K_7
inline Packing fano() {
    Packing p;
    p.q = 3;
    p.add({0, 1, 3});
    p.add({1, 2, 4});
    p.add({2, 3, 5});
    p.add({3, 4, 6});
    p.add({4, 5, 0});
    p.add({5, 6, 1});
    p.add({6, 0, 2});
    return p;
}

inline Packing pasch() {
    Packing p;
    p.q = 3;
    p.add({1, 2, 3});
    p.add({1, 4, 5});
    p.add({2, 4, 6});
    p.add({3, 5, 6});
    return p;
}

// hexagon plus a vertex-disjoint triangle on 9 vertices (a reserve fixture)
inline Graph hexagon_plus_triangle() {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 6; ++i) es.emplace_back(i, (i + 1) % 6);
    es.emplace_back(6, 7);
    es.emplace_back(7, 8);
    es.emplace_back(6, 8);
    return Graph(9, es);
}

// random greedy edge-disjoint triangle packing in K_n with at most max_blocks
inline Packing random_packing(int n, int max_blocks, Rng& rng) {
    Graph g = Graph::complete(n);
    auto tris = enumerate_cliques(g, 3);
    std::vector<int> order(tris.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);
    std::vector<char> used(g.edge_count(), 0);
    Packing p;
    p.q = 3;
    for (int idx : order) {
        if (p.size() >= max_blocks) break;
        auto& vs = tris[idx].vertices;
        int e1 = g.edge_id(vs[0], vs[1]), e2 = g.edge_id(vs[0], vs[2]), e3 = g.edge_id(vs[1], vs[2]);
        if (used[e1] || used[e2] || used[e3]) continue;
        used[e1] = used[e2] = used[e3] = 1;
        p.add(vs);
    }
    return p;
}

// naive girth oracle: all subsets of blocks, exact span count
inline GirthValue naive_girth(const Packing& p, int g_max) {
    int n = p.size();
    int best = g_max + 1;
    for (long long mask = 1; mask < (1LL << n); ++mask) {
        int cnt = __builtin_popcountll(mask);
        if (cnt < 2 || cnt > g_max || cnt >= best) continue;
        std::vector<int> span;
        for (int i = 0; i < n; ++i)
            if (mask & (1LL << i))
                for (int v : p.blocks[i]) span.push_back(v);
        std::sort(span.begin(), span.end());
        span.erase(std::unique(span.begin(), span.end()), span.end());
        if (static_cast<int>(span.size()) <= cnt * (p.q - 2) + 2) best = std::min(best, cnt);
    }
    if (best <= g_max) return {best, false};
    return {g_max + 1, true};
}

}  // namespace gf::fixtures
