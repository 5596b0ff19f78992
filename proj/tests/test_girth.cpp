#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "girthforge/girth.hpp"

using namespace gf;

TEST_CASE("decomposition checks") {
    CHECK(is_decomposition(Graph::complete(7), fixtures::fano()));
    Packing empty;
    empty.q = 3;
    CHECK_FALSE(is_decomposition(fixtures::cycle(6), empty));
    Packing k3;
    k3.q = 3;
    k3.add({0, 1, 2});
    CHECK(is_decomposition(Graph(3, {{0, 1}, {0, 2}, {1, 2}}), k3));
    // a block that is not a clique of the host is an input error
    Packing bad;
    bad.q = 3;
    bad.add({0, 1, 3});
    CHECK_THROWS_AS(is_decomposition(fixtures::cycle(6), bad), input_error);
}

TEST_CASE("packing girth on the classical fixtures") {
    GirthValue pg = packing_girth(fixtures::pasch(), 8);
    CHECK_FALSE(pg.at_least);
    CHECK(pg.value == 4);

    // every labelled Fano plane contains a Pasch configuration
    GirthValue fg = packing_girth(fixtures::fano(), 8);
    CHECK_FALSE(fg.at_least);
    CHECK(fg.value == 4);

    Packing two;
    two.q = 3;
    two.add({0, 1, 2});
    two.add({0, 3, 4});
    GirthValue tg = packing_girth(two, 6);
    CHECK(tg.at_least);
    CHECK(tg.value == 7);
}

TEST_CASE("girth matches the naive oracle on random packings") {
    Rng rng(11);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 7 + static_cast<int>(rng.below(4));  // up to 10 vertices
        Packing p = fixtures::random_packing(n, 8, rng);
        GirthValue fast = packing_girth(p, 8);
        GirthValue slow = fixtures::naive_girth(p, 8);
        CHECK(fast.at_least == slow.at_least);
        CHECK(fast.value == slow.value);
    }
}

TEST_CASE("no triangle packing has girth 2 or 3") {
    // exhaustive over all triangle packings on at most 6 vertices
    Graph g = Graph::complete(6);
    auto tris = enumerate_cliques(g, 3);
    int checked = 0;
    for (int a = 0; a < static_cast<int>(tris.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(tris.size()); ++b)
            for (int c = b + 1; c < static_cast<int>(tris.size()); ++c) {
                Packing p;
                p.q = 3;
                p.add(tris[a].vertices);
                p.add(tris[b].vertices);
                p.add(tris[c].vertices);
                if (!is_packing(g, p)) continue;
                GirthValue gv = packing_girth(p, 3);
                CHECK(gv.at_least);  // girth is never 2 or 3
                ++checked;
            }
    CHECK(checked > 0);
}

namespace {

// brute-force count of Erdos (i+2, i)-configurations in a graph via vertex
// subsets: for each (i+2)-subset, count i-families of edge-disjoint triangles
// spanning all of it with no smaller sub-configuration
long long brute_force_erdos(const Graph& g, int i) {
    long long total = 0;
    int n = g.n();
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(pick.size()) == i + 2) {
            // triangles inside the subset
            std::vector<std::vector<int>> tris;
            for (size_t a = 0; a < pick.size(); ++a)
                for (size_t b = a + 1; b < pick.size(); ++b)
                    for (size_t c = b + 1; c < pick.size(); ++c)
                        if (g.has_edge(pick[a], pick[b]) && g.has_edge(pick[a], pick[c]) &&
                            g.has_edge(pick[b], pick[c]))
                            tris.push_back({pick[a], pick[b], pick[c]});
            int t = static_cast<int>(tris.size());
            if (t < i) return;
            std::vector<int> idx(i);
            std::function<void(int, int)> choose = [&](int from2, int depth) {
                if (depth == i) {
                    Packing p;
                    p.q = 3;
                    std::set<int> span;
                    for (int k = 0; k < i; ++k) {
                        p.add(tris[idx[k]]);
                        for (int v : tris[idx[k]]) span.insert(v);
                    }
                    if (static_cast<int>(span.size()) != i + 2) return;
                    try {
                        if (!is_packing(Graph::complete(g.n()), p)) return;
                    } catch (...) {
                        return;
                    }
                    // edge-disjointness inside the host graph
                    std::set<std::pair<int, int>> used;
                    for (auto& blk : p.blocks)
                        for (size_t x = 0; x < blk.size(); ++x)
                            for (size_t y = x + 1; y < blk.size(); ++y) {
                                auto key = std::minmax(blk[x], blk[y]);
                                if (used.count(key)) return;
                                used.insert(key);
                            }
                    GirthValue gv = packing_girth(p, i - 1);
                    if (!gv.at_least) return;  // contains a smaller configuration
                    ++total;
                    return;
                }
                for (int k = from2; k < t; ++k) {
                    idx[depth] = k;
                    choose(k + 1, depth + 1);
                }
            };
            choose(0, 0);
            return;
        }
        for (int v = from; v < n; ++v) {
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return total;
}

}  // namespace

TEST_CASE("Erdos configuration enumeration vs brute force") {
    // K_6: only Pasch configurations; no 3-triangle configuration exists
    auto r6 = enumerate_erdos_configurations(Graph::complete(6), 3, 4, 1000000);
    auto& w6 = std::get<std::vector<ConfigurationWitness>>(r6);
    long long pasch6 = brute_force_erdos(Graph::complete(6), 4);
    long long three6 = brute_force_erdos(Graph::complete(6), 3);
    CHECK(three6 == 0);
    CHECK(static_cast<long long>(w6.size()) == pasch6);
    for (auto& w : w6) CHECK(w.i == 4);

    auto rc6 = enumerate_erdos_configurations(fixtures::cycle(6), 3, 6, 1000000);
    CHECK(std::get<std::vector<ConfigurationWitness>>(rc6).empty());

    auto r7 = enumerate_erdos_configurations(Graph::complete(7), 3, 4, 1000000);
    auto& w7 = std::get<std::vector<ConfigurationWitness>>(r7);
    CHECK(static_cast<long long>(w7.size()) == brute_force_erdos(Graph::complete(7), 4));
}

TEST_CASE("witnesses re-verify") {
    auto res = enumerate_erdos_configurations(Graph::complete(7), 3, 4, 1000000);
    for (auto& w : std::get<std::vector<ConfigurationWitness>>(res)) {
        CHECK(static_cast<int>(w.span.size()) == w.i * (3 - 2) + 2);
        // edge-disjoint
        std::set<std::pair<int, int>> used;
        for (auto& blk : w.cliques)
            for (size_t x = 0; x < blk.size(); ++x)
                for (size_t y = x + 1; y < blk.size(); ++y) {
                    auto key = std::minmax(blk[x], blk[y]);
                    CHECK_FALSE(used.count(key));
                    used.insert(key);
                }
        // span is exactly the union
        std::set<int> span;
        for (auto& blk : w.cliques) span.insert(blk.begin(), blk.end());
        CHECK(std::vector<int>(span.begin(), span.end()) == w.span);
        // minimality
        Packing p;
        p.q = 3;
        for (auto& blk : w.cliques) p.add(blk);
        CHECK(packing_girth(p, w.i - 1).at_least);
    }
}

TEST_CASE("overflow signal carries a count") {
    auto res = enumerate_erdos_configurations(Graph::complete(8), 3, 4, 3);
    REQUIRE(std::holds_alternative<ConfigurationOverflow>(res));
    CHECK(std::get<ConfigurationOverflow>(res).partial_count > 3);
}

TEST_CASE("completes_configuration agrees with packing girth") {
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        Packing p = fixtures::random_packing(9, 7, rng);
        if (p.size() < 2) continue;
        // remove the last block and ask whether putting it back closes a
        // configuration of size <= 4
        std::vector<int> last = p.blocks.back();
        std::vector<std::vector<int>> rest(p.blocks.begin(), p.blocks.end() - 1);
        bool fast = completes_configuration(rest, last, 3, 4);
        GirthValue whole = packing_girth(p, 4);
        Packing prefix;
        prefix.q = 3;
        prefix.blocks = rest;
        GirthValue before = packing_girth(prefix, 4);
        // the candidate closes a configuration iff the girth drops below 5
        // only when the prefix was clean
        if (before.at_least) CHECK(fast == !whole.at_least);
    }
}
