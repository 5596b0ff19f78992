#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/rational.hpp"

using namespace gf;

TEST_CASE("construction and basic counts") {
    Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(k3.edge_count() == 3);
    CHECK(k3.has_edge(1, 2));

    Graph c6 = fixtures::cycle(6);
    CHECK(c6.edge_count() == 6);
    for (int v = 0; v < 6; ++v) CHECK(c6.degree(v) == 2);

    Graph single(1, {});
    CHECK(single.n() == 1);
    CHECK(single.edge_count() == 0);
}

TEST_CASE("construction input errors") {
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), input_error);
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), input_error);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), input_error);
}

TEST_CASE("divisibility") {
    CHECK(is_divisible(Graph::complete(7), 3));
    CHECK(is_divisible(fixtures::cycle(6), 3));
    CHECK_FALSE(is_divisible(Graph::complete(6), 3));
    // K_n is K_3-divisible iff n = 1, 3 mod 6
    for (int n = 3; n <= 100; ++n) {
        bool expect = (n % 6 == 1) || (n % 6 == 3);
        CHECK(is_divisible(Graph::complete(n), 3) == expect);
    }
}

TEST_CASE("clique enumeration counts") {
    CHECK(enumerate_cliques(Graph::complete(5), 3).size() == 10);
    CHECK(enumerate_cliques(fixtures::cycle(6), 3).empty());

    auto k7 = enumerate_cliques(Graph::complete(7), 3);
    CHECK(k7.size() == 35);
    // brute-force pair count: every edge lies in n-2 = 5 triangles
    Graph g = Graph::complete(7);
    for (auto [u, v] : g.edges()) {
        int cnt = 0;
        for (auto& c : k7) {
            bool has_u = std::find(c.vertices.begin(), c.vertices.end(), u) != c.vertices.end();
            bool has_v = std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end();
            if (has_u && has_v) ++cnt;
        }
        CHECK(cnt == 5);
    }
    // lexicographic id order
    for (size_t i = 1; i < k7.size(); ++i) CHECK(k7[i - 1].vertices < k7[i].vertices);
}

TEST_CASE("enumerate_cliques matches the binomial formula") {
    for (int n = 4; n <= 12; ++n)
        for (int q = 2; q <= 5 && q <= n; ++q) {
            auto cl = enumerate_cliques(Graph::complete(n), q);
            CHECK(Int(cl.size()) == binomial(n, q));
        }
}

TEST_CASE("cliques_through") {
    CHECK(cliques_through(Graph::complete(7), {0, 1}, 3).size() == 5);
    CHECK(cliques_through(fixtures::cycle(6), {0, 1}, 3).empty());
    CHECK(cliques_through(Graph::complete(9), {0}, 3).size() == 28);  // C(8,2)
    CHECK_THROWS_AS(cliques_through(fixtures::cycle(6), {0, 2}, 3), input_error);
}

TEST_CASE("cliques_through equals containment filter on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 6 + static_cast<int>(rng.below(7));
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(0.6)) es.emplace_back(u, v);
        Graph g(n, es);
        if (g.edge_count() == 0) continue;
        auto [u, v] = g.edge(static_cast<int>(rng.below(g.edge_count())));
        auto through = cliques_through(g, {u, v}, 3);
        int expect = 0;
        for (auto& c : enumerate_cliques(g, 3)) {
            bool has_u = std::find(c.vertices.begin(), c.vertices.end(), u) != c.vertices.end();
            bool has_v = std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end();
            if (has_u && has_v) ++expect;
        }
        CHECK(static_cast<int>(through.size()) == expect);
    }
}

TEST_CASE("degree extremes") {
    auto [mn7, mx7] = degree_extremes(Graph::complete(7));
    CHECK(mn7 == 6);
    CHECK(mx7 == 6);
    auto [mnc, mxc] = degree_extremes(fixtures::cycle(6));
    CHECK(mnc == 2);
    CHECK(mxc == 2);
    Graph blow = fixtures::graham_blowup(9);
    CHECK(blow.n() == 36);
    auto [mnb, mxb] = degree_extremes(blow);
    CHECK(mnb == 26);  // 3n/4 - 1
    CHECK(mxb == 26);
}

TEST_CASE("degree sum equals twice the edge count") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(rng.below(10));
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(0.5)) es.emplace_back(u, v);
        Graph g(n, es);
        long long s = 0;
        for (int v = 0; v < n; ++v) s += g.degree(v);
        CHECK(s == 2LL * g.edge_count());
    }
}

TEST_CASE("text format round trip with comments") {
    std::istringstream in("# toy graph\n4 3\n0 1\n# middle comment\n1 2\n2 3\n");
    Graph g = read_graph_text(in);
    CHECK(g.n() == 4);
    CHECK(g.edge_count() == 3);
    std::ostringstream outs;
    write_graph_text(outs, g);
    std::istringstream back(outs.str());
    Graph g2 = read_graph_text(back);
    CHECK(g2.edges() == g.edges());
}

TEST_CASE("CliqueSet lookup and per-edge lists") {
    Graph g = Graph::complete(7);
    CliqueSet cs(g, 3);
    CHECK(cs.size() == 35);
    CHECK(cs.find({0, 1, 2}) == 0);
    CHECK(cs.find({4, 5, 6}) == 34);
    CHECK(cs.find({0, 1, 7}) == -1);
    for (int e = 0; e < g.edge_count(); ++e) CHECK(cs.through_edge(e).size() == 5);
}

TEST_CASE("edge removal produces an independent graph") {
    Graph g = Graph::complete(5);
    Graph h = g.without_edges({{0, 1}});
    CHECK(g.has_edge(0, 1));
    CHECK_FALSE(h.has_edge(0, 1));
    CHECK(h.edge_count() == 9);
    CHECK_THROWS_AS(g.without_edges({{0, 0}}), input_error);
}
