#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gf {

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row-major adjacency bitsets over 64-bit words. Dense graphs, n up to ~500.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    void set(int i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    Bitset operator&(const Bitset& o) const {
        Bitset r(nbits_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
        return r;
    }

    void and_with(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    }

    // iterate set bits >= from
    template <typename F>
    void for_each(F&& f, int from = 0) const {
        for (size_t wi = from >> 6; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            if (wi == static_cast<size_t>(from >> 6) && (from & 63))
                w &= ~0ULL << (from & 63);
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<int>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    int size_bits() const { return nbits_; }

private:
    int nbits_ = 0;
    std::vector<uint64_t> words_;
};

// Immutable dense simple graph. Vertices are 0..n-1; edges carry dense ids
// assigned in lexicographic (u < v) order at construction.
class Graph {
public:
    Graph() = default;
    // edges: list of (u, v) pairs. Throws input_error on out-of-range vertex,
    // self-loop, or duplicate edge (after unordering).
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    static Graph complete(int n);

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_edge(int u, int v) const { return u >= 0 && v >= 0 && u < n_ && v < n_ && adj_[u].test(v); }
    const Bitset& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return degree_[v]; }
    int min_degree() const;
    int max_degree() const;

    // dense edge ids
    int edge_id(int u, int v) const;  // -1 when absent
    std::pair<int, int> edge(int id) const { return edges_[id]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // new graph with the given edges removed (must be present)
    Graph without_edges(const std::vector<std::pair<int, int>>& remove) const;
    // new graph with edges added (must be absent)
    Graph with_edges(const std::vector<std::pair<int, int>>& add) const;

    bool operator==(const Graph& o) const { return n_ == n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
    std::vector<int> degree_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> edge_id_;  // n*n lookup, -1 when absent
};

// K_q-divisibility: binom(q,2) | e(G) and (q-1) | d(v) for all v.
bool is_divisible(const Graph& g, int q);

// extremes as a pair (used by a couple of callers that want both)
std::pair<int, int> degree_extremes(const Graph& g);

// Text format: "n m" header, then m lines "u v", '#' starts a comment line.
Graph read_graph_text(std::istream& in);
void write_graph_text(std::ostream& out, const Graph& g);
Graph load_graph_file(const std::string& path);
void save_graph_file(const std::string& path, const Graph& g);

// ---- cliques ----

struct Clique {
    std::vector<int> vertices;  // strictly increasing
    int id = -1;                // dense index into the enumeration order
};

// Enumeration handle: all q-cliques of a graph in lexicographic order, with
// dense ids and per-edge incidence. Shared by the LP, matcher and treasury
// layers so clique ids mean the same thing everywhere.
class CliqueSet {
public:
    CliqueSet() = default;
    CliqueSet(const Graph& g, int q);

    int q() const { return q_; }
    int size() const { return static_cast<int>(cliques_.size()); }
    const std::vector<int>& vertices(int id) const { return cliques_[id]; }
    const std::vector<int>& edge_ids(int id) const { return clique_edges_[id]; }
    const std::vector<int>& through_edge(int edge_id) const { return by_edge_[edge_id]; }
    // id lookup by sorted vertex tuple; -1 when absent
    int find(const std::vector<int>& sorted_vertices) const;

    const Graph* host() const { return host_; }

private:
    const Graph* host_ = nullptr;
    int q_ = 0;
    std::vector<std::vector<int>> cliques_;
    std::vector<std::vector<int>> clique_edges_;
    std::vector<std::vector<int>> by_edge_;
    // packed key -> id (keys fit in u64 for n <= 512, q <= 5; otherwise we
    // fall back to binary search over the lexicographic order)
    std::vector<std::pair<uint64_t, int>> key_index_;
    bool keyed_ = false;
    uint64_t pack_key(const std::vector<int>& vs) const;
};

// All q-cliques in lexicographic vertex order (ids 0..k-1 in that order).
std::vector<Clique> enumerate_cliques(const Graph& g, int q);

// All q-cliques containing the clique S (|S| <= q). Throws input_error when S
// is not a clique of g.
std::vector<Clique> cliques_through(const Graph& g, const std::vector<int>& S, int q);

}  // namespace gf
