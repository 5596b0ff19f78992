#include "girthforge/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace gf {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 0) throw input_error("graph: negative vertex count");
    adj_.assign(n, Bitset(n));
    degree_.assign(n, 0);
    edge_id_.assign(static_cast<size_t>(n) * n, -1);
    std::vector<std::pair<int, int>> norm;
    norm.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw input_error("graph: vertex out of range");
        if (u == v) throw input_error("graph: self-loop");
        if (u > v) std::swap(u, v);
        norm.emplace_back(u, v);
    }
    std::sort(norm.begin(), norm.end());
    for (size_t i = 1; i < norm.size(); ++i)
        if (norm[i] == norm[i - 1]) throw input_error("graph: duplicate edge");
    edges_ = std::move(norm);
    for (size_t id = 0; id < edges_.size(); ++id) {
        auto [u, v] = edges_[id];
        adj_[u].set(v);
        adj_[v].set(u);
        ++degree_[u];
        ++degree_[v];
        edge_id_[static_cast<size_t>(u) * n_ + v] = static_cast<int>(id);
        edge_id_[static_cast<size_t>(v) * n_ + u] = static_cast<int>(id);
    }
}

Graph Graph::complete(int n) {
    std::vector<std::pair<int, int>> es;
    es.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph(n, es);
}

int Graph::min_degree() const {
    int m = n_ ? degree_[0] : 0;
    for (int d : degree_) m = std::min(m, d);
    return m;
}

int Graph::max_degree() const {
    int m = 0;
    for (int d : degree_) m = std::max(m, d);
    return m;
}

int Graph::edge_id(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return -1;
    return edge_id_[static_cast<size_t>(u) * n_ + v];
}

Graph Graph::without_edges(const std::vector<std::pair<int, int>>& remove) const {
    std::vector<char> drop(edges_.size(), 0);
    for (auto [u, v] : remove) {
        int id = edge_id(u, v);
        if (id < 0) throw input_error("without_edges: edge not present");
        drop[id] = 1;
    }
    std::vector<std::pair<int, int>> keep;
    keep.reserve(edges_.size());
    for (size_t i = 0; i < edges_.size(); ++i)
        if (!drop[i]) keep.push_back(edges_[i]);
    return Graph(n_, keep);
}

Graph Graph::with_edges(const std::vector<std::pair<int, int>>& add) const {
    std::vector<std::pair<int, int>> es = edges_;
    for (auto [u, v] : add) {
        if (has_edge(u, v)) throw input_error("with_edges: edge already present");
        es.emplace_back(u, v);
    }
    return Graph(n_, es);
}

bool is_divisible(const Graph& g, int q) {
    if (q < 3) throw input_error("is_divisible: q must be >= 3");
    long long eq = static_cast<long long>(q) * (q - 1) / 2;
    if (g.edge_count() % eq != 0) return false;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) % (q - 1) != 0) return false;
    return true;
}

std::pair<int, int> degree_extremes(const Graph& g) {
    return {g.min_degree(), g.max_degree()};
}

Graph read_graph_text(std::istream& in) {
    std::string line;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        if (n < 0) {
            if (ls >> n >> m) continue;
            continue;  // blank/comment before header
        }
        long long u, v;
        if (ls >> u >> v) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (n < 0) throw input_error("graph text: missing header");
    if (m >= 0 && static_cast<long long>(edges.size()) != m)
        throw input_error("graph text: edge count mismatch");
    return Graph(static_cast<int>(n), edges);
}

void write_graph_text(std::ostream& out, const Graph& g) {
    out << g.n() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file: " + path);
    return read_graph_text(in);
}

void save_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open graph file for writing: " + path);
    write_graph_text(out, g);
}

namespace {

// lexicographic DFS over common neighborhoods
void extend_clique(const Graph& g, std::vector<int>& cur, const Bitset& common, int q,
                   const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(cur.size()) == q) {
        emit(cur);
        return;
    }
    int from = cur.empty() ? 0 : cur.back() + 1;
    common.for_each(
        [&](int v) {
            Bitset next = common & g.neighbors(v);
            cur.push_back(v);
            extend_clique(g, cur, next, q, emit);
            cur.pop_back();
        },
        from);
}

}  // namespace

std::vector<Clique> enumerate_cliques(const Graph& g, int q) {
    if (q < 2) throw input_error("enumerate_cliques: q must be >= 2");
    std::vector<Clique> out;
    std::vector<int> cur;
    Bitset all(g.n());
    for (int v = 0; v < g.n(); ++v) all.set(v);
    extend_clique(g, cur, all, q, [&](const std::vector<int>& vs) {
        Clique c;
        c.vertices = vs;
        c.id = static_cast<int>(out.size());
        out.push_back(std::move(c));
    });
    return out;
}

std::vector<Clique> cliques_through(const Graph& g, const std::vector<int>& S, int q) {
    if (static_cast<int>(S.size()) > q) throw input_error("cliques_through: |S| > q");
    for (size_t i = 0; i < S.size(); ++i) {
        if (S[i] < 0 || S[i] >= g.n()) throw input_error("cliques_through: vertex out of range");
        for (size_t j = i + 1; j < S.size(); ++j)
            if (!g.has_edge(S[i], S[j])) throw input_error("cliques_through: S is not a clique");
    }
    Bitset common(g.n());
    for (int v = 0; v < g.n(); ++v) common.set(v);
    for (int s : S) {
        common.and_with(g.neighbors(s));
        common.reset(s);
    }
    std::vector<int> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    int need = q - static_cast<int>(S.size());
    std::vector<Clique> out;
    std::vector<int> cur;
    extend_clique(g, cur, common, need, [&](const std::vector<int>& extra) {
        Clique c;
        c.vertices = sorted;
        c.vertices.insert(c.vertices.end(), extra.begin(), extra.end());
        std::sort(c.vertices.begin(), c.vertices.end());
        c.id = static_cast<int>(out.size());
        out.push_back(std::move(c));
    });
    // dedup is unnecessary: extras are distinct sets, so tuples are distinct
    std::sort(out.begin(), out.end(),
              [](const Clique& a, const Clique& b) { return a.vertices < b.vertices; });
    for (size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
    return out;
}

CliqueSet::CliqueSet(const Graph& g, int q) : host_(&g), q_(q) {
    auto cl = enumerate_cliques(g, q);
    cliques_.reserve(cl.size());
    clique_edges_.reserve(cl.size());
    by_edge_.assign(g.edge_count(), {});
    for (auto& c : cl) {
        std::vector<int> eids;
        for (size_t i = 0; i < c.vertices.size(); ++i)
            for (size_t j = i + 1; j < c.vertices.size(); ++j) {
                int id = g.edge_id(c.vertices[i], c.vertices[j]);
                eids.push_back(id);
                by_edge_[id].push_back(static_cast<int>(cliques_.size()));
            }
        cliques_.push_back(c.vertices);
        clique_edges_.push_back(std::move(eids));
    }
    keyed_ = g.n() <= 512 && q <= 6;
    if (keyed_) {
        key_index_.reserve(cliques_.size());
        for (size_t i = 0; i < cliques_.size(); ++i)
            key_index_.emplace_back(pack_key(cliques_[i]), static_cast<int>(i));
        std::sort(key_index_.begin(), key_index_.end());
    }
}

uint64_t CliqueSet::pack_key(const std::vector<int>& vs) const {
    uint64_t k = 0;
    for (int v : vs) k = (k << 10) | static_cast<uint64_t>(v + 1);
    return k;
}

int CliqueSet::find(const std::vector<int>& sorted_vertices) const {
    if (static_cast<int>(sorted_vertices.size()) != q_) return -1;
    if (keyed_) {
        uint64_t k = pack_key(sorted_vertices);
        auto it = std::lower_bound(key_index_.begin(), key_index_.end(),
                                   std::make_pair(k, -1));
        if (it != key_index_.end() && it->first == k) return it->second;
        return -1;
    }
    auto it = std::lower_bound(cliques_.begin(), cliques_.end(), sorted_vertices);
    if (it != cliques_.end() && *it == sorted_vertices)
        return static_cast<int>(it - cliques_.begin());
    return -1;
}

}  // namespace gf
