#include "girthforge/girth.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gf {

void Packing::add(std::vector<int> b) {
    std::sort(b.begin(), b.end());
    blocks.push_back(std::move(b));
}

void Packing::sort_blocks() { std::sort(blocks.begin(), blocks.end()); }

bool is_packing(const Graph& g, const Packing& p) {
    std::vector<char> used(g.edge_count(), 0);
    for (const auto& b : p.blocks) {
        if (static_cast<int>(b.size()) != p.q) return false;
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j) {
                int id = g.edge_id(b[i], b[j]);
                if (id < 0) throw input_error("packing: block is not a clique of the host");
                if (used[id]) return false;
                used[id] = 1;
            }
    }
    return true;
}

bool is_decomposition(const Graph& g, const Packing& p) {
    std::vector<int> cover(g.edge_count(), 0);
    for (const auto& b : p.blocks) {
        if (static_cast<int>(b.size()) != p.q) return false;
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j) {
                int id = g.edge_id(b[i], b[j]);
                if (id < 0) throw input_error("decomposition: block is not a clique of the host");
                ++cover[id];
            }
    }
    for (int c : cover)
        if (c != 1) return false;
    return true;
}

namespace {

// span as a sorted small vector; returns count of vertices not already present
int new_vertices(const std::vector<int>& span, const std::vector<int>& block) {
    int cnt = 0;
    for (int v : block)
        if (!std::binary_search(span.begin(), span.end(), v)) ++cnt;
    return cnt;
}

std::vector<int> merge_span(const std::vector<int>& span, const std::vector<int>& block) {
    std::vector<int> out;
    out.reserve(span.size() + block.size());
    std::merge(span.begin(), span.end(), block.begin(), block.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct ConfigSearch {
    const std::vector<std::vector<int>>* blocks;
    int q;
    int budget_i;                       // max blocks
    int budget_span;                    // max span size
    std::map<int, std::vector<int>> by_vertex;  // vertex -> block indices

    void index() {
        for (size_t i = 0; i < blocks->size(); ++i)
            for (int v : (*blocks)[i]) by_vertex[v].push_back(static_cast<int>(i));
    }

    // does any subset of size in [2, budget_i] containing `seed` blocks span
    // at most size(q-2)+2 vertices? seed indices are already "in".
    bool exists_from(std::vector<char>& in, std::vector<int>& span, int count, int success_min) {
        if (count >= 2 && count >= success_min &&
            static_cast<int>(span.size()) <= count * (q - 2) + 2)
            return true;
        if (count >= budget_i) return false;
        // candidates: blocks touching the span, not yet chosen
        std::set<int> cand;
        for (int v : span) {
            auto it = by_vertex.find(v);
            if (it == by_vertex.end()) continue;
            for (int b : it->second)
                if (!in[b]) cand.insert(b);
        }
        for (int b : cand) {
            int nv = new_vertices(span, (*blocks)[b]);
            if (static_cast<int>(span.size()) + nv > budget_span) continue;
            std::vector<int> saved = span;
            span = merge_span(span, (*blocks)[b]);
            in[b] = 1;
            if (exists_from(in, span, count + 1, success_min)) return true;
            in[b] = 0;
            span = std::move(saved);
        }
        return false;
    }
};

}  // namespace

GirthValue packing_girth(const Packing& p, int g_max, int i_min) {
    if (g_max < 2) throw input_error("packing_girth: g_max must be >= 2");
    if (i_min < 2) i_min = 2;
    // try each target i in increasing order; a (i(q-2)+2, i)-configuration is
    // connected (a disconnected one would have a part beating the budget), so
    // rooted connected search is exhaustive
    for (int i = i_min; i <= g_max; ++i) {
        if (i > p.size()) break;
        ConfigSearch cs{&p.blocks, p.q, i, i * (p.q - 2) + 2, {}};
        cs.index();
        for (size_t r = 0; r < p.blocks.size(); ++r) {
            std::vector<char> in(p.blocks.size(), 0);
            in[r] = 1;
            std::vector<int> span = p.blocks[r];
            if (cs.exists_from(in, span, 1, i)) return {i, false};
        }
    }
    return {g_max + 1, true};
}

bool completes_configuration(const std::vector<std::vector<int>>& chosen,
                             const std::vector<int>& candidate, int q, int bound) {
    if (bound < 2) return false;
    ConfigSearch cs{&chosen, q, bound, bound * (q - 2) + 2, {}};
    cs.index();
    std::vector<char> in(chosen.size(), 0);
    std::vector<int> span = candidate;
    // candidate participates but is not part of `chosen`; count starts at 1
    return cs.exists_from(in, span, 1, 2);
}

namespace {

struct ErdosEnum {
    const Graph* g;
    std::vector<std::vector<int>> cliques;  // all q-cliques, id order
    int q, g_bound, i_min;
    long long limit;
    std::map<int, std::vector<int>> by_vertex;
    std::set<std::vector<int>> seen;  // sorted id-sets already emitted or visited
    std::vector<ConfigurationWitness> out;
    long long produced = 0;
    bool overflow = false;

    bool share_edge(const std::vector<int>& a, const std::vector<int>& b) const {
        int common = 0;
        for (int v : a)
            if (std::binary_search(b.begin(), b.end(), v)) ++common;
        return common >= 2;
    }

    // girth of the set restricted to sizes < its own size
    bool contains_smaller_config(const std::vector<int>& ids) const {
        std::vector<std::vector<int>> bl;
        for (int id : ids) bl.push_back(cliques[id]);
        Packing p;
        p.q = q;
        p.blocks = bl;
        GirthValue gv = packing_girth(p, static_cast<int>(ids.size()) - 1, 2);
        return !gv.at_least;
    }

    void emit(const std::vector<int>& ids, const std::vector<int>& span) {
        int i = static_cast<int>(ids.size());
        if (static_cast<int>(span.size()) != i * (q - 2) + 2) return;
        if (contains_smaller_config(ids)) return;
        ++produced;
        if (produced > limit) {
            overflow = true;
            return;
        }
        ConfigurationWitness w;
        w.i = i;
        for (int id : ids) w.cliques.push_back(cliques[id]);
        w.span = span;
        out.push_back(std::move(w));
    }

    void grow(std::vector<int>& ids, std::vector<int>& span, int root) {
        if (overflow) return;
        int t = static_cast<int>(ids.size());
        if (t >= 2 && static_cast<int>(span.size()) <= t * (q - 2) + 2) {
            // the set itself is a configuration; supersets are never Erdos
            if (t >= i_min) {
                std::vector<int> sorted = ids;
                std::sort(sorted.begin(), sorted.end());
                if (seen.insert(sorted).second) emit(sorted, span);
            }
            return;
        }
        if (t >= g_bound) return;
        std::set<int> cand;
        for (int v : span) {
            auto it = by_vertex.find(v);
            if (it == by_vertex.end()) continue;
            for (int b : it->second)
                if (b > root && std::find(ids.begin(), ids.end(), b) == ids.end()) cand.insert(b);
        }
        for (int b : cand) {
            if (overflow) return;
            bool edge_ok = true;
            for (int id : ids)
                if (share_edge(cliques[id], cliques[b])) {
                    edge_ok = false;
                    break;
                }
            if (!edge_ok) continue;
            int nv = new_vertices(span, cliques[b]);
            if (static_cast<int>(span.size()) + nv > g_bound * (q - 2) + 2) continue;
            std::vector<int> saved = span;
            span = merge_span(span, cliques[b]);
            ids.push_back(b);
            grow(ids, span, root);
            ids.pop_back();
            span = std::move(saved);
        }
    }
};

}  // namespace

ConfigurationResult enumerate_erdos_configurations(const Graph& g, int q, int g_bound,
                                                   long long limit, int i_min) {
    if (g_bound < 3) return std::vector<ConfigurationWitness>{};
    ErdosEnum e;
    e.g = &g;
    for (auto& c : enumerate_cliques(g, q)) e.cliques.push_back(c.vertices);
    e.q = q;
    e.g_bound = g_bound;
    e.i_min = std::max(3, i_min);
    e.limit = limit;
    for (size_t i = 0; i < e.cliques.size(); ++i)
        for (int v : e.cliques[i]) e.by_vertex[v].push_back(static_cast<int>(i));
    for (size_t r = 0; r < e.cliques.size() && !e.overflow; ++r) {
        std::vector<int> ids{static_cast<int>(r)};
        std::vector<int> span = e.cliques[r];
        e.grow(ids, span, static_cast<int>(r));
    }
    if (e.overflow) return ConfigurationOverflow{e.produced};
    // deterministic order
    std::sort(e.out.begin(), e.out.end(), [](const ConfigurationWitness& a, const ConfigurationWitness& b) {
        if (a.i != b.i) return a.i < b.i;
        return a.cliques < b.cliques;
    });
    return e.out;
}

}  // namespace gf
