#include "girthforge/matcher.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "girthforge/parallel.hpp"

namespace gf {

namespace {

using Clock = std::chrono::steady_clock;

// Exact cover over clique columns with per-row availability counts (a
// counts-based variant of dancing links; the column chosen is always one with
// the fewest available rows).
struct CoverSearch {
    const Graph* g;
    int q;
    int prune_bound;  // forbid configurations of size <= prune_bound (0 = off)
    std::vector<std::vector<int>> rows;       // row -> edge ids
    std::vector<std::vector<int>> row_verts;  // row -> vertices (sorted)
    std::vector<std::vector<int>> cols;       // edge id -> rows through it
    std::vector<int> row_blocked;             // # covered columns of the row
    std::vector<char> col_covered;
    std::vector<int> col_avail;               // # unblocked rows per column
    std::vector<int> chosen_rows;
    std::vector<std::vector<int>> chosen_blocks;
    long long nodes = 0;
    long long deadline_ms;
    Clock::time_point t0;
    Rng rng;
    bool timed_out = false;

    bool time_up() {
        if ((nodes & 1023) == 0) {
            auto el = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
            if (el > deadline_ms) timed_out = true;
        }
        return timed_out;
    }

    void block_row(int r, std::vector<int>& touched) {
        if (row_blocked[r]++ == 0) {
            for (int c : rows[r])
                if (!col_covered[c]) --col_avail[c];
            touched.push_back(r);
        } else {
            touched.push_back(r);
        }
    }

    void unblock_rows(const std::vector<int>& touched) {
        for (auto it = touched.rbegin(); it != touched.rend(); ++it) {
            int r = *it;
            if (--row_blocked[r] == 0)
                for (int c : rows[r])
                    if (!col_covered[c]) ++col_avail[c];
        }
    }

    // covers all columns of row r; returns undo info
    void place(int r, std::vector<int>& covered_cols, std::vector<int>& touched_rows) {
        for (int c : rows[r]) {
            col_covered[c] = 1;
            covered_cols.push_back(c);
            for (int r2 : cols[c]) block_row(r2, touched_rows);
        }
        chosen_rows.push_back(r);
        chosen_blocks.push_back(row_verts[r]);
    }

    void unplace(const std::vector<int>& covered_cols, const std::vector<int>& touched_rows) {
        chosen_rows.pop_back();
        chosen_blocks.pop_back();
        unblock_rows(touched_rows);
        for (auto it = covered_cols.rbegin(); it != covered_cols.rend(); ++it)
            col_covered[*it] = 0;
    }

    bool solve() {
        ++nodes;
        if (time_up()) return false;
        int best_c = -1, best_avail = 1 << 30;
        int m = static_cast<int>(cols.size());
        for (int c = 0; c < m; ++c) {
            if (col_covered[c]) continue;
            if (col_avail[c] < best_avail) {
                best_avail = col_avail[c];
                best_c = c;
                if (best_avail == 0) break;
            }
        }
        if (best_c < 0) return true;  // everything covered
        if (best_avail == 0) return false;
        std::vector<int> cand;
        for (int r : cols[best_c])
            if (row_blocked[r] == 0) cand.push_back(r);
        rng.shuffle(cand);
        for (int r : cand) {
            if (prune_bound >= 3 &&
                completes_configuration(chosen_blocks, row_verts[r], q, prune_bound))
                continue;
            std::vector<int> cc, tr;
            place(r, cc, tr);
            if (solve()) return true;
            unplace(cc, tr);
            if (timed_out) return false;
        }
        return false;
    }
};

}  // namespace

DecompositionResult exact_decomposition(const Graph& g, int q, int girth_min,
                                        long long time_budget_ms, uint64_t seed) {
    DecompositionResult out;
    if (!is_divisible(g, q)) {
        out.status = SearchStatus::ProvenInfeasible;
        return out;
    }
    if (g.edge_count() == 0) {
        out.status = SearchStatus::Found;
        out.packing.q = q;
        return out;
    }
    CoverSearch cs;
    cs.g = &g;
    cs.q = q;
    cs.prune_bound = girth_min - 1;
    auto cliques = enumerate_cliques(g, q);
    cs.cols.assign(g.edge_count(), {});
    for (auto& c : cliques) {
        int r = static_cast<int>(cs.rows.size());
        std::vector<int> eids;
        for (size_t i = 0; i < c.vertices.size(); ++i)
            for (size_t j = i + 1; j < c.vertices.size(); ++j) {
                int id = g.edge_id(c.vertices[i], c.vertices[j]);
                eids.push_back(id);
                cs.cols[id].push_back(r);
            }
        cs.rows.push_back(std::move(eids));
        cs.row_verts.push_back(c.vertices);
    }
    cs.row_blocked.assign(cs.rows.size(), 0);
    cs.col_covered.assign(g.edge_count(), 0);
    cs.col_avail.assign(g.edge_count(), 0);
    for (int c = 0; c < g.edge_count(); ++c)
        cs.col_avail[c] = static_cast<int>(cs.cols[c].size());
    cs.deadline_ms = time_budget_ms;
    cs.t0 = Clock::now();
    cs.rng = Rng(seed);
    bool found = cs.solve();
    out.nodes_explored = cs.nodes;
    if (found) {
        out.status = SearchStatus::Found;
        out.packing.q = q;
        for (auto& b : cs.chosen_blocks) out.packing.add(b);
        return out;
    }
    out.status = cs.timed_out ? SearchStatus::BudgetExhausted : SearchStatus::ProvenInfeasible;
    return out;
}

// ---- treasury matching ----

namespace {

struct TreasuryIndex {
    // hyperedge lists: 0..|g1|-1 design, then |g1|.. reserves
    const Treasury* t;
    int n_design = 0;
    std::vector<std::vector<int>> members;     // vertex ids per hyperedge
    std::vector<int> clique_of;                // host clique id per hyperedge
    std::vector<std::vector<int>> by_vertex;   // vertex -> hyperedges
    // materialized H: per clique id, H-edges through it
    std::map<int, std::vector<int>> h_by_clique;

    void build(const Treasury& tre) {
        t = &tre;
        n_design = static_cast<int>(tre.g1.edges.size());
        int nv = std::max(tre.g1.n_vertices, tre.g2.n_vertices);
        by_vertex.assign(nv, {});
        for (int i = 0; i < n_design; ++i) {
            members.push_back(tre.g1.edges[i]);
            clique_of.push_back(tre.g1.clique_of_edge[i]);
            for (int v : tre.g1.edges[i]) by_vertex[v].push_back(i);
        }
        for (size_t i = 0; i < tre.g2.edges.size(); ++i) {
            int idx = n_design + static_cast<int>(i);
            members.push_back(tre.g2.edges[i]);
            clique_of.push_back(tre.g2.clique_of_edge[i]);
            for (int v : tre.g2.edges[i]) by_vertex[v].push_back(idx);
        }
        for (size_t z = 0; z < tre.h.edges.size(); ++z)
            for (int cid : tre.h.edges[z]) h_by_clique[cid].push_back(static_cast<int>(z));
    }
};

bool lazy_admissible(const Treasury& t, const std::vector<int>& chosen_cliques,
                     int candidate) {
    int bound = t.h.lazy_bound;
    if (bound < 3) return true;
    const CliqueSet& cs = *t.cliques;
    std::vector<std::vector<int>> base;
    base.reserve(chosen_cliques.size() + 8);
    for (int cid : chosen_cliques) base.push_back(cs.vertices(cid));
    const std::vector<int>& cand_block = cs.vertices(candidate);
    // plain girth plus every projection member
    if (completes_configuration(base, cand_block, cs.q(), bound)) return false;
    for (const auto& m : t.projection_family) {
        std::vector<std::vector<int>> aug = base;
        for (int cid : m)
            if (cid != candidate &&
                std::find(chosen_cliques.begin(), chosen_cliques.end(), cid) ==
                    chosen_cliques.end())
                aug.push_back(cs.vertices(cid));
        if (completes_configuration(aug, cand_block, cs.q(), bound)) return false;
    }
    return true;
}

bool materialized_admissible(const Treasury& t, const TreasuryIndex& idx,
                             const std::set<int>& chosen_set, int candidate) {
    auto it = idx.h_by_clique.find(candidate);
    if (it == idx.h_by_clique.end()) return true;
    for (int z : it->second) {
        bool complete = true;
        for (int cid : t.h.edges[z])
            if (cid != candidate && !chosen_set.count(cid)) {
                complete = false;
                break;
            }
        if (complete) return false;
    }
    return true;
}

// used by the post-search re-verification: checks both H representations
bool full_admissible(const Treasury& t, const TreasuryIndex& idx,
                     const std::vector<int>& others, int cand) {
    std::set<int> others_set(others.begin(), others.end());
    if (!t.h.edges.empty() && !materialized_admissible(t, idx, others_set, cand))
        return false;
    if (t.h.lazy_bound >= 3 && !lazy_admissible(t, others, cand)) return false;
    return true;
}

struct MatchSearch {
    const Treasury* t;
    const TreasuryIndex* idx;
    bool use_lazy;
    std::vector<char> vertex_used;
    std::vector<char> a_covered;
    std::vector<int> order;  // A-vertices in visit order
    std::vector<int> picked; // hyperedge per covered step
    std::vector<int> chosen_cliques;
    std::set<int> chosen_set;
    long long budget;
    Rng* rng;

    bool admissible(int he) {
        for (int v : idx->members[he])
            if (vertex_used[v]) return false;
        int cid = idx->clique_of[he];
        if (!use_lazy && !materialized_admissible(*t, *idx, chosen_set, cid)) return false;
        if (use_lazy && !lazy_admissible(*t, chosen_cliques, cid)) return false;
        // when H is hybrid (materialized part + lazy flag) check both
        if (use_lazy && !t->h.edges.empty() &&
            !materialized_admissible(*t, *idx, chosen_set, cid))
            return false;
        return true;
    }

    void place(int he) {
        for (int v : idx->members[he]) vertex_used[v] = 1;
        int cid = idx->clique_of[he];
        chosen_cliques.push_back(cid);
        chosen_set.insert(cid);
        picked.push_back(he);
    }

    void unplace(int he) {
        for (int v : idx->members[he]) vertex_used[v] = 0;
        int cid = idx->clique_of[he];
        chosen_cliques.pop_back();
        chosen_set.erase(cid);
        picked.pop_back();
    }

    bool dfs(size_t pos) {
        if (--budget < 0) return false;
        while (pos < order.size() && vertex_used[order[pos]]) ++pos;
        if (pos == order.size()) return true;
        int a = order[pos];
        std::vector<int> design_cand, reserve_cand;
        for (int he : idx->by_vertex[a]) {
            if (he < idx->n_design) design_cand.push_back(he);
            else reserve_cand.push_back(he);
        }
        rng->shuffle(design_cand);
        rng->shuffle(reserve_cand);
        bool design_had_option = false;
        for (int he : design_cand) {
            if (!admissible(he)) continue;
            design_had_option = true;
            place(he);
            if (dfs(pos + 1)) return true;
            unplace(he);
            if (budget < 0) return false;
        }
        // reserves only when no design hyperedge is admissible here
        if (!design_had_option) {
            for (int he : reserve_cand) {
                if (!admissible(he)) continue;
                place(he);
                if (dfs(pos + 1)) return true;
                unplace(he);
                if (budget < 0) return false;
            }
        }
        return false;
    }
};

}  // namespace

bool h_admissible(const Treasury& t, const std::vector<int>& chosen_cliques,
                  int candidate_clique, bool use_lazy) {
    if (use_lazy) {
        Treasury tmp = t;
        if (tmp.h.lazy_bound < 3) tmp.h.lazy_bound = 0;
        return lazy_admissible(tmp, chosen_cliques, candidate_clique);
    }
    TreasuryIndex idx;
    idx.build(t);
    std::set<int> chosen_set(chosen_cliques.begin(), chosen_cliques.end());
    return materialized_admissible(t, idx, chosen_set, candidate_clique);
}

Packing matching_blocks(const Treasury& t, const Matching& m) {
    Packing p;
    p.q = t.cliques->q();
    for (int i : m.design_edges) p.add(t.cliques->vertices(t.g1.clique_of_edge[i]));
    for (int i : m.reserve_edges) p.add(t.cliques->vertices(t.g2.clique_of_edge[i]));
    return p;
}

std::optional<Matching> find_perfect_matching(const Treasury& t, Rng& rng,
                                              const MatcherOptions& opts,
                                              MatchingFailure* fail) {
    TreasuryIndex idx;
    idx.build(t);
    bool lazy = (t.h.lazy || !t.projection_family.empty() || opts.force_lazy) &&
                !opts.force_materialized;
    // A = V(G1) ∩ V(G2): the edges that must be covered, marked by the builder
    std::vector<int> a_vertices;
    for (int v = 0; v < static_cast<int>(t.g2.in_A.size()); ++v)
        if (t.g2.in_A[v]) a_vertices.push_back(v);
    int best_uncovered = static_cast<int>(a_vertices.size());
    for (int attempt = 0; attempt < opts.restarts; ++attempt) {
        MatchSearch ms;
        ms.t = &t;
        ms.idx = &idx;
        ms.use_lazy = lazy;
        ms.vertex_used.assign(std::max(t.g1.n_vertices, t.g2.n_vertices), 0);
        ms.order = a_vertices;
        Rng local(rng.fork() + attempt);
        local.shuffle(ms.order);
        ms.budget = opts.backtrack_budget;
        ms.rng = &local;
        if (ms.dfs(0)) {
            Matching m;
            for (int he : ms.picked) {
                if (he < idx.n_design) m.design_edges.push_back(he);
                else m.reserve_edges.push_back(he - idx.n_design);
            }
            // independent re-verification: disjointness, A-coverage, H-avoidance
            std::vector<char> used(std::max(t.g1.n_vertices, t.g2.n_vertices), 0);
            bool ok = true;
            auto touch = [&](const std::vector<int>& mem) {
                for (int v : mem) {
                    if (used[v]) ok = false;
                    used[v] = 1;
                }
            };
            for (int i : m.design_edges) touch(t.g1.edges[i]);
            for (int i : m.reserve_edges) touch(t.g2.edges[i]);
            for (int a : a_vertices)
                if (!used[a]) ok = false;
            std::vector<int> all_cliques;
            for (int i : m.design_edges) all_cliques.push_back(t.g1.clique_of_edge[i]);
            for (int i : m.reserve_edges) all_cliques.push_back(t.g2.clique_of_edge[i]);
            for (size_t k = 0; k < all_cliques.size() && ok; ++k) {
                std::vector<int> rest;
                for (size_t j = 0; j < all_cliques.size(); ++j)
                    if (j != k) rest.push_back(all_cliques[j]);
                if (!full_admissible(t, idx, rest, all_cliques[k])) ok = false;
            }
            if (ok) return m;
        }
        int unc = 0;
        for (int a : ms.order)
            if (!ms.vertex_used[a]) ++unc;
        best_uncovered = std::min(best_uncovered, unc);
    }
    if (fail) {
        fail->uncovered = best_uncovered;
        fail->total_A = static_cast<int>(a_vertices.size());
        fail->restarts_used = opts.restarts;
    }
    return std::nullopt;
}

}  // namespace gf
