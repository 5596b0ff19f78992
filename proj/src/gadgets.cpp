#include "girthforge/gadgets.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>

#include "girthforge/matcher.hpp"
#include "girthforge/parallel.hpp"

namespace gf {

bool RootedGadget::is_internal(int v) const {
    return std::find(internal_vertices.begin(), internal_vertices.end(), v) !=
           internal_vertices.end();
}

int RootedGadget::degree(int v) const {
    int d = 0;
    for (auto [a, b] : edges)
        if (a == v || b == v) ++d;
    return d;
}

namespace {

bool is_root_of(const RootedGadget& w, int v) {
    return std::find(w.root_vertices.begin(), w.root_vertices.end(), v) !=
           w.root_vertices.end();
}

// labeled edge list -> Graph + label maps
struct LocalGraph {
    Graph g;
    std::vector<int> label_of;     // local -> label
    std::map<int, int> local_of;   // label -> local
};

LocalGraph build_local(const std::vector<std::pair<int, int>>& edges,
                       const std::vector<int>& extra_vertices = {}) {
    LocalGraph lg;
    std::set<int> labels(extra_vertices.begin(), extra_vertices.end());
    for (auto [a, b] : edges) {
        labels.insert(a);
        labels.insert(b);
    }
    for (int l : labels) {
        lg.local_of[l] = static_cast<int>(lg.label_of.size());
        lg.label_of.push_back(l);
    }
    std::vector<std::pair<int, int>> es;
    es.reserve(edges.size());
    for (auto [a, b] : edges) es.emplace_back(lg.local_of[a], lg.local_of[b]);
    lg.g = Graph(static_cast<int>(lg.label_of.size()), es);
    return lg;
}

Packing relabel_packing(const Packing& local, const std::vector<int>& label_of) {
    Packing out;
    out.q = local.q;
    for (const auto& b : local.blocks) {
        std::vector<int> lb;
        for (int v : b) lb.push_back(label_of[v]);
        out.add(std::move(lb));
    }
    return out;
}

}  // namespace

RootedGadget anti_edge(const std::vector<int>& S, int q, IdAllocator& ids) {
    if (S.size() != 2) throw input_error("anti_edge: |S| must be 2");
    if (q < 3) throw input_error("anti_edge: q must be >= 3");
    RootedGadget w;
    w.kind = GadgetKind::AntiEdge;
    w.root_vertices = S;
    std::vector<int> all = S;
    for (int i = 0; i < q - 2; ++i) {
        int x = ids.fresh();
        w.internal_vertices.push_back(x);
        all.push_back(x);
    }
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            if (all[i] == S[0] && all[j] == S[1]) continue;  // the missing pair
            w.edges.emplace_back(all[i], all[j]);
        }
    return w;
}

RootedGadget fake_edge(const std::vector<int>& S, int q, IdAllocator& ids) {
    if (S.size() != 2) throw input_error("fake_edge: |S| must be 2");
    if (q < 3) throw input_error("fake_edge: q must be >= 3");
    RootedGadget w;
    w.kind = GadgetKind::FakeEdge;
    w.root_vertices = S;
    std::vector<int> spine = S;
    for (int i = 0; i < q - 2; ++i) {
        int x = ids.fresh();
        w.internal_vertices.push_back(x);
        spine.push_back(x);
    }
    for (size_t i = 0; i < spine.size(); ++i)
        for (size_t j = i + 1; j < spine.size(); ++j) {
            if (spine[i] == S[0] && spine[j] == S[1]) continue;
            RootedGadget a = anti_edge({spine[i], spine[j]}, q, ids);
            for (int v : a.internal_vertices) w.internal_vertices.push_back(v);
            for (auto e : a.edges) w.edges.push_back(e);
        }
    return w;
}

bool has_edge_divisibility_signature(const RootedGadget& w, int q) {
    long long eq = static_cast<long long>(q) * (q - 1) / 2;
    if (w.edge_count() % eq != 1 % eq) return false;
    for (int v : w.root_vertices)
        if (w.degree(v) % (q - 1) != 1 % (q - 1)) return false;
    for (int v : w.internal_vertices)
        if (w.degree(v) % (q - 1) != 0) return false;
    return true;
}

RootedBooster g_sphere(const std::vector<int>& root, int g, IdAllocator& ids) {
    if (root.size() != 3) throw input_error("g_sphere: root must be a triangle");
    if (g < 2) throw input_error("g_sphere: g must be >= 2");
    int v = root[0];
    // boundary cycle b_1..b_2g; b_1 and b_2g are the two non-apex root vertices
    std::vector<int> b(2 * g + 1, -1);
    b[1] = root[1];
    b[2 * g] = root[2];
    RootedBooster out;
    out.gadget.kind = GadgetKind::Sphere;
    out.gadget.root_vertices = root;
    int u = ids.fresh();
    out.gadget.internal_vertices.push_back(u);
    for (int j = 2; j <= 2 * g - 1; ++j) {
        b[j] = ids.fresh();
        out.gadget.internal_vertices.push_back(b[j]);
    }
    // body edges; b_2g b_1 belongs to the root triangle, not the body
    for (int j = 2; j <= 2 * g - 1; ++j) out.gadget.edges.emplace_back(v, b[j]);
    for (int j = 1; j <= 2 * g; ++j) out.gadget.edges.emplace_back(u, b[j]);
    for (int j = 1; j <= 2 * g - 1; ++j) out.gadget.edges.emplace_back(b[j], b[j + 1]);
    out.root = root;
    std::sort(out.root.begin(), out.root.end());
    out.on.q = 3;
    out.off.q = 3;
    // on: 2g triangles alternating v, u around the cycle (wrapping to b_1)
    for (int j = 1; j <= 2 * g; ++j) {
        int apex = (j % 2 == 1) ? v : u;
        int nxt = (j == 2 * g) ? b[1] : b[j + 1];
        out.on.add({apex, b[j], nxt});
    }
    // off: 2g-1 triangles alternating u, v; no wrap
    for (int j = 1; j <= 2 * g - 1; ++j) {
        int apex = (j % 2 == 1) ? u : v;
        out.off.add({apex, b[j], b[j + 1]});
    }
    return out;
}

int rooted_degeneracy(const RootedGadget& w, const std::vector<int>& roots) {
    std::set<int> remaining(w.internal_vertices.begin(), w.internal_vertices.end());
    for (int v : w.root_vertices)
        if (std::find(roots.begin(), roots.end(), v) == roots.end()) remaining.insert(v);
    std::set<int> anchored(roots.begin(), roots.end());
    auto deg_into = [&](int v) {
        int d = 0;
        for (auto [a, b] : w.edges) {
            int other = -1;
            if (a == v) other = b;
            else if (b == v) other = a;
            else continue;
            if (remaining.count(other) || anchored.count(other)) ++d;
        }
        return d;
    };
    int worst = 0;
    while (!remaining.empty()) {
        int best = -1, best_d = 1 << 30;
        for (int v : remaining) {
            int d = deg_into(v);
            if (d < best_d) {
                best_d = d;
                best = v;
            }
        }
        worst = std::max(worst, best_d);
        remaining.erase(best);
    }
    return worst;
}

int rooted_degeneracy_exhaustive(const RootedGadget& w, const std::vector<int>& roots) {
    std::vector<int> free;
    for (int v : w.internal_vertices) free.push_back(v);
    for (int v : w.root_vertices)
        if (std::find(roots.begin(), roots.end(), v) == roots.end()) free.push_back(v);
    std::sort(free.begin(), free.end());
    int best = 1 << 30;
    std::set<int> rootset(roots.begin(), roots.end());
    do {
        std::set<int> placed(rootset);
        int worst = 0;
        for (int v : free) {
            int d = 0;
            for (auto [a, b] : w.edges) {
                int other = -1;
                if (a == v) other = b;
                else if (b == v) other = a;
                else continue;
                if (placed.count(other)) ++d;
            }
            worst = std::max(worst, d);
            placed.insert(v);
        }
        best = std::min(best, worst);
    } while (std::next_permutation(free.begin(), free.end()));
    return best;
}

GirthValue rooted_girth_at(const Packing& p, const std::vector<int>& roots, int m_max) {
    std::set<int> rootset(roots.begin(), roots.end());
    int n = p.size();
    // outside-vertex sets per block
    std::vector<std::vector<int>> outside(n);
    for (int i = 0; i < n; ++i)
        for (int v : p.blocks[i])
            if (!rootset.count(v)) outside[i].push_back(v);
    for (int m = 1; m <= std::min(m_max, n); ++m) {
        // subset of exactly m blocks with |outside union| <= m-1
        std::vector<int> stack;
        std::set<int> out_verts;
        std::function<bool(int, int)> dfs = [&](int from, int count) -> bool {
            if (count == m) return static_cast<int>(out_verts.size()) < m;
            if (static_cast<int>(out_verts.size()) > m - 1) return false;
            for (int i = from; i < n; ++i) {
                std::vector<int> added;
                for (int v : outside[i])
                    if (!out_verts.count(v)) {
                        out_verts.insert(v);
                        added.push_back(v);
                    }
                if (static_cast<int>(out_verts.size()) <= m - 1) {
                    if (dfs(i + 1, count + 1)) return true;
                }
                for (int v : added) out_verts.erase(v);
            }
            return false;
        };
        if (dfs(0, 0)) return {m, false};
    }
    return {m_max + 1, true};
}

bool verify_booster(const RootedBooster& b, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    // no body edge inside the root
    for (auto [x, y] : b.gadget.edges)
        if (is_root_of(b.gadget, x) && is_root_of(b.gadget, y))
            return fail("body edge inside root");
    LocalGraph body = build_local(b.gadget.edges);
    Packing off_local;
    off_local.q = b.off.q;
    for (const auto& bl : b.off.blocks) {
        std::vector<int> lb;
        for (int v : bl) {
            auto it = body.local_of.find(v);
            if (it == body.local_of.end()) return fail("off block uses a vertex outside the body");
            lb.push_back(it->second);
        }
        off_local.add(std::move(lb));
    }
    try {
        if (!is_decomposition(body.g, off_local)) return fail("off is not a decomposition of B");
    } catch (const input_error& e) {
        return fail(std::string("off: ") + e.what());
    }
    // root edges
    std::vector<std::pair<int, int>> with_root = b.gadget.edges;
    if (b.root.size() >= 2)
        for (size_t i = 0; i < b.root.size(); ++i)
            for (size_t j = i + 1; j < b.root.size(); ++j)
                with_root.emplace_back(b.root[i], b.root[j]);
    LocalGraph full = build_local(with_root);
    Packing on_local;
    on_local.q = b.on.q;
    for (const auto& bl : b.on.blocks) {
        std::vector<int> lb;
        for (int v : bl) {
            auto it = full.local_of.find(v);
            if (it == full.local_of.end()) return fail("on block uses an unknown vertex");
            lb.push_back(it->second);
        }
        on_local.add(std::move(lb));
    }
    try {
        if (!is_decomposition(full.g, on_local)) return fail("on is not a decomposition of B ∪ R");
    } catch (const input_error& e) {
        return fail(std::string("on: ") + e.what());
    }
    std::vector<int> root_sorted = b.root;
    std::sort(root_sorted.begin(), root_sorted.end());
    for (const auto& bl : b.on.blocks)
        if (bl == root_sorted) return fail("on contains the root clique");
    // disjoint clique sets
    std::set<std::vector<int>> on_set(b.on.blocks.begin(), b.on.blocks.end());
    for (const auto& bl : b.off.blocks)
        if (on_set.count(bl)) return fail("on and off share a clique");
    return true;
}

int rooted_girth(const RootedBooster& b) {
    std::string why;
    if (!verify_booster(b, &why)) throw input_error("rooted_girth: invalid booster: " + why);
    GirthValue g_on = packing_girth(b.on, b.on.size(), 2);
    Packing off_r = b.off;
    off_r.add(b.root);
    GirthValue g_off = packing_girth(off_r, off_r.size(), 2);
    GirthValue g_rooted = rooted_girth_at(b.on, b.root, b.on.size());
    int m = g_on.value;
    m = std::min(m, g_off.value);
    m = std::min(m, g_rooted.value);
    return m;
}

bool verify_absorber(const RootedBooster& a, const Graph& L, int q, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!is_divisible(L, q)) throw input_error("verify_absorber: L is not divisible");
    if (L.edge_count() == 0)
        return a.gadget.edges.empty() ? true : fail("empty L with nonempty absorber body");
    // L's vertex labels are the gadget roots
    std::set<int> roots(a.gadget.root_vertices.begin(), a.gadget.root_vertices.end());
    for (auto [u, vv] : L.edges())
        if (!roots.count(u) || !roots.count(vv))
            return fail("L has an edge outside the root set");
    // V(L) independent in A
    for (auto [x, y] : a.gadget.edges)
        if (roots.count(x) && roots.count(y)) return fail("root pair adjacent in body");
    if (a.gadget.edges.empty()) return fail("nonempty L with empty absorber body");
    // search for both decompositions (the stored packings are not trusted)
    LocalGraph body = build_local(a.gadget.edges);
    auto r1 = exact_decomposition(body.g, q, 0, 10000);
    if (r1.status != SearchStatus::Found) return fail("body is not decomposable");
    std::vector<std::pair<int, int>> union_edges = a.gadget.edges;
    for (auto e : L.edges()) union_edges.push_back(e);
    LocalGraph full = build_local(union_edges);
    auto r2 = exact_decomposition(full.g, q, 0, 10000);
    if (r2.status != SearchStatus::Found) return fail("body ∪ L is not decomposable");
    // if witnesses are attached they must themselves verify
    if (!a.off.blocks.empty()) {
        Packing off_local;
        off_local.q = q;
        for (const auto& bl : a.off.blocks) {
            std::vector<int> lb;
            for (int v : bl) lb.push_back(body.local_of.at(v));
            off_local.add(std::move(lb));
        }
        if (!is_decomposition(body.g, off_local)) return fail("stored off witness invalid");
    }
    if (!a.on.blocks.empty()) {
        Packing on_local;
        on_local.q = q;
        for (const auto& bl : a.on.blocks) {
            std::vector<int> lb;
            for (int v : bl) lb.push_back(full.local_of.at(v));
            on_local.add(std::move(lb));
        }
        if (!is_decomposition(full.g, on_local)) return fail("stored on witness invalid");
    }
    return true;
}

namespace {

// one randomized attempt at an absorber body for L; q = 3 path
std::optional<RootedBooster> random_absorber_attempt(const std::vector<int>& l_vertices,
                                                     const std::vector<std::pair<int, int>>& l_edges,
                                                     int q, int n_internal,
                                                     long long cover_budget_ms, Rng& rng,
                                                     IdAllocator& ids) {
    std::vector<int> internals;
    for (int i = 0; i < n_internal; ++i) internals.push_back(ids.fresh());
    // per-root demand: q-2 body edges at r per incident L-edge
    std::map<int, int> need;
    for (auto [u, v] : l_edges) {
        need[u] += q - 2;
        need[v] += q - 2;
    }
    std::set<std::pair<int, int>> used;
    auto norm = [](int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
    std::vector<std::vector<int>> gen_blocks;
    auto try_block = [&](std::vector<int> verts) -> bool {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        if (static_cast<int>(verts.size()) != q) return false;
        for (size_t i = 0; i < verts.size(); ++i)
            for (size_t j = i + 1; j < verts.size(); ++j)
                if (used.count(norm(verts[i], verts[j]))) return false;
        for (size_t i = 0; i < verts.size(); ++i)
            for (size_t j = i + 1; j < verts.size(); ++j)
                used.insert(norm(verts[i], verts[j]));
        gen_blocks.push_back(verts);
        return true;
    };
    // cover the per-root demand with blocks of one root + q-1 internals
    for (auto& [r, demand] : need) {
        int placed = 0;
        int guard = 0;
        while (placed * (q - 1) < demand && guard++ < 200) {
            std::vector<int> verts{r};
            while (static_cast<int>(verts.size()) < q)
                verts.push_back(internals[rng.below_int(n_internal)]);
            if (try_block(verts)) ++placed;
        }
        if (placed * (q - 1) < demand) return std::nullopt;
    }
    // slack: a few internal-only blocks
    int extra = 1 + rng.below_int(3);
    int guard = 0;
    while (extra > 0 && guard++ < 200) {
        std::vector<int> verts;
        while (static_cast<int>(verts.size()) < q)
            verts.push_back(internals[rng.below_int(n_internal)]);
        if (try_block(verts)) --extra;
    }
    std::vector<std::pair<int, int>> body_edges(used.begin(), used.end());
    // body ∪ L must decompose; the body itself decomposes by construction
    std::vector<std::pair<int, int>> union_edges = body_edges;
    for (auto e : l_edges) union_edges.push_back(e);
    LocalGraph full = build_local(union_edges);
    if (!is_divisible(full.g, q)) return std::nullopt;
    auto res = exact_decomposition(full.g, q, 0, cover_budget_ms, rng.next());
    if (res.status != SearchStatus::Found) return std::nullopt;
    RootedBooster out;
    out.gadget.kind = GadgetKind::Absorber;
    out.gadget.root_vertices = l_vertices;
    // only internals actually used
    std::set<int> touched;
    for (auto [a, b] : body_edges) {
        touched.insert(a);
        touched.insert(b);
    }
    for (int x : internals)
        if (touched.count(x)) out.gadget.internal_vertices.push_back(x);
    out.gadget.edges = body_edges;
    out.root = l_vertices;
    std::sort(out.root.begin(), out.root.end());
    out.off.q = q;
    for (auto& b : gen_blocks) out.off.add(b);
    out.on = relabel_packing(res.packing, full.label_of);
    return out;
}

}  // namespace

std::optional<RootedBooster> find_absorber(const std::vector<int>& l_vertices,
                                           const std::vector<std::pair<int, int>>& l_edges,
                                           int q, const AbsorberBudget& budget, Rng& rng,
                                           IdAllocator& ids, AbsorberFailure* fail) {
    if (l_edges.empty()) {
        RootedBooster empty;
        empty.gadget.kind = GadgetKind::Absorber;
        empty.gadget.root_vertices = l_vertices;
        empty.root = l_vertices;
        std::sort(empty.root.begin(), empty.root.end());
        empty.on.q = q;
        empty.off.q = q;
        return empty;
    }
    LocalGraph lg = build_local(l_edges, l_vertices);
    if (!is_divisible(lg.g, q)) throw input_error("find_absorber: L is not divisible");

    // per-component recursion for disconnected L with divisible components
    {
        std::vector<int> comp(lg.g.n(), -1);
        int nc = 0;
        for (int s = 0; s < lg.g.n(); ++s) {
            if (comp[s] >= 0 || lg.g.degree(s) == 0) continue;
            std::vector<int> stack{s};
            comp[s] = nc;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                lg.g.neighbors(v).for_each([&](int w) {
                    if (comp[w] < 0) {
                        comp[w] = nc;
                        stack.push_back(w);
                    }
                });
            }
            ++nc;
        }
        if (nc >= 2) {
            std::vector<std::vector<std::pair<int, int>>> comp_edges(nc);
            for (auto [u, v] : l_edges)
                comp_edges[comp[lg.local_of[u]]].emplace_back(u, v);
            bool all_div = true;
            for (auto& ce : comp_edges) {
                LocalGraph cg = build_local(ce);
                if (!is_divisible(cg.g, q)) {
                    all_div = false;
                    break;
                }
            }
            if (all_div) {
                RootedBooster out;
                out.gadget.kind = GadgetKind::Absorber;
                out.gadget.root_vertices = l_vertices;
                out.root = l_vertices;
                std::sort(out.root.begin(), out.root.end());
                out.on.q = q;
                out.off.q = q;
                for (auto& ce : comp_edges) {
                    std::set<int> vs;
                    for (auto [u, v] : ce) {
                        vs.insert(u);
                        vs.insert(v);
                    }
                    auto part = find_absorber(std::vector<int>(vs.begin(), vs.end()), ce, q,
                                              budget, rng, ids, fail);
                    if (!part) return std::nullopt;
                    for (int x : part->gadget.internal_vertices)
                        out.gadget.internal_vertices.push_back(x);
                    for (auto e : part->gadget.edges) out.gadget.edges.push_back(e);
                    for (auto& b : part->on.blocks) out.on.add(b);
                    for (auto& b : part->off.blocks) out.off.add(b);
                }
                return out;
            }
        }
    }

    // library route: L decomposes -> one booster per block (q = 3 spheres)
    if (q == 3) {
        auto dec = exact_decomposition(lg.g, q, 0, 1000, rng.next());
        if (dec.status == SearchStatus::Found) {
            Packing host_blocks = relabel_packing(dec.packing, lg.label_of);
            RootedBooster out;
            out.gadget.kind = GadgetKind::Absorber;
            out.gadget.root_vertices = l_vertices;
            out.root = l_vertices;
            std::sort(out.root.begin(), out.root.end());
            out.on.q = q;
            out.off.q = q;
            for (const auto& blk : host_blocks.blocks) {
                RootedBooster s = g_sphere(blk, 2, ids);
                for (int x : s.gadget.internal_vertices)
                    out.gadget.internal_vertices.push_back(x);
                for (auto e : s.gadget.edges) out.gadget.edges.push_back(e);
                for (auto& b : s.on.blocks) out.on.add(b);
                for (auto& b : s.off.blocks) out.off.add(b);
            }
            return out;
        }
    }

    // randomized bodies with exact-cover verification, parallel seeded restarts
    std::atomic<long long> attempts{0};
    uint64_t base_seed = rng.fork();
    const int lo = 2;  // internal count range: 2 .. max_internal
    std::optional<RootedBooster> found =
        first_success<RootedBooster>(budget.max_attempts, [&](int k) -> std::optional<RootedBooster> {
            ++attempts;
            Rng local(base_seed + 0x9e3779b9ULL * static_cast<uint64_t>(k));
            int span = budget.max_internal - lo + 1;
            int n_internal = lo + (span > 0 ? static_cast<int>(local.below(span)) : 0);
            IdAllocator local_ids(1 << 20);  // scratch ids, remapped below
            return random_absorber_attempt(l_vertices, l_edges, q, n_internal,
                                           budget.cover_budget_ms, local, local_ids);
        });
    if (!found) {
        if (fail) {
            fail->attempts = attempts.load();
            fail->reason = "randomized absorber search exhausted its budget";
        }
        return std::nullopt;
    }
    // remap scratch internals to caller-allocated fresh ids
    std::map<int, int> remap;
    for (int x : found->gadget.internal_vertices) remap[x] = ids.fresh();
    auto apply = [&](int v) { return remap.count(v) ? remap[v] : v; };
    for (auto& x : found->gadget.internal_vertices) x = remap[x];
    for (auto& [a, b] : found->gadget.edges) {
        a = apply(a);
        b = apply(b);
    }
    for (auto& blk : found->on.blocks) {
        for (auto& v : blk) v = apply(v);
        std::sort(blk.begin(), blk.end());
    }
    for (auto& blk : found->off.blocks) {
        for (auto& v : blk) v = apply(v);
        std::sort(blk.begin(), blk.end());
    }
    return found;
}

}  // namespace gf
