#include "girthforge/omniabsorber.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "girthforge/embedding.hpp"
#include "girthforge/treasury.hpp"

namespace gf {

namespace {

std::vector<std::pair<int, int>> canon_edges(std::vector<std::pair<int, int>> es) {
    for (auto& [u, v] : es)
        if (u > v) std::swap(u, v);
    std::sort(es.begin(), es.end());
    return es;
}

}  // namespace

Packing OmniAbsorber::decomposition(const std::vector<std::pair<int, int>>& l_edges) const {
    auto want = canon_edges(l_edges);
    for (auto [u, v] : want)
        if (!x.has_edge(u, v)) throw input_error("decomposition: L is not a subgraph of X");
    int hit = -1;
    if (!want.empty()) {
        for (size_t i = 0; i < entries.size(); ++i)
            if (canon_edges(entries[i].l_edges) == want) {
                hit = static_cast<int>(i);
                break;
            }
        if (hit < 0) throw input_error("decomposition: no absorber entry for this L");
    }
    // base selection: on-blocks of the hit entry, off-blocks elsewhere
    Packing base;
    base.q = q;
    std::set<std::vector<int>> on_set;
    for (size_t i = 0; i < entries.size(); ++i) {
        const Packing& src = (static_cast<int>(i) == hit) ? entries[i].on : entries[i].off;
        for (const auto& b : src.blocks) base.add(b);
        if (static_cast<int>(i) == hit)
            for (const auto& b : entries[i].on.blocks) on_set.insert(b);
    }
    if (!boosted) return base;
    // canonical boost: replace each family clique by its booster's on or off
    std::set<std::vector<int>> in_base(base.blocks.begin(), base.blocks.end());
    Packing out;
    out.q = q;
    for (size_t fi = 0; fi < family.size(); ++fi) {
        const Packing& sel = in_base.count(family[fi]) ? boosters[fi].on : boosters[fi].off;
        for (const auto& b : sel.blocks) out.add(b);
    }
    return out;
}

std::optional<OmniAbsorber> build_private_omniabsorber(const Graph& g, const Graph& x, int q,
                                                       const OmniBudget& budget, Rng& rng,
                                                       OmniFailure* fail) {
    auto fret = [&](const std::string& stage, const std::string& detail) {
        if (fail) {
            fail->stage = stage;
            fail->detail = detail;
        }
        return std::nullopt;
    };
    if (x.n() != g.n()) throw input_error("build_private_omniabsorber: X must span the host");
    for (auto [u, v] : x.edges())
        if (!g.has_edge(u, v)) throw input_error("build_private_omniabsorber: X not inside G");
    if (x.edge_count() > budget.max_x_edges)
        return fret("divisible-enumeration",
                    "X has " + std::to_string(x.edge_count()) + " edges, budget " +
                        std::to_string(budget.max_x_edges));

    OmniAbsorber out;
    out.q = q;
    out.host = g;
    out.x = x;

    auto div = enumerate_divisible_subgraphs(x, q);
    if (div.overflow) return fret("divisible-enumeration", "2^e(X) exceeds the cap");

    // abstract absorbers, internals allocated above the host id space
    IdAllocator ids(g.n());
    struct Pending {
        std::vector<std::pair<int, int>> l_edges;
        RootedBooster abs;
    };
    std::vector<Pending> pend;
    for (auto& sub : div.subgraphs) {
        if (sub.empty()) continue;
        std::vector<std::pair<int, int>> l_edges;
        std::set<int> l_verts;
        for (int xe : sub) {
            auto [u, v] = x.edge(xe);
            l_edges.emplace_back(u, v);
            l_verts.insert(u);
            l_verts.insert(v);
        }
        AbsorberFailure afail;
        auto abs = find_absorber(std::vector<int>(l_verts.begin(), l_verts.end()), l_edges, q,
                                 budget.absorber, rng, ids, &afail);
        if (!abs)
            return fret("absorber-search", "L with " + std::to_string(l_edges.size()) +
                                               " edges: " + afail.reason);
        pend.push_back({canon_edges(l_edges), std::move(*abs)});
    }

    // embed all bodies edge-disjointly into G \ X
    SupergraphSystem sys;
    sys.base = x;
    int cbound = 1;
    for (auto& p : pend) {
        SystemMember m;
        m.gadget = p.abs.gadget;
        m.rooted_edges = p.l_edges;
        cbound = std::max(cbound, std::max(m.gadget.edge_count(), m.gadget.vertex_count()));
        sys.members.push_back(std::move(m));
    }
    sys.C = cbound;
    EmbedFailure efail;
    auto emb = embed_system(sys, g, budget.c_prime, rng, &efail);
    if (!emb)
        return fret("embedding", "member " + std::to_string(efail.member) + ": " + efail.detail);

    // translate each absorber into host coordinates
    std::vector<std::pair<int, int>> all_body;
    for (size_t i = 0; i < pend.size(); ++i) {
        const auto& map = emb->placement[i];
        auto tr = [&](int v) {
            auto it = map.find(v);
            return it == map.end() ? v : it->second;
        };
        AbsorberEntry e;
        e.l_edges = pend[i].l_edges;
        for (auto [a, b] : pend[i].abs.gadget.edges) {
            e.body_edges.emplace_back(tr(a), tr(b));
            all_body.emplace_back(tr(a), tr(b));
        }
        e.on.q = q;
        for (auto& blk : pend[i].abs.on.blocks) {
            std::vector<int> hb;
            for (int v : blk) hb.push_back(tr(v));
            e.on.add(std::move(hb));
        }
        e.off.q = q;
        for (auto& blk : pend[i].abs.off.blocks) {
            std::vector<int> hb;
            for (int v : blk) hb.push_back(tr(v));
            e.off.add(std::move(hb));
        }
        out.entries.push_back(std::move(e));
    }
    out.a = Graph(g.n(), all_body);

    // family: every on/off block of every entry, deduplicated
    std::set<std::vector<int>> fam;
    for (auto& e : out.entries) {
        for (auto& b : e.on.blocks) fam.insert(b);
        for (auto& b : e.off.blocks) fam.insert(b);
    }
    out.family.assign(fam.begin(), fam.end());

    // refinement: max family members per edge of A ∪ X
    {
        std::map<std::pair<int, int>, int> per_edge;
        for (auto& blk : out.family)
            for (size_t i = 0; i < blk.size(); ++i)
                for (size_t j = i + 1; j < blk.size(); ++j)
                    ++per_edge[{blk[i], blk[j]}];
        out.refinement = 0;
        for (auto& [e, c] : per_edge) out.refinement = std::max(out.refinement, c);
    }

    std::string why;
    if (!verify_omniabsorber(out, &why)) return fret("verify", why);
    return out;
}

namespace {

// all triangles of every booster, tagged by (family index, mode, root blocks)
struct SelectionUniverse {
    const OmniAbsorber* a;
    // per family index: on blocks, off blocks (host vertices)
    std::vector<const Packing*> on;
    std::vector<const Packing*> off;

    // conflict graph: two family cliques conflict when they share an edge
    std::vector<std::vector<char>> conflict;

    void build(const OmniAbsorber& abs) {
        a = &abs;
        size_t k = abs.family.size();
        on.resize(k);
        off.resize(k);
        for (size_t i = 0; i < k; ++i) {
            on[i] = &abs.boosters[i].on;
            off[i] = &abs.boosters[i].off;
        }
        conflict.assign(k, std::vector<char>(k, 0));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j) {
                int shared = 0;
                for (int v : abs.family[i])
                    if (std::binary_search(abs.family[j].begin(), abs.family[j].end(), v))
                        ++shared;
                if (shared >= 2) conflict[i][j] = conflict[j][i] = 1;
            }
    }
};

// enumerate matchable ON-subsets (pairwise conflict-free) up to `cap`;
// returns false when the cap was exceeded
bool enumerate_selections(const SelectionUniverse& u,
                          const std::function<bool(const std::vector<char>&)>& visit,
                          long long cap) {
    size_t k = u.conflict.size();
    std::vector<char> onset(k, 0);
    long long count = 0;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == k) {
            if (++count > cap) return false;
            return visit(onset);
        }
        onset[i] = 0;
        if (!rec(i + 1)) return false;
        bool ok = true;
        for (size_t j = 0; j < i; ++j)
            if (onset[j] && u.conflict[i][j]) {
                ok = false;
                break;
            }
        if (ok) {
            onset[i] = 1;
            if (!rec(i + 1)) return false;
            onset[i] = 0;
        }
        return true;
    };
    return rec(0);
}

struct BoosterTri {
    std::vector<int> verts;  // sorted
    int fam;
    int mode;  // 0 off, 1 on
};

// Searches a realizable forbidden configuration of size <= bound among the
// tagged booster triangles: members pairwise edge-disjoint, one mode per
// booster, and the forced-ON roots pairwise conflict-free (so the whole
// configuration fits inside some matchable on/off selection). When
// through_fam >= 0, only configurations using that booster are sought (the
// incremental guard during placement).
bool booster_configuration_exists(const std::vector<BoosterTri>& tris, size_t n_fams,
                                  const std::vector<std::vector<char>>& conflict, int bound,
                                  int through_fam, std::string* why) {
    if (bound < 3) return false;
    std::map<int, std::vector<int>> by_vertex;
    for (size_t i = 0; i < tris.size(); ++i)
        for (int v : tris[i].verts) by_vertex[v].push_back(static_cast<int>(i));
    int budget_span = bound + 2;
    std::vector<int> mode_of(n_fams, -1);
    std::vector<int> stack;
    bool bad = false;

    auto realizable = [&]() {
        std::vector<int> ons;
        for (size_t fi = 0; fi < n_fams; ++fi)
            if (mode_of[fi] == 1) ons.push_back(static_cast<int>(fi));
        for (size_t i = 0; i < ons.size(); ++i)
            for (size_t j = i + 1; j < ons.size(); ++j)
                if (conflict[ons[i]][ons[j]]) return false;
        return true;
    };

    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& span) {
        if (bad) return;
        int t = static_cast<int>(stack.size());
        if (t >= 2 && static_cast<int>(span.size()) <= t + 2 && realizable()) {
            bool uses_focus = through_fam < 0;
            if (!uses_focus)
                for (int si : stack)
                    if (tris[si].fam == through_fam) uses_focus = true;
            if (uses_focus) {
                bad = true;
                if (why)
                    *why = "matchable selection contains a configuration of size " +
                           std::to_string(t);
                return;
            }
        }
        if (t >= bound) return;
        std::set<int> cand;
        for (int v : span) {
            auto it = by_vertex.find(v);
            if (it == by_vertex.end()) continue;
            for (int ti : it->second)
                if (std::find(stack.begin(), stack.end(), ti) == stack.end()) cand.insert(ti);
        }
        for (int ti : cand) {
            if (bad) return;
            const BoosterTri& tr = tris[ti];
            int prev = mode_of[tr.fam];
            if (prev >= 0 && prev != tr.mode) continue;  // both modes of one booster
            bool edge_ok = true;
            for (int si : stack) {
                int shared = 0;
                for (int v : tris[si].verts)
                    if (std::binary_search(tr.verts.begin(), tr.verts.end(), v)) ++shared;
                if (shared >= 2) {
                    edge_ok = false;
                    break;
                }
            }
            if (!edge_ok) continue;
            int nv = 0;
            for (int v : tr.verts)
                if (!std::binary_search(span.begin(), span.end(), v)) ++nv;
            if (static_cast<int>(span.size()) + nv > budget_span) continue;
            std::vector<int> saved = span;
            for (int v : tr.verts)
                if (!std::binary_search(span.begin(), span.end(), v))
                    span.insert(std::upper_bound(span.begin(), span.end(), v), v);
            stack.push_back(ti);
            mode_of[tr.fam] = tr.mode;
            grow(span);
            stack.pop_back();
            if (prev < 0) mode_of[tr.fam] = -1;
            span = saved;
        }
    };

    for (size_t r = 0; r < tris.size() && !bad; ++r) {
        if (through_fam >= 0 && tris[r].fam != through_fam) continue;
        stack.assign(1, static_cast<int>(r));
        std::vector<int> span = tris[r].verts;
        std::sort(span.begin(), span.end());
        mode_of.assign(n_fams, -1);
        mode_of[tris[r].fam] = tris[r].mode;
        grow(span);
    }
    return bad;
}

std::vector<BoosterTri> booster_triangles(const OmniAbsorber& a) {
    std::vector<BoosterTri> tris;
    for (size_t fi = 0; fi < a.family.size(); ++fi) {
        if (a.boosters[fi].on.blocks.empty() && a.boosters[fi].off.blocks.empty()) continue;
        for (auto& b : a.boosters[fi].off.blocks) tris.push_back({b, static_cast<int>(fi), 0});
        for (auto& b : a.boosters[fi].on.blocks) tris.push_back({b, static_cast<int>(fi), 1});
    }
    return tris;
}

}  // namespace

bool collective_girth_at_least(const OmniAbsorber& a, int g, long long selection_cap,
                               std::string* why) {
    if (!a.boosted) {
        // unboosted: check every decomposition-function output directly
        auto div = enumerate_divisible_subgraphs(a.x, a.q);
        if (div.overflow) {
            if (why) *why = "divisible enumeration overflow";
            return false;
        }
        for (auto& sub : div.subgraphs) {
            std::vector<std::pair<int, int>> l_edges;
            for (int xe : sub) l_edges.push_back(a.x.edge(xe));
            Packing p = a.decomposition(l_edges);
            GirthValue gv = packing_girth(p, g - 1, 2);
            if (!gv.at_least) {
                if (why) *why = "Q_A output with girth " + std::to_string(gv.value);
                return false;
            }
        }
        return true;
    }
    // boosted: all matchable on/off selections
    SelectionUniverse u;
    u.build(a);
    bool exhaustive_ok = true;
    bool fits = enumerate_selections(
        u,
        [&](const std::vector<char>& onset) {
            Packing p;
            p.q = a.q;
            for (size_t fi = 0; fi < a.family.size(); ++fi) {
                const Packing& sel = onset[fi] ? a.boosters[fi].on : a.boosters[fi].off;
                for (auto& b : sel.blocks) p.add(b);
            }
            GirthValue gv = packing_girth(p, g - 1, 2);
            if (!gv.at_least) {
                exhaustive_ok = false;
                if (why) *why = "selection with girth " + std::to_string(gv.value);
                return false;
            }
            return true;
        },
        selection_cap);
    if (!exhaustive_ok) return false;
    if (fits) return true;
    // too many selections: configuration-intersection route
    SelectionUniverse uni;
    uni.build(a);
    return !booster_configuration_exists(booster_triangles(a), a.family.size(), uni.conflict,
                                         g - 1, -1, why);
}

bool verify_omniabsorber(const OmniAbsorber& a, std::string* why, long long selection_cap) {
    auto fret = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    // A and X edge-disjoint
    for (auto [u, v] : a.a.edges())
        if (a.x.has_edge(u, v)) return fret("A and X share an edge");
    auto div = enumerate_divisible_subgraphs(a.x, a.q);
    if (div.overflow) return fret("divisible enumeration overflow");
    for (auto& sub : div.subgraphs) {
        std::vector<std::pair<int, int>> l_edges;
        for (int xe : sub) l_edges.push_back(a.x.edge(xe));
        Packing p = a.decomposition(l_edges);
        std::vector<std::pair<int, int>> union_edges = a.a.edges();
        for (auto e : l_edges) union_edges.push_back(e);
        Graph target(a.host.n(), union_edges);
        if (!is_decomposition(target, p))
            return fret("Q_A(L) fails to decompose A ∪ L for |L| = " +
                        std::to_string(l_edges.size()));
    }
    if (a.boosted && a.collective_girth_bound > 0) {
        std::string sub_why;
        if (!collective_girth_at_least(a, a.collective_girth_bound, selection_cap, &sub_why))
            return fret("collective girth: " + sub_why);
    }
    return true;
}

std::optional<OmniAbsorber> boost_omniabsorber(const OmniAbsorber& base, const Graph& g_host,
                                               int g, const BoostBudget& budget, Rng& rng,
                                               OmniFailure* fail) {
    auto fret = [&](const std::string& stage, const std::string& detail) {
        if (fail) {
            fail->stage = stage;
            fail->detail = detail;
        }
        return std::nullopt;
    };
    if (base.q != 3) return fret("boost", "sphere boosters exist for q = 3 only");
    int sphere_g = budget.sphere_g > 0 ? budget.sphere_g : g;
    if (sphere_g < 2) sphere_g = 2;

    OmniAbsorber out = base;
    out.boosted = true;
    out.collective_girth_bound = g;
    out.boosters.clear();
    out.boosters.resize(base.family.size());

    int n = g_host.n();
    std::set<uint64_t> used;  // edges of A ∪ X ∪ placed bodies
    auto key = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        return static_cast<uint64_t>(u) * n + v;
    };
    for (auto [u, v] : base.a.edges()) used.insert(key(u, v));
    for (auto [u, v] : base.x.edges()) used.insert(key(u, v));

    if (2 * sphere_g < g)
        return fret("boost", "sphere parameter too small for the girth target");

    // conflict matrix over the family (shared edges forbid joint ON selection)
    std::vector<std::vector<char>> conflict(base.family.size(),
                                            std::vector<char>(base.family.size(), 0));
    for (size_t i = 0; i < base.family.size(); ++i)
        for (size_t j = i + 1; j < base.family.size(); ++j) {
            int shared = 0;
            for (int v : base.family[i])
                if (std::binary_search(base.family[j].begin(), base.family[j].end(), v)) ++shared;
            if (shared >= 2) conflict[i][j] = conflict[j][i] = 1;
        }

    // incremental high-girth guard: tagged triangles of committed boosters
    std::vector<BoosterTri> committed;
    std::vector<int> order(base.family.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);

    for (int fi : order) {
        const std::vector<int>& root = base.family[fi];
        bool placed = false;
        for (int attempt = 0; attempt < budget.placement_retries && !placed; ++attempt) {
            // random labeling of the root triangle as (v, b1, b2g)
            std::vector<int> lab = root;
            rng.shuffle(lab);
            IdAllocator ids(n);
            RootedBooster sph = g_sphere(lab, sphere_g, ids);
            // place internals on random distinct host vertices
            std::map<int, int> place;
            std::set<int> taken(root.begin(), root.end());
            bool ok = true;
            for (int x : sph.gadget.internal_vertices) {
                int v = -1;
                for (int tries = 0; tries < 60; ++tries) {
                    int c = static_cast<int>(rng.below(n));
                    if (!taken.count(c)) {
                        v = c;
                        break;
                    }
                }
                if (v < 0) {
                    ok = false;
                    break;
                }
                place[x] = v;
                taken.insert(v);
            }
            if (!ok) continue;
            auto tr = [&](int v) {
                auto it = place.find(v);
                return it == place.end() ? v : it->second;
            };
            std::vector<std::pair<int, int>> body;
            for (auto [a, b] : sph.gadget.edges) {
                int u = tr(a), v = tr(b);
                if (!g_host.has_edge(u, v) || used.count(key(u, v))) {
                    ok = false;
                    break;
                }
                body.emplace_back(u, v);
            }
            if (!ok) continue;
            // translate the booster to host coordinates
            RootedBooster hb;
            hb.gadget.kind = GadgetKind::Sphere;
            hb.gadget.root_vertices = root;
            for (int x : sph.gadget.internal_vertices)
                hb.gadget.internal_vertices.push_back(tr(x));
            hb.gadget.edges = body;
            hb.root = root;
            hb.on.q = 3;
            hb.off.q = 3;
            for (auto& b : sph.on.blocks) {
                std::vector<int> v3{tr(b[0]), tr(b[1]), tr(b[2])};
                hb.on.add(v3);
            }
            for (auto& b : sph.off.blocks) {
                std::vector<int> v3{tr(b[0]), tr(b[1]), tr(b[2])};
                hb.off.add(v3);
            }
            // high-girth rejection: no realizable configuration of size < g
            // through the new booster against anything already committed
            if (g >= 4) {
                std::vector<BoosterTri> pool = committed;
                for (auto& b : hb.off.blocks) pool.push_back({b, fi, 0});
                for (auto& b : hb.on.blocks) pool.push_back({b, fi, 1});
                if (booster_configuration_exists(pool, base.family.size(), conflict, g - 1, fi,
                                                 nullptr))
                    continue;
            }
            // commit
            for (auto [u, v] : body) used.insert(key(u, v));
            for (auto& b : hb.off.blocks) committed.push_back({b, fi, 0});
            for (auto& b : hb.on.blocks) committed.push_back({b, fi, 1});
            out.boosters[fi] = std::move(hb);
            placed = true;
        }
        if (!placed)
            return fret("boost", "no admissible sphere placement for family clique " +
                                     std::to_string(fi) + " within retries");
    }

    // A ∪ B as the new absorber graph
    std::vector<std::pair<int, int>> all = base.a.edges();
    for (auto& b : out.boosters)
        for (auto e : b.gadget.edges) all.push_back(e);
    out.a = Graph(n, all);

    std::string why;
    if (!verify_omniabsorber(out, &why, budget.selection_cap))
        return fret("boost-verify", why);
    return out;
}

}  // namespace gf
