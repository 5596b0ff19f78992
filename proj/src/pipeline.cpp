#include "girthforge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "girthforge/fractional.hpp"

namespace gf {

void Config::validate() const {
    if (q < 3) throw input_error("config: q must be >= 3");
    if (g < 3) throw input_error("config: g must be >= 3");
    auto in01 = [](const Rat& r) { return r > 0 && r < 1; };
    if (!in01(epsilon) || !in01(alpha) || !in01(beta) || !in01(gamma) || !in01(sigma))
        throw input_error("config: real parameters must lie in (0,1)");
    if (!(p > 0) || p > 1) throw input_error("config: p must lie in (0,1]");
    if (C < 1 || c_prime < 1) throw input_error("config: C and C' must be >= 1");
}

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

}  // namespace

Packing assemble_steiner(const OmniAbsorber& a, const Treasury& t, const Matching& m,
                         const Graph& g, const Graph& x) {
    // every A-vertex covered exactly once
    std::vector<int> cover(std::max(t.g1.n_vertices, t.g2.n_vertices), 0);
    for (int i : m.design_edges)
        for (int v : t.g1.edges[i]) ++cover[v];
    for (int i : m.reserve_edges)
        for (int v : t.g2.edges[i]) ++cover[v];
    for (int v = 0; v < static_cast<int>(t.g2.in_A.size()); ++v) {
        if (!t.g2.in_A[v]) continue;
        if (cover[v] != 1) {
            auto [eu, ev] = g.edge(v);
            throw input_error("assemble_steiner: matching misses edge (" + std::to_string(eu) +
                              "," + std::to_string(ev) + ")");
        }
    }
    // leftover: X-edges not covered by reserve blocks
    std::vector<std::pair<int, int>> leftover;
    for (auto [u, v] : x.edges()) {
        int eid = g.edge_id(u, v);
        if (eid >= 0 && cover[eid] == 0) leftover.emplace_back(u, v);
    }
    {
        Graph lgraph(g.n(), leftover);
        if (!is_divisible(lgraph, a.q))
            throw input_error("assemble_steiner: leftover inside X is not divisible");
    }
    Packing out = matching_blocks(t, m);
    Packing absorbed = a.decomposition(leftover);
    for (auto& b : absorbed.blocks) out.add(b);
    if (!is_decomposition(g, out))
        throw input_error("assemble_steiner: assembled blocks do not decompose the host");
    return out;
}

PipelineResult run_pipeline(const Graph& g, int girth_target, const Config& cfg, Rng& rng,
                            long long budget_ms) {
    PipelineResult out;
    auto t0 = Clock::now();
    int q = cfg.q;
    int gt = girth_target;

    auto stage = [&](const std::string& name, bool ok, const std::string& detail) {
        out.stages.push_back({name, ok, detail, ms_since(t0)});
        return ok;
    };

    auto finish_with = [&](Packing p, bool fallback, bool relaxed) {
        out.decomposition = std::move(p);
        out.fallback = fallback;
        out.relaxed_girth = relaxed;
        // two independent verifications: exact cover and the girth oracle
        bool cover_ok = is_decomposition(g, out.decomposition);
        out.measured_girth = packing_girth(out.decomposition, std::max(gt + 1, 6), 2);
        bool girth_ok = out.measured_girth.at_least ? out.measured_girth.value > gt
                                                    : out.measured_girth.value >= gt;
        stage("final-verification",
              cover_ok && girth_ok,
              "girth " + std::string(out.measured_girth.at_least ? ">= " : "= ") +
                  std::to_string(out.measured_girth.value));
        out.status = cover_ok && girth_ok ? PipelineStatus::Success : PipelineStatus::Failed;
        return out;
    };

    auto fallback_route = [&](const std::string& reason) -> PipelineResult {
        stage("fallback", true, "treasury route abandoned: " + reason);
        long long remaining = budget_ms - ms_since(t0);
        if (remaining < 1000) remaining = 1000;
        // strict level first (no configuration of size <= gt), then the
        // reporting level (girth >= gt) when the strict level is impossible
        auto strict = exact_decomposition(g, q, gt + 1, remaining, rng.next());
        if (strict.status == SearchStatus::Found)
            return finish_with(std::move(strict.packing), true, false);
        if (strict.status == SearchStatus::ProvenInfeasible) {
            stage("fallback-strict", false, "girth > " + std::to_string(gt) + " proven infeasible");
            remaining = budget_ms - ms_since(t0);
            if (remaining < 1000) remaining = 1000;
            auto relaxed = exact_decomposition(g, q, gt, remaining, rng.next());
            if (relaxed.status == SearchStatus::Found)
                return finish_with(std::move(relaxed.packing), true, true);
            out.status = relaxed.status == SearchStatus::ProvenInfeasible
                             ? PipelineStatus::ProvenInfeasible
                             : PipelineStatus::BudgetExhausted;
            stage("fallback-relaxed", false,
                  out.status == PipelineStatus::ProvenInfeasible ? "proven infeasible"
                                                                 : "budget exhausted");
            return out;
        }
        out.status = PipelineStatus::BudgetExhausted;
        stage("fallback-strict", false, "budget exhausted");
        return out;
    };

    // (0) divisibility and the fractional precheck
    if (!is_divisible(g, q)) {
        stage("divisibility", false, "host is not K_q-divisible");
        out.status = PipelineStatus::ProvenInfeasible;
        return out;
    }
    stage("divisibility", true, "");
    CliqueSet cliques(g, q);
    {
        auto frac = solve_fractional(g, cliques, std::nullopt, std::nullopt,
                                     FracObjective::Feasible);
        if (frac.status == FracStatus::Infeasible) {
            stage("fractional-precheck", false, "no fractional decomposition (certified)");
            out.status = PipelineStatus::ProvenInfeasible;
            return out;
        }
        if (frac.status != FracStatus::Feasible) {
            stage("fractional-precheck", false, frac.note);
            return fallback_route("fractional precheck errored");
        }
        stage("fractional-precheck", true, "");
    }

    // (1) reserves
    OmniBudget obudget;
    Graph x;
    {
        Rat p_eff = cfg.p;
        Rat cap_p = Rat(obudget.max_x_edges - 6, std::max(1, g.edge_count()));
        if (cap_p > 0 && p_eff > cap_p) p_eff = cap_p;
        bool got = false;
        for (int attempt = 0; attempt < 20 && !got; ++attempt) {
            auto rs = sample_reserves(g, q, p_eff, rng, 10);
            if (!rs) break;
            if (rs->x.edge_count() <= obudget.max_x_edges) {
                x = rs->x;
                got = true;
            }
        }
        if (!got) {
            stage("reserves", false, "no admissible reserve sample");
            return fallback_route("reserve sampling failed");
        }
        stage("reserves", true, "e(X) = " + std::to_string(x.edge_count()));
    }

    // (2) private omni-absorber, then the canonical girth boost
    OmniAbsorber boosted;
    {
        OmniFailure ofail;
        auto built = build_private_omniabsorber(g, x, q, obudget, rng, &ofail);
        if (!built) {
            stage("omniabsorber", false, ofail.stage + ": " + ofail.detail);
            return fallback_route("omni-absorber construction failed");
        }
        stage("omniabsorber", true,
              "entries " + std::to_string(built->entries.size()) + ", family " +
                  std::to_string(built->family.size()) + ", refinement " +
                  std::to_string(built->refinement));
        if (q != 3) {
            stage("boost", false, "girth boosters unavailable for q > 3");
            return fallback_route("boost unavailable");
        }
        BoostBudget bb;
        bb.sphere_g = std::max(2, (gt + 2) / 2);  // minimal rooted girth above gt
        OmniFailure bfail;
        auto bst = boost_omniabsorber(*built, g, gt + 1, bb, rng, &bfail);
        if (!bst) {
            stage("boost", false, bfail.stage + ": " + bfail.detail);
            return fallback_route("boost failed");
        }
        boosted = std::move(*bst);
        stage("boost", true,
              "collective girth >= " + std::to_string(boosted.collective_girth_bound) +
                  " with " + std::to_string(boosted.family.size()) + " boosters (g-sphere g = " +
                  std::to_string(bb.sphere_g) + ")");
    }

    // (3) projection treasury
    Graph g_prime = g.without_edges(boosted.a.edges());
    Treasury projected;
    {
        Treasury t0_treasury = design_treasury(g, cliques, g_prime, q, x, gt);
        std::vector<std::vector<int>> m_family;
        auto div = enumerate_divisible_subgraphs(x, q);
        if (div.overflow) {
            stage("projection", false, "divisible enumeration overflow");
            return fallback_route("projection failed");
        }
        for (auto& sub : div.subgraphs) {
            std::vector<std::pair<int, int>> l_edges;
            for (int xe : sub) l_edges.push_back(x.edge(xe));
            Packing dec = boosted.decomposition(l_edges);
            std::vector<int> ids;
            for (auto& b : dec.blocks) {
                int cid = cliques.find(b);
                if (cid < 0) {
                    stage("projection", false, "decomposition block outside host cliques");
                    return fallback_route("projection failed");
                }
                ids.push_back(cid);
            }
            std::sort(ids.begin(), ids.end());
            m_family.push_back(std::move(ids));
        }
        projected = common_projection(t0_treasury, m_family);
        stage("projection", true,
              "|G1| " + std::to_string(projected.g1.edges.size()) + ", |G2| " +
                  std::to_string(projected.g2.edges.size()) + ", |M| " +
                  std::to_string(m_family.size()) + (projected.h.lazy ? ", H lazy" : ""));
    }

    // (4) regularity audit (logged, not gated)
    {
        auto rep = check_regular(projected, g.n(),
                                 (cfg.alpha * Rat(g.n())).convert_to<long long>(),
                                 Rat(1, 2 * gt), cfg.alpha, gt);
        stage("regularity-audit", true,
              std::string(rep.all_pass() ? "all RT rules hold" : "some RT rules fail") +
                  " (observational)");
    }

    // (5) restricted regularity boosting on J = G \ (A ∪ X)
    std::set<int> g1_cliques(projected.g1.clique_of_edge.begin(),
                             projected.g1.clique_of_edge.end());
    Treasury matched_treasury = projected;
    {
        std::vector<std::pair<int, int>> drop = boosted.a.edges();
        for (auto e : x.edges()) drop.push_back(e);
        Graph j = g.without_edges(drop);
        CliqueSet jcs(j, q);
        std::vector<int> f_orb_local;
        for (int jc = 0; jc < jcs.size(); ++jc) {
            int host_id = cliques.find(jcs.vertices(jc));
            if (!g1_cliques.count(host_id)) f_orb_local.push_back(jc);
        }
        BoostOptions bopts;
        std::string berr;
        Rng brng(rng.fork());
        auto fam = restricted_boost(j, jcs, q, f_orb_local, bopts, brng, &berr);
        if (!fam) {
            stage("restricted-boost", false, berr);
            return fallback_route("restricted boosting failed");
        }
        std::set<int> keep;
        for (int jc : fam->cliques) keep.insert(cliques.find(jcs.vertices(jc)));
        UniformHypergraph g1b;
        g1b.n_vertices = projected.g1.n_vertices;
        for (size_t i = 0; i < projected.g1.edges.size(); ++i)
            if (keep.count(projected.g1.clique_of_edge[i])) {
                g1b.edges.push_back(projected.g1.edges[i]);
                g1b.clique_of_edge.push_back(projected.g1.clique_of_edge[i]);
            }
        matched_treasury.g1 = std::move(g1b);
        stage("restricted-boost", true,
              "family " + std::to_string(fam->cliques.size()) + ", deviation " +
                  rat_str(fam->max_deviation) + " of target " + rat_str(fam->target_d));
    }

    // (6) treasury matching, boosted support first, full projected support second
    Matching matching;
    bool have_matching = false;
    {
        MatcherOptions mopts;
        mopts.restarts = 24;
        mopts.backtrack_budget = 300000;
        MatchingFailure mfail;
        auto m = find_perfect_matching(matched_treasury, rng, mopts, &mfail);
        if (!m) {
            stage("matching-boosted", false,
                  std::to_string(mfail.uncovered) + "/" + std::to_string(mfail.total_A) +
                      " uncovered");
            m = find_perfect_matching(projected, rng, mopts, &mfail);
            if (m) {
                matched_treasury = projected;
                stage("matching-full", true, "matched on the unrestricted projection");
            } else {
                stage("matching-full", false,
                      std::to_string(mfail.uncovered) + "/" + std::to_string(mfail.total_A) +
                          " uncovered");
                return fallback_route("treasury matching failed");
            }
        } else {
            stage("matching-boosted", true,
                  std::to_string(m->design_edges.size()) + " design + " +
                      std::to_string(m->reserve_edges.size()) + " reserve blocks");
        }
        matching = *m;
        have_matching = true;
    }

    // (7) assembly
    if (have_matching) {
        try {
            Packing final_packing = assemble_steiner(boosted, matched_treasury, matching, g, x);
            stage("assembly", true, std::to_string(final_packing.size()) + " blocks");
            return finish_with(std::move(final_packing), false, false);
        } catch (const input_error& e) {
            stage("assembly", false, e.what());
            return fallback_route("assembly failed");
        }
    }
    return fallback_route("no matching");
}

}  // namespace gf
