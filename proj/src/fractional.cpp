#include "girthforge/fractional.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace gf {

Rat FractionalWeighting::boundary(const Graph& g, int edge_id) const {
    (void)g;
    Rat s(0);
    for (int cid : cliques->through_edge(edge_id)) s += weights[cid];
    return s;
}

FracResult solve_fractional(const Graph& g, const CliqueSet& cliques,
                            const std::optional<std::vector<int>>& support,
                            const std::optional<std::pair<Rat, Rat>>& box,
                            FracObjective objective) {
    FracResult out;
    if (box && box->first > box->second) {
        out.status = FracStatus::Error;
        out.note = "inconsistent box bounds";
        return out;
    }
    std::vector<int> sup;
    if (support) {
        sup = *support;
    } else {
        sup.resize(cliques.size());
        for (int i = 0; i < cliques.size(); ++i) sup[i] = i;
    }
    LpProblem lp;
    lp.rows = g.edge_count();
    lp.b.assign(lp.rows, Rat(1));
    std::vector<int> col_of_clique(sup.size());
    for (size_t k = 0; k < sup.size(); ++k) {
        std::vector<std::pair<int, long long>> entries;
        for (int e : cliques.edge_ids(sup[k])) entries.emplace_back(e, 1);
        std::sort(entries.begin(), entries.end());
        Rat lo = box ? box->first : Rat(0);
        std::optional<Rat> hi;
        if (box) hi = box->second;
        col_of_clique[k] = lp.add_col(std::move(entries), lo, hi);
    }
    int t_col = -1;
    if (objective == FracObjective::MaxMinWeight) {
        // substitute w = t + u (u >= 0): one extra column whose row entries
        // count the supported cliques on each edge; maximize t
        std::vector<long long> cnt(lp.rows, 0);
        for (int cid : sup)
            for (int e : cliques.edge_ids(cid)) ++cnt[e];
        std::vector<std::pair<int, long long>> entries;
        for (int e = 0; e < lp.rows; ++e)
            if (cnt[e]) entries.emplace_back(e, cnt[e]);
        t_col = lp.add_col(std::move(entries), Rat(0), std::nullopt, Rat(1));
    }
    LpResult r = lp_solve(lp);
    if (r.status == LpStatus::Infeasible) {
        out.status = FracStatus::Infeasible;
        out.certificate = r.farkas;
        if (!lp_check_farkas(lp, out.certificate)) {
            out.status = FracStatus::Error;
            out.note = "certificate recheck failed";
        }
        return out;
    }
    if (r.status != LpStatus::Optimal) {
        out.status = FracStatus::Error;
        out.note = r.note.empty() ? "solver error" : r.note;
        return out;
    }
    out.status = FracStatus::Feasible;
    out.w.q = cliques.q();
    out.w.cliques = &cliques;
    out.w.weights.assign(cliques.size(), Rat(0));
    Rat t_val(0);
    if (t_col >= 0) t_val = r.x[t_col];
    for (size_t k = 0; k < sup.size(); ++k)
        out.w.weights[sup[k]] = r.x[col_of_clique[k]] + t_val;
    out.objective = t_val;
    // exact boundary re-verification
    for (int e = 0; e < g.edge_count(); ++e)
        if (out.w.boundary(g, e) != 1) {
            out.status = FracStatus::Error;
            out.note = "boundary verification failed";
            return out;
        }
    return out;
}

BalanceReport verify_fractional(const Graph& g, const FractionalWeighting& w) {
    BalanceReport rep;
    Rat scale(binomial(g.n() - 2, w.q - 2));
    bool first = true;
    for (int cid = 0; cid < w.cliques->size(); ++cid) {
        Rat s = w.weights[cid] * scale;
        if (first) {
            rep.min_scaled = s;
            rep.max_scaled = s;
            first = false;
        } else {
            rep.min_scaled = std::min(rep.min_scaled, s);
            rep.max_scaled = std::max(rep.max_scaled, s);
        }
    }
    if (first) {
        rep.min_scaled = Rat(0);
        rep.max_scaled = Rat(0);
    }
    rep.worst_edge_defect = Rat(0);
    for (int e = 0; e < g.edge_count(); ++e) {
        Rat d = w.boundary(g, e) - Rat(1);
        if (d < 0) d = -d;
        rep.worst_edge_defect = std::max(rep.worst_edge_defect, d);
    }
    return rep;
}

namespace {

// maps cliques of a subgraph (same vertex ids) into host clique ids
int host_clique_id(const CliqueSet& host_cliques, const std::vector<int>& verts) {
    int id = host_cliques.find(verts);
    if (id < 0) throw input_error("clique missing from host enumeration");
    return id;
}

}  // namespace

SeededResult seeded_decomposition(const Graph& g, const CliqueSet& cliques, int q,
                                  const Rat& epsilon, Rng& rng) {
    SeededResult out;
    out.w.q = q;
    out.w.cliques = &cliques;
    out.w.weights.assign(cliques.size(), Rat(0));
    if (cliques.size() == 0) {
        if (g.edge_count() == 0) {
            out.status = FracStatus::Feasible;
            out.min_weight = Rat(0);
            return out;
        }
        out.status = FracStatus::Infeasible;
        out.note = "no cliques available";
        return out;
    }

    long long cap = (Rat(epsilon) * g.n() / (2 * q)).convert_to<long long>();
    long long M = std::max<long long>(1, cap);

    // greedy edge-disjoint coloring with a per-vertex cap per class
    std::vector<int> order(cliques.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);
    struct ColorClass {
        std::vector<char> edge_used;
        std::map<int, long long> vertex_load;
        std::vector<int> members;
    };
    std::vector<ColorClass> classes;
    for (int cid : order) {
        bool placed = false;
        for (auto& cl : classes) {
            bool ok = true;
            for (int e : cliques.edge_ids(cid))
                if (cl.edge_used[e]) {
                    ok = false;
                    break;
                }
            if (ok)
                for (int v : cliques.vertices(cid))
                    if (cl.vertex_load[v] >= M) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            for (int e : cliques.edge_ids(cid)) cl.edge_used[e] = 1;
            for (int v : cliques.vertices(cid)) ++cl.vertex_load[v];
            cl.members.push_back(cid);
            placed = true;
            break;
        }
        if (!placed) {
            ColorClass cl;
            cl.edge_used.assign(g.edge_count(), 0);
            for (int e : cliques.edge_ids(cid)) cl.edge_used[e] = 1;
            for (int v : cliques.vertices(cid)) cl.vertex_load[v] = 1;
            cl.members.push_back(cid);
            classes.push_back(std::move(cl));
        }
    }

    // per class: weight 1 on members plus an LP decomposition of the rest
    bool coloring_ok = true;
    std::vector<std::vector<Rat>> phis;
    for (auto& cl : classes) {
        std::vector<std::pair<int, int>> removed;
        for (int cid : cl.members)
            for (int e : cliques.edge_ids(cid)) removed.push_back(g.edge(e));
        Graph rest = g.without_edges(removed);
        CliqueSet rest_cliques(rest, q);
        auto sol = solve_fractional(rest, rest_cliques, std::nullopt, std::nullopt,
                                    FracObjective::Feasible);
        if (sol.status != FracStatus::Feasible) {
            coloring_ok = false;
            break;
        }
        std::vector<Rat> phi(cliques.size(), Rat(0));
        for (int cid : cl.members) phi[cid] = Rat(1);
        for (int rc = 0; rc < rest_cliques.size(); ++rc)
            if (sol.w.weights[rc] != 0)
                phi[host_clique_id(cliques, rest_cliques.vertices(rc))] += sol.w.weights[rc];
        phis.push_back(std::move(phi));
    }

    if (coloring_ok && !phis.empty()) {
        Rat inv(1, static_cast<long long>(phis.size()));
        for (auto& phi : phis)
            for (int cid = 0; cid < cliques.size(); ++cid)
                out.w.weights[cid] += inv * phi[cid];
        out.note = "seeded via " + std::to_string(phis.size()) + " color classes";
    } else {
        // fall back to the max-min LP
        auto sol = solve_fractional(g, cliques, std::nullopt, std::nullopt,
                                    FracObjective::MaxMinWeight);
        if (sol.status == FracStatus::Infeasible) {
            out.status = FracStatus::Infeasible;
            out.note = "host LP infeasible";
            return out;
        }
        if (sol.status != FracStatus::Feasible) {
            out.status = FracStatus::Error;
            out.note = sol.note;
            return out;
        }
        out.w = sol.w;
        out.note = "seeded via max-min fallback";
    }

    out.min_weight = out.w.weights[0];
    for (auto& v : out.w.weights) out.min_weight = std::min(out.min_weight, v);
    if (out.min_weight <= 0) {
        out.status = FracStatus::Infeasible;
        out.note += "; zero-weight clique remains";
        return out;
    }
    out.status = FracStatus::Feasible;
    return out;
}

SeededFixedResult seeded_fixed(const Graph& g, const CliqueSet& cliques, int q,
                               const std::vector<Rat>& targets, const Rat& epsilon, Rng& rng) {
    SeededFixedResult out;
    long long E = g.edge_count();
    if (static_cast<long long>(targets.size()) != E)
        throw input_error("seeded_fixed: one target per edge required");
    Rat floor_band = Rat(1) - Rat(1, E);
    for (int e = 0; e < E; ++e)
        if (targets[e] < floor_band || targets[e] > 1)
            throw input_error("seeded_fixed: target outside [1 - 1/e(G), 1]");

    auto base = seeded_decomposition(g, cliques, q, epsilon, rng);
    if (base.status != FracStatus::Feasible) {
        out.status = base.status;
        out.failing_edge_note = "seeded decomposition of G failed";
        return out;
    }

    std::vector<Rat> lambda(E);
    for (int e = 0; e < E; ++e) lambda[e] = Rat(E) * (targets[e] - floor_band);

    out.w.q = q;
    out.w.cliques = &cliques;
    out.w.weights.assign(cliques.size(), Rat(0));
    Rat invE(1, E);
    Rat lambda_sum(0);
    for (int e = 0; e < E; ++e) lambda_sum += lambda[e];
    for (int cid = 0; cid < cliques.size(); ++cid)
        out.w.weights[cid] += invE * lambda_sum * base.w.weights[cid];

    for (int e = 0; e < E; ++e) {
        if (lambda[e] == 1) continue;  // Phi_e never needed at full weight
        auto [u, v] = g.edge(e);
        Graph ge = g.without_edges({{u, v}});
        CliqueSet ge_cliques(ge, q);
        auto sub = seeded_decomposition(ge, ge_cliques, q, epsilon, rng);
        if (sub.status != FracStatus::Feasible) {
            out.status = FracStatus::Infeasible;
            out.failing_edge_note =
                "G - (" + std::to_string(u) + "," + std::to_string(v) + ") is not seedable";
            return out;
        }
        Rat coef = invE * (Rat(1) - lambda[e]);
        for (int rc = 0; rc < ge_cliques.size(); ++rc)
            if (sub.w.weights[rc] != 0)
                out.w.weights[host_clique_id(cliques, ge_cliques.vertices(rc))] +=
                    coef * sub.w.weights[rc];
    }

    // exact boundary check against the targets
    for (int e = 0; e < E; ++e)
        if (out.w.boundary(g, e) != targets[e]) {
            out.status = FracStatus::Error;
            out.failing_edge_note = "boundary mismatch on edge " + std::to_string(e);
            return out;
        }
    out.min_weight = out.w.weights.empty() ? Rat(0) : out.w.weights[0];
    for (auto& w : out.w.weights) out.min_weight = std::min(out.min_weight, w);
    out.status = FracStatus::Feasible;
    return out;
}

BalancedResult balanced_decomposition(const Graph& g, const CliqueSet& cliques, int q,
                                      const BalancedOptions& opts, Rng& rng) {
    BalancedResult out;
    int n = g.n();
    int s = opts.s;
    if (s < q + 2 && s < n) throw input_error("balanced_decomposition: s must be at least q+2");
    if (s > n) throw input_error("balanced_decomposition: s exceeds the vertex count");

    // qualifying s-subsets: delta(G[S]) >= (delta_star + eps/2)(s-1)
    Rat thresh = (opts.delta_star + opts.epsilon / 2) * Rat(s - 1);
    auto qualifies = [&](const std::vector<int>& S) {
        std::set<int> in(S.begin(), S.end());
        for (int v : S) {
            int d = 0;
            for (int u : S)
                if (u != v && g.has_edge(u, v)) ++d;
            if (Rat(d) < thresh) return false;
        }
        return true;
    };

    std::vector<std::vector<int>> subsets;
    if (opts.exhaustive) {
        std::vector<int> S(s);
        std::function<void(int, int)> rec = [&](int from, int depth) {
            if (depth == s) {
                std::vector<int> sub(S.begin(), S.end());
                if (qualifies(sub)) subsets.push_back(sub);
                return;
            }
            for (int v = from; v < n; ++v) {
                S[depth] = v;
                rec(v + 1, depth + 1);
            }
        };
        rec(0, 0);
    } else {
        for (int k = 0; k < opts.sample_count; ++k) {
            std::vector<int> pool(n);
            for (int i = 0; i < n; ++i) pool[i] = i;
            rng.shuffle(pool);
            std::vector<int> sub(pool.begin(), pool.begin() + s);
            std::sort(sub.begin(), sub.end());
            if (qualifies(sub)) subsets.push_back(sub);
        }
    }
    out.subsets_used = static_cast<int>(subsets.size());

    // per-edge coverage counts over the realized multiset
    std::vector<long long> cnt(g.edge_count(), 0);
    for (auto& S : subsets)
        for (size_t i = 0; i < S.size(); ++i)
            for (size_t j = i + 1; j < S.size(); ++j) {
                int e = g.edge_id(S[i], S[j]);
                if (e >= 0) ++cnt[e];
            }
    for (int e = 0; e < g.edge_count(); ++e)
        if (cnt[e] == 0) {
            out.status = FracStatus::Error;
            auto [u, v] = g.edge(e);
            out.note = "edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") is covered by no qualifying subset";
            return out;
        }
    long long k_norm = *std::min_element(cnt.begin(), cnt.end());

    out.w.q = q;
    out.w.cliques = &cliques;
    out.w.weights.assign(cliques.size(), Rat(0));
    Rat inv_k(1, k_norm);

    for (auto& S : subsets) {
        // induced subgraph on S with local ids
        std::map<int, int> local;
        for (size_t i = 0; i < S.size(); ++i) local[S[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> es;
        for (size_t i = 0; i < S.size(); ++i)
            for (size_t j = i + 1; j < S.size(); ++j)
                if (g.has_edge(S[i], S[j]))
                    es.emplace_back(static_cast<int>(i), static_cast<int>(j));
        Graph sub(s, es);
        CliqueSet sub_cliques(sub, q);
        long long sub_e = sub.edge_count();
        Rat band_floor = Rat(1) - Rat(1, sub_e);
        std::vector<Rat> targets(sub_e);
        for (int le = 0; le < sub_e; ++le) {
            auto [lu, lv] = sub.edge(le);
            int he = g.edge_id(S[lu], S[lv]);
            Rat t = Rat(k_norm) / Rat(cnt[he]);
            if (t < band_floor) {
                t = band_floor;
                ++out.targets_clamped;
            }
            if (t > 1) t = Rat(1);
            targets[le] = t;
        }
        auto sf = seeded_fixed(sub, sub_cliques, q, targets, opts.epsilon, rng);
        if (sf.status != FracStatus::Feasible) {
            out.status = sf.status == FracStatus::Error ? FracStatus::Error : FracStatus::Infeasible;
            out.note = "subset packing failed: " + sf.failing_edge_note;
            return out;
        }
        for (int rc = 0; rc < sub_cliques.size(); ++rc) {
            if (sf.w.weights[rc] == 0) continue;
            std::vector<int> host_verts;
            for (int lv : sub_cliques.vertices(rc)) host_verts.push_back(S[lv]);
            std::sort(host_verts.begin(), host_verts.end());
            out.w.weights[cliques.find(host_verts)] += inv_k * sf.w.weights[rc];
        }
    }

    out.report = verify_fractional(g, out.w);
    if (out.report.worst_edge_defect != 0 && opts.repair) {
        // exact repair: final = a*w + seeded_fixed(G, 1 - a*boundary), with a
        // small enough that every target stays inside the band
        Rat dmax(0);
        std::vector<Rat> bound(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) {
            bound[e] = out.w.boundary(g, e);
            dmax = std::max(dmax, bound[e]);
        }
        if (dmax > 0) {
            Rat a = Rat(1, g.edge_count()) / dmax;
            std::vector<Rat> targets(g.edge_count());
            for (int e = 0; e < g.edge_count(); ++e) targets[e] = Rat(1) - a * bound[e];
            auto fix = seeded_fixed(g, cliques, q, targets, opts.epsilon, rng);
            if (fix.status == FracStatus::Feasible) {
                for (int cid = 0; cid < cliques.size(); ++cid)
                    out.w.weights[cid] = a * out.w.weights[cid] + fix.w.weights[cid];
                out.repaired = true;
                out.report = verify_fractional(g, out.w);
            }
        }
    }
    out.status = FracStatus::Feasible;
    return out;
}

}  // namespace gf
