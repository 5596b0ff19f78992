#include "girthforge/boosting.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gf {

std::optional<ReserveSample> sample_reserves(const Graph& g, int q, const Rat& p, Rng& rng,
                                             int max_retries,
                                             std::optional<long long> threshold,
                                             ReserveFailure* fail) {
    if (p <= 0 || p >= 1) {
        if (p == 1) {
            // X = G: every non-X pair is a non-edge of G; condition vacuous
            ReserveSample out;
            out.x = g;
            out.p = p;
            out.per_edge_min_extensions = 0;
            return out;
        }
        throw input_error("sample_reserves: p must lie in (0,1]");
    }
    long long n = g.n();
    long long thresh;
    if (threshold) {
        thresh = *threshold;
    } else {
        // (1/(q+1)^q) * p^(binom(q,2)-1) * binom(n, q-2), floored
        Rat t(1);
        for (int i = 0; i < q; ++i) t /= (q + 1);
        long long ex = static_cast<long long>(q) * (q - 1) / 2 - 1;
        for (long long i = 0; i < ex; ++i) t *= p;
        t *= Rat(binomial(n, q - 2));
        thresh = (numerator(t) / denominator(t)).convert_to<long long>();
    }
    double pd = to_double(p);
    ReserveFailure best_fail;
    best_fail.worst_count = -1;

    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        std::vector<std::pair<int, int>> chosen;
        for (auto [u, v] : g.edges())
            if (rng.chance(pd)) chosen.emplace_back(u, v);
        Graph x(g.n(), chosen);
        // Delta(X) <= 2 p n
        bool deg_ok = Rat(x.max_degree()) <= Rat(2) * p * Rat(n);
        if (!deg_ok) continue;
        // every pair outside X in >= thresh q-cliques of X ∪ {e}
        long long min_ext = -1;
        int bad_u = -1, bad_v = -1;
        for (int u = 0; u < g.n() && min_ext != -2; ++u)
            for (int v = u + 1; v < g.n(); ++v) {
                if (x.has_edge(u, v)) continue;
                // count q-cliques containing {u,v} whose other edges lie in X
                long long cnt = 0;
                if (q == 3) {
                    Bitset common = x.neighbors(u) & x.neighbors(v);
                    cnt = common.count();
                } else {
                    auto ext = cliques_through(x.with_edges({{u, v}}), {u, v}, q);
                    cnt = static_cast<long long>(ext.size());
                }
                if (min_ext < 0 || cnt < min_ext) {
                    min_ext = cnt;
                    bad_u = u;
                    bad_v = v;
                }
            }
        if (min_ext < 0) min_ext = 0;
        if (min_ext >= thresh) {
            ReserveSample out;
            out.x = std::move(x);
            out.p = p;
            out.per_edge_min_extensions = min_ext;
            out.retries_used = attempt;
            return out;
        }
        if (min_ext > best_fail.worst_count) {
            best_fail.worst_count = min_ext;
            best_fail.worst_u = bad_u;
            best_fail.worst_v = bad_v;
        }
    }
    if (fail) {
        *fail = best_fail;
        fail->reason = "extension threshold " + std::to_string(thresh) + " not met";
    }
    return std::nullopt;
}

std::optional<RegularFamily> restricted_boost(const Graph& j, const CliqueSet& cliques, int q,
                                              const std::vector<int>& f_orb,
                                              const BoostOptions& opts, Rng& rng,
                                              std::string* error) {
    std::set<int> orb(f_orb.begin(), f_orb.end());
    Rat scale(binomial(j.n() - 2, q - 2));

    // precondition: per-edge forbidden density at most alpha * binom(n-2, q-2)
    for (int e = 0; e < j.edge_count(); ++e) {
        long long cnt = 0;
        for (int cid : cliques.through_edge(e))
            if (orb.count(cid)) ++cnt;
        if (Rat(cnt) > opts.alpha * scale) {
            auto [u, v] = j.edge(e);
            throw input_error("restricted_boost: forbidden density above alpha at edge (" +
                              std::to_string(u) + "," + std::to_string(v) + ")");
        }
    }

    // balanced weighting of J (the max-min LP keeps desk-scale runs exact and
    // fast; the subset-averaging route is available through `balanced`)
    FractionalWeighting phi;
    if (opts.balanced_via_lp) {
        auto sol = solve_fractional(j, cliques, std::nullopt, std::nullopt,
                                    FracObjective::MaxMinWeight);
        if (sol.status != FracStatus::Feasible || sol.objective <= 0) {
            if (error) *error = "J admits no positive balanced weighting";
            return std::nullopt;
        }
        phi = sol.w;
    } else {
        Rng brng(rng.fork());
        auto bal = balanced_decomposition(j, cliques, q, opts.balanced, brng);
        if (bal.status != FracStatus::Feasible) {
            if (error) *error = "balanced decomposition failed: " + bal.note;
            return std::nullopt;
        }
        phi = bal.w;
    }

    // zero forbidden weights
    for (int cid : f_orb) phi.weights[cid] = Rat(0);

    // d = binom(n-2, q-2) / C with C the realized balance ceiling
    Rat c_real(0);
    for (int cid = 0; cid < cliques.size(); ++cid)
        c_real = std::max(c_real, Rat(phi.weights[cid] * scale));
    if (c_real <= 0) {
        if (error) *error = "weighting vanished after removing the forbidden family";
        return std::nullopt;
    }
    Rat d = scale / c_real;

    // sample H with probability phi * d (inside [0,1] by construction)
    std::vector<int> sampled;
    int clamping = 0;
    for (int cid = 0; cid < cliques.size(); ++cid) {
        if (phi.weights[cid] == 0) continue;
        Rat pr = phi.weights[cid] * d;
        if (pr > 1) {
            pr = Rat(1);
            ++clamping;
        }
        if (rng.chance(to_double(pr))) sampled.push_back(cid);
    }
    std::set<int> in_h(sampled.begin(), sampled.end());

    // K_{q+2} census: members whose q-subcliques all lie in H
    long long census = 0;
    {
        auto big = enumerate_cliques(j, q + 2);
        for (auto& c : big) {
            bool all_in = true;
            std::vector<int> sub;
            std::function<void(size_t, size_t)> rec = [&](size_t from, size_t depth) {
                if (!all_in) return;
                if (depth == static_cast<size_t>(q)) {
                    if (!in_h.count(cliques.find(sub))) all_in = false;
                    return;
                }
                for (size_t i = from; i < c.vertices.size(); ++i) {
                    sub.push_back(c.vertices[i]);
                    rec(i + 1, depth + 1);
                    sub.pop_back();
                }
            };
            rec(0, 0);
            if (all_in) ++census;
        }
    }

    // box LP on the sampled support: weights in (1 +- 1/2)/d, widened on demand
    Rat widen(1);
    FractionalWeighting psi;
    bool lp_ok = false;
    for (int w = 0; w <= opts.max_widenings; ++w) {
        Rat lo = Rat(1, 2) / (d * widen);
        Rat hi = Rat(3, 2) * widen / d;
        auto sol = solve_fractional(j, cliques, sampled, std::make_pair(lo, hi),
                                    FracObjective::Feasible);
        if (sol.status == FracStatus::Feasible) {
            psi = sol.w;
            lp_ok = true;
            break;
        }
        widen *= 2;
    }
    if (!lp_ok) {
        if (error) *error = "boosting LP infeasible after all box widenings";
        return std::nullopt;
    }

    // final sample at 2/3 * psi * d
    RegularFamily fam;
    fam.target_d = Rat(2, 3) * d;
    fam.box_widening = widen;
    fam.clamping_events = clamping;
    fam.kq2_census = census;
    fam.sampled_h = sampled;
    std::set<int> final_set;
    for (int cid : sampled) {
        Rat pr = Rat(2, 3) * psi.weights[cid] * d;
        if (pr > 1) {
            pr = Rat(1);
            ++fam.clamping_events;
        }
        if (pr > 0 && rng.chance(to_double(pr))) final_set.insert(cid);
    }

    // coverage: every edge of J needs at least one family clique
    for (int e = 0; e < j.edge_count(); ++e) {
        bool covered = false;
        for (int cid : cliques.through_edge(e))
            if (final_set.count(cid)) {
                covered = true;
                break;
            }
        if (covered) continue;
        // patch from the sampled support, else any admissible clique
        std::vector<int> pool;
        for (int cid : cliques.through_edge(e))
            if (in_h.count(cid)) pool.push_back(cid);
        if (pool.empty())
            for (int cid : cliques.through_edge(e))
                if (!orb.count(cid)) pool.push_back(cid);
        if (pool.empty()) {
            if (error) {
                auto [u, v] = j.edge(e);
                *error = "edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") has no admissible covering clique";
            }
            return std::nullopt;
        }
        final_set.insert(pool[rng.below(pool.size())]);
        ++fam.coverage_patches;
    }

    // disjointness from the forbidden family is exact, always
    for (int cid : final_set)
        if (orb.count(cid)) {
            if (error) *error = "internal error: forbidden clique sampled";
            return std::nullopt;
        }

    fam.cliques.assign(final_set.begin(), final_set.end());
    fam.max_deviation = Rat(0);
    for (int e = 0; e < j.edge_count(); ++e) {
        long long cnt = 0;
        for (int cid : cliques.through_edge(e))
            if (final_set.count(cid)) ++cnt;
        Rat dev = Rat(cnt) - fam.target_d;
        if (dev < 0) dev = -dev;
        fam.max_deviation = std::max(fam.max_deviation, dev);
    }
    return fam;
}

}  // namespace gf
