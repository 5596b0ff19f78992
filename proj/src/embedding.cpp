#include "girthforge/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace gf {

namespace {

// internal vertices ordered so that each has as many already-placed gadget
// neighbors as possible (BFS from the roots)
std::vector<int> internal_order(const RootedGadget& w) {
    std::vector<int> order;
    std::set<int> placed(w.root_vertices.begin(), w.root_vertices.end());
    std::set<int> pending(w.internal_vertices.begin(), w.internal_vertices.end());
    while (!pending.empty()) {
        int best = -1, best_deg = -1;
        for (int x : pending) {
            int d = 0;
            for (auto [a, b] : w.edges) {
                if (a == x && placed.count(b)) ++d;
                if (b == x && placed.count(a)) ++d;
            }
            if (d > best_deg) {
                best_deg = d;
                best = x;
            }
        }
        order.push_back(best);
        placed.insert(best);
        pending.erase(best);
    }
    return order;
}

uint64_t edge_key(int u, int v, int n) {
    if (u > v) std::swap(u, v);
    return static_cast<uint64_t>(u) * n + v;
}

}  // namespace

long long count_embeddings(const RootedGadget& w, const Graph& g, const Graph* forbidden,
                           long long cap) {
    for (int r : w.root_vertices)
        if (r < 0 || r >= g.n()) throw input_error("count_embeddings: root outside host");
    std::vector<int> order = internal_order(w);
    std::map<int, int> host;  // gadget vertex -> host vertex
    for (int r : w.root_vertices) host[r] = r;
    std::set<int> used(w.root_vertices.begin(), w.root_vertices.end());
    long long count = 0;

    std::function<void(size_t)> rec = [&](size_t k) {
        if (count >= cap) return;
        if (k == order.size()) {
            ++count;
            return;
        }
        int x = order[k];
        // placed gadget neighbors of x
        std::vector<int> nbr_hosts;
        for (auto [a, b] : w.edges) {
            int other = -1;
            if (a == x) other = b;
            else if (b == x) other = a;
            else continue;
            auto it = host.find(other);
            if (it != host.end()) nbr_hosts.push_back(it->second);
        }
        for (int v = 0; v < g.n(); ++v) {
            if (used.count(v)) continue;
            bool ok = true;
            for (int h : nbr_hosts) {
                if (!g.has_edge(v, h) || (forbidden && forbidden->has_edge(v, h))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            host[x] = v;
            used.insert(v);
            rec(k + 1);
            used.erase(v);
            host.erase(x);
            if (count >= cap) return;
        }
    };
    rec(0);
    return count;
}

std::optional<Embedding> embed_system(const SupergraphSystem& s, const Graph& g,
                                      int c_prime, Rng& rng, EmbedFailure* fail) {
    int n = g.n();
    int delta_j = s.base.max_degree();
    long long m_cap = static_cast<long long>(
        std::floor(std::sqrt(static_cast<double>(c_prime)) / (4.0 * s.C) * delta_j));
    if (m_cap < 1) m_cap = 1;

    EmbedFailureKind last_kind = EmbedFailureKind::NoPlacement;
    int last_member = -1;

    for (int restart = 0; restart < 8; ++restart) {
        std::set<uint64_t> used_edges;       // image edges placed so far
        std::vector<long long> counter(n, 0);  // members touching v outside their root
        std::vector<int> order(s.members.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        rng.shuffle(order);
        Embedding emb;
        emb.placement.resize(s.members.size());
        bool all_ok = true;

        for (int mi : order) {
            const SystemMember& mem = s.members[mi];
            std::set<uint64_t> member_rooted;
            for (auto [u, v] : mem.rooted_edges) member_rooted.insert(edge_key(u, v, n));
            std::set<int> roots(mem.gadget.root_vertices.begin(), mem.gadget.root_vertices.end());
            std::vector<int> iorder = internal_order(mem.gadget);
            bool placed_member = false;
            int overlap_rejects = 0, counter_rejects = 0, dead_ends = 0;

            for (int attempt = 0; attempt < 2000 && !placed_member; ++attempt) {
                std::map<int, int> host;
                for (int r : mem.gadget.root_vertices) host[r] = r;
                std::set<int> used_hosts(roots.begin(), roots.end());
                bool dead = false;
                for (int x : iorder) {
                    std::vector<int> nbr_hosts;
                    for (auto [a, b] : mem.gadget.edges) {
                        int other = -1;
                        if (a == x) other = b;
                        else if (b == x) other = a;
                        else continue;
                        auto it = host.find(other);
                        if (it != host.end()) nbr_hosts.push_back(it->second);
                    }
                    // candidate hosts: common neighborhood of the placed
                    // neighbors (or everything when none placed yet)
                    std::vector<int> cands;
                    if (nbr_hosts.empty()) {
                        for (int v = 0; v < n; ++v)
                            if (!used_hosts.count(v)) cands.push_back(v);
                    } else {
                        Bitset common = g.neighbors(nbr_hosts[0]);
                        for (size_t i = 1; i < nbr_hosts.size(); ++i)
                            common.and_with(g.neighbors(nbr_hosts[i]));
                        common.for_each([&](int v) {
                            if (!used_hosts.count(v)) cands.push_back(v);
                        });
                    }
                    int chosen = -1;
                    for (int tries = 0; tries < 40 && !cands.empty(); ++tries) {
                        size_t pick = rng.below(cands.size());
                        int v = cands[pick];
                        cands[pick] = cands.back();
                        cands.pop_back();
                        bool ok = true;
                        for (int h : nbr_hosts) {
                            uint64_t key = edge_key(v, h, n);
                            if (used_edges.count(key)) {
                                ok = false;
                                ++overlap_rejects;
                                break;
                            }
                            if (s.base.has_edge(v, h) && !member_rooted.count(key)) {
                                ok = false;  // collides with J outside the rooted part
                                ++overlap_rejects;
                                break;
                            }
                        }
                        if (ok) {
                            chosen = v;
                            break;
                        }
                    }
                    if (chosen < 0) {
                        dead = true;
                        ++dead_ends;
                        break;
                    }
                    host[x] = chosen;
                    used_hosts.insert(chosen);
                }
                if (dead) continue;
                // image edges and the saturation rule
                std::vector<std::pair<int, int>> img;
                std::set<int> touched;
                bool img_ok = true;
                std::set<uint64_t> img_keys;
                for (auto [a, b] : mem.gadget.edges) {
                    int u = host.at(a), v = host.at(b);
                    uint64_t key = edge_key(u, v, n);
                    if (img_keys.count(key)) {
                        img_ok = false;  // two gadget edges landed on one host pair
                        break;
                    }
                    img_keys.insert(key);
                    img.emplace_back(u, v);
                    if (!roots.count(u)) touched.insert(u);
                    if (!roots.count(v)) touched.insert(v);
                }
                if (!img_ok) {
                    ++overlap_rejects;
                    continue;
                }
                bool sat = false;
                for (int v : touched)
                    if (counter[v] >= m_cap) {
                        sat = true;
                        break;
                    }
                if (sat) {
                    ++counter_rejects;
                    continue;
                }
                // commit
                for (auto [u, v] : img) used_edges.insert(edge_key(u, v, n));
                for (int v : touched) ++counter[v];
                std::map<int, int> internal_map;
                for (int x : mem.gadget.internal_vertices) internal_map[x] = host.at(x);
                emb.placement[mi] = std::move(internal_map);
                for (auto e : img) emb.image_edges.push_back(e);
                placed_member = true;
            }
            if (!placed_member) {
                all_ok = false;
                last_member = mi;
                last_kind = counter_rejects > overlap_rejects + dead_ends
                                ? EmbedFailureKind::CounterSaturated
                                : (overlap_rejects > 0 ? EmbedFailureKind::Overlap
                                                       : EmbedFailureKind::NoPlacement);
                break;
            }
        }
        if (!all_ok) continue;
        // exact degree bound re-verification
        std::vector<int> deg(n, 0);
        for (auto [u, v] : emb.image_edges) {
            ++deg[u];
            ++deg[v];
        }
        emb.image_max_degree = 0;
        for (int v = 0; v < n; ++v) emb.image_max_degree = std::max(emb.image_max_degree, deg[v]);
        if (emb.image_max_degree > c_prime * std::max(1, delta_j)) continue;
        return emb;
    }
    if (fail) {
        fail->member = last_member;
        fail->kind = last_kind;
        fail->detail = last_kind == EmbedFailureKind::CounterSaturated
                           ? "degree counters saturated (class B)"
                           : "no edge-disjoint placement (class A)";
    }
    return std::nullopt;
}

}  // namespace gf
