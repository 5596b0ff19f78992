// girthforge: construct, search for, and verify high-girth clique
// decompositions of dense graphs. Subcommands mirror the library modules;
// graphs use the "n m" text format, everything else speaks JSON.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "girthforge/json_io.hpp"
#include "girthforge/pipeline.hpp"

using namespace gf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInput = 4;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j, bool as_json) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump(2) << "\n";  // text mode prints the same layout
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"high-girth clique decomposition toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    int q = 3;
    int girth = 4;
    std::string format = "json";
    long long budget_ms = 60000;
    app.add_option("--seed", seed, "rng seed");
    app.add_option("--q", q, "clique order");
    app.add_option("--girth", girth, "girth target");
    app.add_option("--format", format, "output format: json|text");
    app.add_option("--budget-ms", budget_ms, "time budget in milliseconds");

    // gadget
    auto* cmd_gadget = app.add_subcommand("gadget", "construct a rooted gadget");
    std::string gadget_kind = "sphere";
    int sphere_g = 3;
    cmd_gadget->add_option("--kind", gadget_kind, "anti-edge|fake-edge|sphere");
    cmd_gadget->add_option("--g", sphere_g, "sphere half-girth parameter");

    // girth
    auto* cmd_girth = app.add_subcommand("girth", "girth of a packing");
    std::string packing_path;
    int gmax = 8;
    cmd_girth->add_option("--packing", packing_path, "packing JSON file")->required();
    cmd_girth->add_option("--gmax", gmax, "search bound");

    // fractional
    auto* cmd_frac = app.add_subcommand("fractional", "fractional decomposition LP");
    std::string graph_path;
    std::string frac_mode = "feasible";
    std::string out_path;
    cmd_frac->add_option("--graph", graph_path, "graph file")->required();
    cmd_frac->add_option("--mode", frac_mode, "feasible|max-min");
    cmd_frac->add_option("--out", out_path, "write the weighting JSON here");

    // boost
    auto* cmd_boost = app.add_subcommand("boost", "restricted regularity boosting");
    std::string boost_graph, boost_forbidden;
    cmd_boost->add_option("--graph", boost_graph, "graph file")->required();
    cmd_boost->add_option("--forbidden", boost_forbidden, "packing JSON of forbidden cliques");

    // absorb
    auto* cmd_absorb = app.add_subcommand("absorb", "find an absorber for a leftover graph");
    std::string absorb_graph;
    cmd_absorb->add_option("--leftover", absorb_graph, "graph file (the divisible L)")->required();

    // pack
    auto* cmd_pack = app.add_subcommand("pack", "exact decomposition with girth pruning");
    std::string pack_graph;
    cmd_pack->add_option("--graph", pack_graph, "graph file")->required();

    // pipeline
    auto* cmd_pipe = app.add_subcommand("pipeline", "end-to-end construction");
    std::string pipe_graph;
    cmd_pipe->add_option("--graph", pipe_graph, "graph file")->required();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "verify a decomposition and its girth");
    std::string verify_graph, verify_packing;
    cmd_verify->add_option("--graph", verify_graph, "graph file")->required();
    cmd_verify->add_option("--packing", verify_packing, "packing JSON")->required();

    CLI11_PARSE(app, argc, argv);
    bool as_json = format != "text";
    Rng rng(seed);

    try {
        if (cmd_gadget->parsed()) {
            IdAllocator ids(100);
            if (gadget_kind == "anti-edge") {
                auto w = anti_edge({0, 1}, q, ids);
                emit(gadget_to_json(w), as_json);
            } else if (gadget_kind == "fake-edge") {
                auto w = fake_edge({0, 1}, q, ids);
                Json j = gadget_to_json(w);
                j["divisibility_signature"] = has_edge_divisibility_signature(w, q);
                j["rooted_degeneracy"] = rooted_degeneracy(w, w.root_vertices);
                emit(j, as_json);
            } else if (gadget_kind == "sphere") {
                auto b = g_sphere({0, 1, 2}, sphere_g, ids);
                Json j = booster_to_json(b);
                std::string why;
                j["verified"] = verify_booster(b, &why);
                j["rooted_girth"] = rooted_girth(b);
                j["rooted_degeneracy"] = rooted_degeneracy(b.gadget, b.gadget.root_vertices);
                emit(j, as_json);
            } else {
                std::cerr << "unknown gadget kind\n";
                return kExitInput;
            }
            return kExitOk;
        }
        if (cmd_girth->parsed()) {
            Packing p = packing_from_json(load_json(packing_path));
            GirthValue gv = packing_girth(p, gmax, 2);
            emit(girth_to_json(gv), as_json);
            return kExitOk;
        }
        if (cmd_frac->parsed()) {
            Graph g = load_graph_file(graph_path);
            CliqueSet cliques(g, q);
            auto res = solve_fractional(g, cliques, std::nullopt, std::nullopt,
                                        frac_mode == "max-min" ? FracObjective::MaxMinWeight
                                                               : FracObjective::Feasible);
            Json j;
            if (res.status == FracStatus::Feasible) {
                j["status"] = "feasible";
                if (frac_mode == "max-min") j["min_weight"] = rat_str(res.objective);
                auto rep = verify_fractional(g, res.w);
                j["defect"] = rat_str(rep.worst_edge_defect);
                if (!out_path.empty()) {
                    std::ofstream out(out_path);
                    out << weighting_to_json(res.w).dump(2) << "\n";
                }
                emit(j, as_json);
                return kExitOk;
            }
            if (res.status == FracStatus::Infeasible) {
                j["status"] = "infeasible";
                j["certificate"] = Json::array();
                for (auto& y : res.certificate) j["certificate"].push_back(rat_str(y));
                emit(j, as_json);
                return kExitInfeasible;
            }
            std::cerr << "solver error: " << res.note << "\n";
            return kExitInput;
        }
        if (cmd_boost->parsed()) {
            Graph g = load_graph_file(boost_graph);
            CliqueSet cliques(g, q);
            std::vector<int> f_orb;
            if (!boost_forbidden.empty()) {
                Packing forb = packing_from_json(load_json(boost_forbidden));
                for (auto& b : forb.blocks) {
                    int cid = cliques.find(b);
                    if (cid < 0) throw input_error("forbidden clique not in the host");
                    f_orb.push_back(cid);
                }
            }
            BoostOptions opts;
            std::string err;
            auto fam = restricted_boost(g, cliques, q, f_orb, opts, rng, &err);
            if (!fam) {
                std::cerr << "boost failed: " << err << "\n";
                return kExitBudget;
            }
            emit(regular_family_to_json(cliques, *fam), as_json);
            return kExitOk;
        }
        if (cmd_absorb->parsed()) {
            Graph l = load_graph_file(absorb_graph);
            std::vector<int> verts;
            for (int v = 0; v < l.n(); ++v)
                if (l.degree(v) > 0) verts.push_back(v);
            IdAllocator ids(l.n());
            AbsorberBudget budget;
            AbsorberFailure afail;
            auto abs = find_absorber(verts, l.edges(), q, budget, rng, ids, &afail);
            if (!abs) {
                std::cerr << "absorber search failed after " << afail.attempts
                          << " attempts: " << afail.reason << "\n";
                return kExitBudget;
            }
            emit(booster_to_json(*abs), as_json);
            return kExitOk;
        }
        if (cmd_pack->parsed()) {
            Graph g = load_graph_file(pack_graph);
            auto res = exact_decomposition(g, q, girth, budget_ms, seed);
            if (res.status == SearchStatus::Found) {
                emit(packing_to_json(res.packing), as_json);
                return kExitOk;
            }
            if (res.status == SearchStatus::ProvenInfeasible) {
                std::cerr << "proven infeasible (" << res.nodes_explored << " nodes)\n";
                return kExitInfeasible;
            }
            std::cerr << "budget exhausted (" << res.nodes_explored << " nodes)\n";
            return kExitBudget;
        }
        if (cmd_pipe->parsed()) {
            Graph g = load_graph_file(pipe_graph);
            Config cfg;
            cfg.q = q;
            cfg.g = std::max(girth, 3);
            cfg.rng_seed = seed;
            cfg.validate();
            auto res = run_pipeline(g, girth, cfg, rng, budget_ms);
            emit(pipeline_report_to_json(res), as_json);
            switch (res.status) {
                case PipelineStatus::Success: return kExitOk;
                case PipelineStatus::ProvenInfeasible: return kExitInfeasible;
                case PipelineStatus::BudgetExhausted: return kExitBudget;
                case PipelineStatus::Failed: return kExitBudget;
            }
        }
        if (cmd_verify->parsed()) {
            Graph g = load_graph_file(verify_graph);
            Packing p = packing_from_json(load_json(verify_packing));
            Json j;
            bool dec = is_decomposition(g, p);
            j["decomposition"] = dec;
            GirthValue gv = packing_girth(p, std::max(girth + 1, 6), 2);
            j["girth"] = girth_to_json(gv);
            bool girth_ok = gv.at_least ? gv.value > girth : gv.value >= girth;
            j["girth_ok"] = girth_ok;
            emit(j, as_json);
            return dec && girth_ok ? kExitOk : kExitInfeasible;
        }
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
