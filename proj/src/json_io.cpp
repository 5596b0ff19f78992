#include "girthforge/json_io.hpp"

#include <algorithm>

namespace gf {

Json packing_to_json(const Packing& p) {
    Json j;
    j["q"] = p.q;
    j["blocks"] = Json::array();
    for (const auto& b : p.blocks) j["blocks"].push_back(b);
    return j;
}

Packing packing_from_json(const Json& j) {
    Packing p;
    p.q = j.at("q").get<int>();
    for (const auto& b : j.at("blocks")) p.add(b.get<std::vector<int>>());
    return p;
}

Json witness_to_json(const ConfigurationWitness& w) {
    Json j;
    j["i"] = w.i;
    j["cliques"] = Json::array();
    for (const auto& c : w.cliques) j["cliques"].push_back(c);
    j["span"] = w.span;
    return j;
}

Json weighting_to_json(const FractionalWeighting& w) {
    Json j;
    j["q"] = w.q;
    j["weights"] = Json::array();
    for (int cid = 0; cid < w.cliques->size(); ++cid) {
        if (w.weights[cid] == 0) continue;
        Json entry;
        entry["block"] = w.cliques->vertices(cid);
        entry["num"] = rat_str(Rat(numerator(w.weights[cid])));
        entry["den"] = rat_str(Rat(denominator(w.weights[cid])));
        j["weights"].push_back(entry);
    }
    return j;
}

namespace {
const char* kind_name(GadgetKind k) {
    switch (k) {
        case GadgetKind::AntiEdge: return "anti-edge";
        case GadgetKind::FakeEdge: return "fake-edge";
        case GadgetKind::Sphere: return "sphere";
        case GadgetKind::Absorber: return "absorber";
        case GadgetKind::Booster: return "booster";
    }
    return "?";
}
}  // namespace

Json gadget_to_json(const RootedGadget& w) {
    Json j;
    j["kind"] = kind_name(w.kind);
    j["roots"] = w.root_vertices;
    j["internal_count"] = static_cast<int>(w.internal_vertices.size());
    j["internals"] = w.internal_vertices;
    j["edges"] = Json::array();
    for (auto [a, b] : w.edges) j["edges"].push_back(Json::array({a, b}));
    return j;
}

Json booster_to_json(const RootedBooster& b) {
    Json j = gadget_to_json(b.gadget);
    j["root_clique"] = b.root;
    j["on"] = packing_to_json(b.on)["blocks"];
    j["off"] = packing_to_json(b.off)["blocks"];
    return j;
}

Json matching_to_json(const Treasury& t, const Matching& m) {
    Json j;
    j["design"] = Json::array();
    j["reserve"] = Json::array();
    for (int i : m.design_edges)
        j["design"].push_back(t.cliques->vertices(t.g1.clique_of_edge[i]));
    for (int i : m.reserve_edges)
        j["reserve"].push_back(t.cliques->vertices(t.g2.clique_of_edge[i]));
    return j;
}

Json regular_family_to_json(const CliqueSet& cliques, const RegularFamily& f) {
    Json j;
    j["q"] = cliques.q();
    j["blocks"] = Json::array();
    for (int cid : f.cliques) j["blocks"].push_back(cliques.vertices(cid));
    j["target_d"] = rat_str(f.target_d);
    j["max_deviation"] = rat_str(f.max_deviation);
    j["clamping_events"] = f.clamping_events;
    j["coverage_patches"] = f.coverage_patches;
    j["box_widening"] = rat_str(f.box_widening);
    j["kq2_census"] = f.kq2_census;
    return j;
}

Json treasury_summary_to_json(const Treasury& t) {
    Json j;
    j["g1_edges"] = static_cast<int>(t.g1.edges.size());
    j["g2_edges"] = static_cast<int>(t.g2.edges.size());
    int a_count = 0;
    for (char c : t.g2.in_A) a_count += c ? 1 : 0;
    j["a_vertices"] = a_count;
    j["h_edges"] = static_cast<int>(t.h.edges.size());
    j["h_lazy"] = t.h.lazy;
    j["h_bound"] = t.h.lazy_bound;
    j["projection_members"] = static_cast<int>(t.projection_family.size());
    return j;
}

Json girth_to_json(const GirthValue& g) {
    Json j;
    if (g.at_least) {
        j["at_least"] = g.value;
    } else {
        j["value"] = g.value;
    }
    return j;
}

Json pipeline_report_to_json(const PipelineResult& r) {
    Json j;
    switch (r.status) {
        case PipelineStatus::Success: j["status"] = "success"; break;
        case PipelineStatus::ProvenInfeasible: j["status"] = "proven-infeasible"; break;
        case PipelineStatus::BudgetExhausted: j["status"] = "budget-exhausted"; break;
        case PipelineStatus::Failed: j["status"] = "failed"; break;
    }
    j["fallback"] = r.fallback;
    j["relaxed_girth"] = r.relaxed_girth;
    j["girth"] = girth_to_json(r.measured_girth);
    if (r.status == PipelineStatus::Success) j["decomposition"] = packing_to_json(r.decomposition);
    j["stages"] = Json::array();
    for (const auto& s : r.stages) {
        Json st;
        st["name"] = s.name;
        st["ok"] = s.ok;
        st["detail"] = s.detail;
        st["elapsed_ms"] = s.elapsed_ms;
        j["stages"].push_back(st);
    }
    return j;
}

}  // namespace gf
