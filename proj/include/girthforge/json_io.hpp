#pragma once

#include <string>

#include <json.hpp>

#include "girthforge/boosting.hpp"
#include "girthforge/fractional.hpp"
#include "girthforge/gadgets.hpp"
#include "girthforge/girth.hpp"
#include "girthforge/matcher.hpp"
#include "girthforge/pipeline.hpp"

namespace gf {

using Json = nlohmann::json;

// Packing JSON: {"q":3,"blocks":[[0,1,3],...]}
Json packing_to_json(const Packing& p);
Packing packing_from_json(const Json& j);

// Witness JSON mirrors ConfigurationWitness fields
Json witness_to_json(const ConfigurationWitness& w);

// Weighting JSON: {"q":3,"weights":[{"block":[u,v,w],"num":N,"den":D},...]}
Json weighting_to_json(const FractionalWeighting& w);

// Gadget JSON: kind, roots, internal count, edges, optional on/off blocks
Json gadget_to_json(const RootedGadget& w);
Json booster_to_json(const RootedBooster& b);

// Matching JSON: {"design":[...],"reserve":[...]} with blocks per entry
Json matching_to_json(const Treasury& t, const Matching& m);

// RegularFamily JSON: packing plus target/deviation fields
Json regular_family_to_json(const CliqueSet& cliques, const RegularFamily& f);

// Treasury summary: sizes, degree ranges, projection info
Json treasury_summary_to_json(const Treasury& t);

Json pipeline_report_to_json(const PipelineResult& r);

Json girth_to_json(const GirthValue& g);

}  // namespace gf
