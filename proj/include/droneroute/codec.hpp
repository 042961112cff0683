#pragma once

// JSON wire formats shared by the service and the CLI.
//
// Home point:    { "ZLatitude": lat, "XLongitude": lon }
// Flown record:  { "route": "PATH-n", "home": {...},
//                  "PATH": { "PATHPOINT-k": { "ID": k, "ZLatitude": ..., "XLongitude": ..., "YAltitude": ... } } }
// A simulation result embeds its flown record under "flown", so a result
// document can be handed straight to the analysis readers.

#include <string>

#include "droneroute/analysis.hpp"
#include "droneroute/document.hpp"
#include "droneroute/simulator.hpp"
#include "droneroute/store.hpp"

namespace droneroute::codec {

using doc::Json;

Json home_to_json(HomePoint home);
HomePoint home_from_json(const Json& j, const std::string& where = "home");

Json flown_to_json(const FlownRecord& flown);
// Accepts a bare flown record or any object carrying one under "flown".
FlownRecord flown_from_json(const Json& j);

// Applies the keys present in `j` on top of `base`; unknown keys are a schema error.
SimConfig config_from_json(const Json& j, SimConfig base = {});
Json config_to_json(const SimConfig& config);

Json simulation_to_json(const SimulationResult& result);
Json frame_to_json(const Frame& frame);
Json completion_record(const SimulationResult& result);

Json report_to_json(const ErrorReport& report);
Json summary_to_json(const RouteSummary& summary);

}  // namespace droneroute::codec
