#pragma once

// Route document tree:
//
//   { "PATH-{id}": { "description": "...",
//                    "PATH": { "PATHPOINT-{k}": { "ID": k, "XLongitude": ..., "ZLatitude": ...,
//                                                 "YAltitude": ..., "task": "0", "instruction": "" } } } }
//
// Writers emit JSON numbers (shortest round-trip form); readers accept numbers
// or decimal text. Records written before camera tasks existed carry only
// ID/XLongitude/ZLatitude/YAltitude and load with task "0" and instruction "".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droneroute/mission.hpp"
#include "json.hpp"

namespace droneroute::doc {

using Json = nlohmann::json;

inline constexpr std::string_view kPointsKey = "PATH";
inline constexpr std::string_view kPointPrefix = "PATHPOINT-";

struct ParsedRoute {
    Path path;
    // True when any record lacked the task/instruction fields.
    bool legacy = false;
};

// Throws Error{Parse} with line/column on malformed text.
Json parse_text(std::string_view text);

Json route_node(const Path& path);
Json route_tree(const std::vector<Path>& paths);

// Errors are Error{Schema} naming the offending key path.
ParsedRoute parse_route_node(const std::string& route_id, const Json& node);
std::vector<ParsedRoute> parse_route_tree(const Json& tree);

// Accepts a full tree, or a bare route node when route_id is given.
std::vector<ParsedRoute> parse_routes(const Json& doc, const std::optional<std::string>& route_id = std::nullopt);

// Numeric field: JSON number or decimal text. Throws Error{Schema} naming `where`.
double read_number(const Json& value, const std::string& where);

// Ordered "PATHPOINT-{k}" children of a container, checked for density.
std::vector<std::pair<int, const Json*>> ordered_points(const Json& container, const std::string& where);

std::string shortest(double value);

}  // namespace droneroute::doc
