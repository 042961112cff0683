#include "droneroute/document.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "droneroute/error.hpp"

namespace droneroute::doc {

namespace {

std::optional<int> parse_order(std::string_view text) {
    if (text.empty() || (text.size() > 1 && text.front() == '0')) return std::nullopt;
    int value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value < 0) return std::nullopt;
    return value;
}

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::Schema, where + ": " + what);
}

std::string read_text(const Json& value, const std::string& where) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    schema(where, "expected text");
}

int read_id(const Json& value, const std::string& where) {
    if (value.is_number_integer()) return value.get<int>();
    if (value.is_number_float()) {
        double d = value.get<double>();
        if (d == std::floor(d) && d >= 0 && d < 1e9) return static_cast<int>(d);
    }
    if (value.is_string()) {
        if (auto v = parse_order(value.get<std::string>())) return *v;
    }
    schema(where, "ID must be a non-negative integer");
}

}  // namespace

Json parse_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        // Byte offset -> line/column for the message.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::Parse, "parse error at line " + std::to_string(line) + ", column " +
                                          std::to_string(col) + ": " + e.what());
    }
}

std::string shortest(double value) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), res.ptr};
}

double read_number(const Json& value, const std::string& where) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const auto& s = value.get_ref<const std::string&>();
        std::string_view text = s;
        while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
        while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
        if (!text.empty() && text.front() == '+') text.remove_prefix(1);
        double d = 0.0;
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
        if (ec == std::errc{} && end == text.data() + text.size() && !text.empty() && std::isfinite(d)) return d;
        schema(where, "'" + s + "' is not a decimal number");
    }
    schema(where, "expected a number");
}

std::vector<std::pair<int, const Json*>> ordered_points(const Json& container, const std::string& where) {
    std::vector<std::pair<int, const Json*>> points;
    if (container.is_null()) return points;
    if (!container.is_object()) schema(where, "expected an object of PATHPOINT records");
    for (const auto& [key, record] : container.items()) {
        std::string_view k = key;
        std::optional<int> order;
        if (k.starts_with(kPointPrefix)) order = parse_order(k.substr(kPointPrefix.size()));
        if (!order) schema(where + "/" + key, "key is not of the form PATHPOINT-{order}");
        points.emplace_back(*order, &record);
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].first != static_cast<int>(i)) schema(where, "missing order " + std::to_string(i));
    }
    return points;
}

Json route_node(const Path& path) {
    Json node = Json::object();
    if (path.description) node["description"] = *path.description;
    Json points = Json::object();
    for (const auto& p : path.points) {
        points[std::string(kPointPrefix) + std::to_string(p.id)] = {
            {"ID", p.id},
            {"XLongitude", p.longitude_deg},
            {"ZLatitude", p.latitude_deg},
            {"YAltitude", p.altitude_m},
            {"task", task_code_text(p.task)},
            {"instruction", p.instruction},
        };
    }
    node[std::string(kPointsKey)] = std::move(points);
    return node;
}

Json route_tree(const std::vector<Path>& paths) {
    Json tree = Json::object();
    for (const auto& p : paths) tree[p.route_id] = route_node(p);
    return tree;
}

ParsedRoute parse_route_node(const std::string& route_id, const Json& node) {
    if (!route_number(route_id)) schema(route_id, "route key is not of the form PATH-{id}");
    if (!node.is_object()) schema(route_id, "route must be an object");

    ParsedRoute out;
    out.path.route_id = route_id;
    if (auto it = node.find("description"); it != node.end() && !it->is_null()) {
        if (!it->is_string()) schema(route_id + "/description", "expected text");
        out.path.description = it->get<std::string>();
    }

    const std::string container_where = route_id + "/" + std::string(kPointsKey);
    const Json* container = nullptr;
    if (auto it = node.find(kPointsKey); it != node.end()) container = &*it;
    if (!container) return out;

    for (const auto& [order, record_ptr] : ordered_points(*container, container_where)) {
        const Json& record = *record_ptr;
        const std::string where = container_where + "/" + std::string(kPointPrefix) + std::to_string(order);
        if (!record.is_object()) schema(where, "record must be an object");

        auto field = [&](const char* name) -> const Json* {
            auto it = record.find(name);
            return it == record.end() || it->is_null() ? nullptr : &*it;
        };

        PathPoint p;
        if (const Json* id = field("ID")) {
            p.id = read_id(*id, where + "/ID");
            if (p.id != order) schema(where, "ID " + std::to_string(p.id) + " does not match key order");
        } else {
            schema(where, "missing ID");
        }
        const Json* lon = field("XLongitude");
        const Json* lat = field("ZLatitude");
        if (!lon) schema(where, "missing XLongitude");
        if (!lat) schema(where, "missing ZLatitude");
        p.longitude_deg = read_number(*lon, where + "/XLongitude");
        p.latitude_deg = read_number(*lat, where + "/ZLatitude");
        if (const Json* alt = field("YAltitude")) {
            p.altitude_m = read_number(*alt, where + "/YAltitude");
        } else {
            out.legacy = true;
        }
        if (const Json* task = field("task")) {
            try {
                p.task = parse_task_code(read_text(*task, where + "/task"));
            } catch (const Error& e) {
                schema(where + "/task", e.what());
            }
        } else {
            out.legacy = true;
        }
        if (const Json* instruction = field("instruction")) {
            p.instruction = read_text(*instruction, where + "/instruction");
        } else {
            out.legacy = true;
        }
        out.path.points.push_back(std::move(p));
    }
    return out;
}

std::vector<ParsedRoute> parse_route_tree(const Json& tree) {
    if (!tree.is_object()) throw Error(ErrorCode::Schema, "document root must be an object of PATH-{id} routes");
    std::vector<ParsedRoute> routes;
    for (const auto& [key, node] : tree.items()) routes.push_back(parse_route_node(key, node));
    std::sort(routes.begin(), routes.end(), [](const ParsedRoute& a, const ParsedRoute& b) {
        return *route_number(a.path.route_id) < *route_number(b.path.route_id);
    });
    return routes;
}

std::vector<ParsedRoute> parse_routes(const Json& doc, const std::optional<std::string>& route_id) {
    if (route_id && doc.is_object() && !doc.contains(*route_id)) {
        bool bare = doc.empty() || doc.contains(kPointsKey) || doc.contains("description");
        if (bare) return {parse_route_node(*route_id, doc)};
    }
    return parse_route_tree(doc);
}

}  // namespace droneroute::doc
