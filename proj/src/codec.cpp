#include "droneroute/codec.hpp"

#include "droneroute/error.hpp"

namespace droneroute::codec {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::Schema, where + ": " + what);
}

}  // namespace

Json home_to_json(HomePoint home) {
    return {{"ZLatitude", home.latitude_deg}, {"XLongitude", home.longitude_deg}};
}

HomePoint home_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) schema(where, "expected an object with ZLatitude and XLongitude");
    if (!j.contains("ZLatitude") || !j.contains("XLongitude")) schema(where, "missing ZLatitude or XLongitude");
    HomePoint home{doc::read_number(j.at("ZLatitude"), where + "/ZLatitude"),
                   doc::read_number(j.at("XLongitude"), where + "/XLongitude")};
    if (home.latitude_deg < -90.0 || home.latitude_deg > 90.0 || home.longitude_deg < -180.0 ||
        home.longitude_deg > 180.0) {
        throw Error(ErrorCode::Domain, where + ": home coordinates out of range");
    }
    return home;
}

Json flown_to_json(const FlownRecord& flown) {
    Json j = Json::object();
    if (flown.route_id) j["route"] = *flown.route_id;
    if (flown.home) j["home"] = home_to_json(*flown.home);
    Json points = Json::object();
    for (std::size_t i = 0; i < flown.points.size(); ++i) {
        Json rec = {{"ID", i}, {"ZLatitude", flown.points[i].latitude_deg},
                    {"XLongitude", flown.points[i].longitude_deg}};
        if (i < flown.altitudes.size() && flown.altitudes[i]) rec["YAltitude"] = *flown.altitudes[i];
        points[std::string(doc::kPointPrefix) + std::to_string(i)] = std::move(rec);
    }
    j[std::string(doc::kPointsKey)] = std::move(points);
    return j;
}

FlownRecord flown_from_json(const Json& input) {
    const Json* j = &input;
    if (j->is_object() && j->contains("flown")) j = &j->at("flown");
    if (!j->is_object()) schema("flown", "expected an object");

    FlownRecord flown;
    if (auto it = j->find("route"); it != j->end() && !it->is_null()) {
        if (!it->is_string()) schema("flown/route", "expected text");
        flown.route_id = it->get<std::string>();
    }
    if (auto it = j->find("home"); it != j->end() && !it->is_null()) flown.home = home_from_json(*it, "flown/home");

    const std::string where = "flown/" + std::string(doc::kPointsKey);
    auto it = j->find(doc::kPointsKey);
    if (it == j->end()) return flown;
    bool any_altitude = false;
    for (const auto& [order, rec_ptr] : doc::ordered_points(*it, where)) {
        const Json& rec = *rec_ptr;
        const std::string at = where + "/" + std::string(doc::kPointPrefix) + std::to_string(order);
        if (!rec.is_object()) schema(at, "record must be an object");
        if (!rec.contains("ZLatitude") || !rec.contains("XLongitude")) schema(at, "missing ZLatitude or XLongitude");
        flown.points.push_back(
            {doc::read_number(rec.at("ZLatitude"), at + "/ZLatitude"), doc::read_number(rec.at("XLongitude"), at + "/XLongitude")});
        if (rec.contains("YAltitude") && !rec.at("YAltitude").is_null()) {
            flown.altitudes.emplace_back(doc::read_number(rec.at("YAltitude"), at + "/YAltitude"));
            any_altitude = true;
        } else {
            flown.altitudes.emplace_back(std::nullopt);
        }
    }
    if (!any_altitude) flown.altitudes.clear();
    return flown;
}

SimConfig config_from_json(const Json& j, SimConfig c) {
    if (j.is_null()) return c;
    if (!j.is_object()) schema("config", "expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string where = "config/" + key;
        auto num = [&]() { return doc::read_number(value, where); };
        auto whole = [&]() {
            double d = num();
            if (d != static_cast<double>(static_cast<long long>(d))) schema(where, "expected a whole number");
            return static_cast<long long>(d);
        };
        if (key == "speed_mps") {
            c.speed_mps = num();
        } else if (key == "tick_s") {
            c.tick_s = num();
        } else if (key == "default_interval_s") {
            c.default_interval_s = static_cast<int>(whole());
        } else if (key == "panorama_frames") {
            c.panorama_frames = static_cast<int>(whole());
        } else if (key == "panorama_rotation_s") {
            c.panorama_rotation_s = num();
        } else if (key == "noise_sigma_m") {
            c.noise_sigma_m = num();
        } else if (key == "rng_seed") {
            if (value.is_number_unsigned()) {
                c.rng_seed = value.get<std::uint64_t>();
            } else {
                auto v = whole();
                if (v < 0) schema(where, "seed must be non-negative");
                c.rng_seed = static_cast<std::uint64_t>(v);
            }
        } else {
            schema(where, "unknown simulation setting");
        }
    }
    check_config(c);
    return c;
}

Json config_to_json(const SimConfig& c) {
    return {{"speed_mps", c.speed_mps},
            {"tick_s", c.tick_s},
            {"default_interval_s", c.default_interval_s},
            {"panorama_frames", c.panorama_frames},
            {"panorama_rotation_s", c.panorama_rotation_s},
            {"noise_sigma_m", c.noise_sigma_m},
            {"rng_seed", c.rng_seed}};
}

Json simulation_to_json(const SimulationResult& r) {
    Json trace = Json::array();
    for (const auto& s : r.trace) {
        trace.push_back({{"t", s.time_s}, {"ZLatitude", s.latitude_deg}, {"XLongitude", s.longitude_deg},
                         {"YAltitude", s.altitude_m}});
    }
    Json arrivals = Json::array();
    for (const auto& a : r.arrivals) {
        arrivals.push_back({{"ID", a.waypoint_id}, {"t", a.time_s}, {"ZLatitude", a.measured.latitude_deg},
                            {"XLongitude", a.measured.longitude_deg}, {"YAltitude", a.altitude_m}});
    }
    Json events = Json::array();
    for (const auto& e : r.events) {
        events.push_back({{"t", e.time_s}, {"kind", event_kind_name(e.kind)}, {"waypoint", e.waypoint_id},
                          {"seq", e.sequence}});
    }
    return {{"route", r.route_id},
            {"status", "completed"},
            {"mode", mode_name(r.mode)},
            {"home", home_to_json(r.home)},
            {"config", config_to_json(r.config)},
            {"total_time_s", r.total_time_s},
            {"warnings", r.warnings},
            {"trace", std::move(trace)},
            {"arrivals", std::move(arrivals)},
            {"events", std::move(events)},
            {"flown", flown_to_json(flown_from_simulation(r))}};
}

Json frame_to_json(const Frame& f) {
    return {{"frame", f.index},
            {"t", f.time_s},
            {"ZLatitude", f.position.latitude_deg},
            {"XLongitude", f.position.longitude_deg},
            {"YAltitude", f.altitude_m},
            {"task", task_code_text(f.active_task)},
            {"label", task_label(f.active_task)},
            {"color", f.color},
            {"progress", f.progress},
            {"waypoint", f.last_waypoint},
            {"completed", f.completed}};
}

Json completion_record(const SimulationResult& r) {
    return {{"status", "completed"},
            {"message", "Simulation finished"},
            {"route", r.route_id},
            {"frames", r.trace.size()},
            {"total_time_s", r.total_time_s}};
}

Json report_to_json(const ErrorReport& report) {
    Json points = Json::array();
    for (const auto& p : report.points) {
        points.push_back({{"order", p.order},
                          {"x_planned", p.x_planned},
                          {"z_planned", p.z_planned},
                          {"x_flown", p.x_flown},
                          {"z_flown", p.z_flown},
                          {"error_x", p.error_x},
                          {"error_z", p.error_z}});
    }
    return {{"mode", mode_name(report.mode)},
            {"home", home_to_json(report.home)},
            {"points", std::move(points)},
            {"mean_error_x", report.mean_error_x},
            {"mean_error_z", report.mean_error_z}};
}

Json summary_to_json(const RouteSummary& s) {
    return {{"route_id", s.route_id}, {"description", s.description}, {"waypoint_count", s.waypoint_count}};
}

}  // namespace droneroute::codec
