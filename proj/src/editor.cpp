#include "droneroute/editor.hpp"

#include <cmath>

#include "droneroute/document.hpp"
#include "droneroute/error.hpp"

namespace droneroute {

double round_for_display(double degrees) { return std::round(degrees * 1e5) / 1e5; }

EditSession::EditSession(Path path, Limits limits) : working_(std::move(path)), baseline_(working_), limits_(limits) {}

EditSession EditSession::open(const Path& source, Limits limits) {
    require_valid(source, limits);
    return EditSession(source, limits);
}

EditSession EditSession::open_new(std::string route_id, Limits limits) {
    Path path;
    path.route_id = std::move(route_id);
    require_valid(path, limits);
    return EditSession(std::move(path), limits);
}

PathPoint& EditSession::point(int id) {
    if (id < 0 || id >= static_cast<int>(working_.points.size())) {
        throw Error(ErrorCode::NotFound, "no waypoint with id " + std::to_string(id));
    }
    return working_.points[static_cast<std::size_t>(id)];
}

void EditSession::checkpoint() {
    undo_.push_back(working_);
    if (undo_.size() > kUndoDepth) undo_.pop_front();
}

PathPoint EditSession::add_waypoint(double latitude_deg, double longitude_deg) {
    if (!std::isfinite(latitude_deg) || latitude_deg < -90.0 || latitude_deg > 90.0) {
        throw Error(ErrorCode::Domain, "latitude " + doc::shortest(latitude_deg) + " outside [-90, 90]");
    }
    if (!std::isfinite(longitude_deg) || longitude_deg < -180.0 || longitude_deg > 180.0) {
        throw Error(ErrorCode::Domain, "longitude " + doc::shortest(longitude_deg) + " outside [-180, 180]");
    }
    if (working_.points.size() >= limits_.max_waypoints) {
        throw Error(ErrorCode::Capacity, "route already has the maximum of " +
                                             std::to_string(limits_.max_waypoints) + " waypoints");
    }
    checkpoint();
    PathPoint p;
    p.id = static_cast<int>(working_.points.size());
    p.latitude_deg = latitude_deg;
    p.longitude_deg = longitude_deg;
    p.altitude_m = std::min(kDefaultWaypointAltitudeM, limits_.altitude_max_m);
    working_.points.push_back(p);
    return p;
}

void EditSession::remove_waypoint(int id) {
    point(id);
    checkpoint();
    working_.points.erase(working_.points.begin() + id);
    for (std::size_t i = 0; i < working_.points.size(); ++i) working_.points[i].id = static_cast<int>(i);
}

PathPoint EditSession::set_altitude(int id, double meters) {
    point(id);
    if (!std::isfinite(meters) || meters < 0.0 || meters > limits_.altitude_max_m) {
        throw Error(ErrorCode::Domain, "altitude " + doc::shortest(meters) + " m outside [0, " +
                                           doc::shortest(limits_.altitude_max_m) + "] m");
    }
    checkpoint();
    auto& p = point(id);
    p.altitude_m = meters;
    return p;
}

PathPoint EditSession::set_task(int id, CameraTask kind, std::string instruction) {
    point(id);
    if (!is_known_task(kind)) throw Error(ErrorCode::Domain, "unknown task code " + task_code_text(kind));
    if (auto problem = instruction_problem(kind, instruction); !problem.empty()) {
        throw Error(ErrorCode::Domain, problem);
    }
    checkpoint();
    auto& p = point(id);
    p.task = kind;
    p.instruction = std::move(instruction);
    return p;
}

void EditSession::set_description(std::string text) {
    checkpoint();
    if (text.empty()) {
        working_.description.reset();
    } else {
        working_.description = std::move(text);
    }
}

std::vector<WaypointRow> EditSession::waypoint_details() const {
    std::vector<WaypointRow> rows;
    rows.reserve(working_.points.size());
    for (const auto& p : working_.points) {
        rows.push_back({p.id + 1, round_for_display(p.latitude_deg), round_for_display(p.longitude_deg),
                        p.altitude_m, doc::shortest(p.altitude_m) + " m",
                        is_known_task(p.task) ? std::string(task_label(p.task)) : "unknown"});
    }
    return rows;
}

std::string EditSession::commit(RouteStore& store) {
    if (!dirty() && store.snapshot().contains(working_.route_id)) return working_.route_id;
    auto id = store.save_route(working_);
    baseline_ = working_;
    return id;
}

bool EditSession::undo() {
    if (undo_.empty()) return false;
    working_ = std::move(undo_.back());
    undo_.pop_back();
    return true;
}

}  // namespace droneroute
