#pragma once

#include <deque>
#include <string>
#include <vector>

#include "droneroute/mission.hpp"
#include "droneroute/store.hpp"

namespace droneroute {

inline constexpr double kDefaultWaypointAltitudeM = 10.0;
inline constexpr std::size_t kUndoDepth = 64;

// One line of the waypoint details table (1-based display order, coordinates
// rounded to 5 decimals for display only).
struct WaypointRow {
    int display_order = 0;
    double latitude = 0.0;
    double longitude = 0.0;
    double height_m = 0.0;
    std::string height_text;
    std::string task_label;

    bool operator==(const WaypointRow&) const = default;
};

double round_for_display(double degrees);

// Single-owner editing session over a working copy of a route. The store is
// touched only by commit().
class EditSession {
public:
    // Deep copy of an existing, valid route. Throws Error{Validation} otherwise.
    static EditSession open(const Path& source, Limits limits = {});
    // Empty route under a fresh id.
    static EditSession open_new(std::string route_id, Limits limits = {});

    const Path& working_copy() const noexcept { return working_; }
    bool dirty() const noexcept { return working_ != baseline_; }
    std::size_t undo_depth() const noexcept { return undo_.size(); }

    PathPoint add_waypoint(double latitude_deg, double longitude_deg);
    void remove_waypoint(int id);
    PathPoint set_altitude(int id, double meters);
    PathPoint set_task(int id, CameraTask kind, std::string instruction = {});
    void set_description(std::string text);

    std::vector<WaypointRow> waypoint_details() const;

    // Saves the working copy; on failure the session is left unchanged.
    std::string commit(RouteStore& store);

    // Returns false (and changes nothing) when there is nothing to undo.
    bool undo();

private:
    EditSession(Path path, Limits limits);

    PathPoint& point(int id);
    void checkpoint();

    Path working_;
    Path baseline_;
    Limits limits_;
    std::deque<Path> undo_;
};

}  // namespace droneroute
