#pragma once

// Planned-vs-flown error analysis. Planned and flown positions are paired by
// order, projected into the home frame, and compared per axis.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droneroute/geodesy.hpp"
#include "droneroute/mission.hpp"
#include "droneroute/simulator.hpp"

namespace droneroute {

struct FlownRecord {
    std::optional<std::string> route_id;
    std::optional<HomePoint> home;
    std::vector<GeoPoint> points;
    std::vector<std::optional<double>> altitudes;  // empty, or one per point

    bool operator==(const FlownRecord&) const = default;
};

FlownRecord flown_from_simulation(const SimulationResult& result);

struct PointError {
    int order = 0;
    double x_planned = 0.0;
    double z_planned = 0.0;
    double x_flown = 0.0;
    double z_flown = 0.0;
    double error_x = 0.0;
    double error_z = 0.0;
};

struct ErrorReport {
    std::vector<PointError> points;
    double mean_error_x = 0.0;
    double mean_error_z = 0.0;
    GeodesyMode mode = GeodesyMode::PaperFaithful;
    HomePoint home;
};

// Throws Error{Pairing} when the point counts differ, Error{Domain} for an
// empty route.
ErrorReport compare(const Path& planned, const FlownRecord& flown, HomePoint home,
                    GeodesyMode mode = GeodesyMode::PaperFaithful);
ErrorReport compare(const Path& planned, const FlownRecord& flown, const LocalFrame& frame);

// Home used when none is given: the flown record's, else planned waypoint 0.
HomePoint analysis_home(const Path& planned, const FlownRecord& flown);

struct ErrorSummary {
    double max_error_x = 0.0;
    double max_error_z = 0.0;
    double mean_error_x = 0.0;
    double mean_error_z = 0.0;
};

// Rounded to 0.1 m. Throws Error{Domain} on an empty report.
ErrorSummary summarize(const ErrorReport& report);

double round_to_decimeter(double meters);

enum class ReportFormat { Csv, Table };

ReportFormat parse_report_format(std::string_view text);

// Deterministic text. CSV: header, one row per point, trailing mean row;
// full precision unless `decimals` >= 0. The table is fixed at 9 decimals.
std::string render_report(const ErrorReport& report, ReportFormat format, int decimals = -1);

// Long-form x/z series (planned and flown) for external plotting.
// `decimals` < 0 keeps full precision.
std::string render_plot_data(const ErrorReport& report, int decimals = -1);

}  // namespace droneroute
