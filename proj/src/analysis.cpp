#include "droneroute/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "droneroute/document.hpp"
#include "droneroute/error.hpp"
#include "droneroute/kernels.hpp"

namespace droneroute {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string number(double v, int decimals) { return decimals < 0 ? doc::shortest(v) : fixed(v, decimals); }

}  // namespace

FlownRecord flown_from_simulation(const SimulationResult& result) {
    FlownRecord flown;
    flown.route_id = result.route_id;
    flown.home = result.home;
    for (const auto& a : result.arrivals) {
        flown.points.push_back(a.measured);
        flown.altitudes.emplace_back(a.altitude_m);
    }
    return flown;
}

HomePoint analysis_home(const Path& planned, const FlownRecord& flown) {
    if (flown.home) return *flown.home;
    return default_home(planned);
}

ErrorReport compare(const Path& planned, const FlownRecord& flown, HomePoint home, GeodesyMode mode) {
    return compare(planned, flown, LocalFrame(home, mode));
}

ErrorReport compare(const Path& planned, const FlownRecord& flown, const LocalFrame& frame) {
    if (planned.points.size() != flown.points.size()) {
        throw Error(ErrorCode::Pairing, "cannot pair " + std::to_string(planned.points.size()) +
                                            " planned waypoints with " + std::to_string(flown.points.size()) +
                                            " flown points");
    }
    if (planned.points.empty()) throw Error(ErrorCode::Domain, "route has no waypoints to compare");

    const std::size_t n = planned.points.size();
    std::vector<GeoPoint> planned_geo(n);
    std::transform(planned.points.begin(), planned.points.end(), planned_geo.begin(), position_of);

    std::vector<LocalCoord> planned_local(n), flown_local(n);
    std::vector<double> ex(n), ez(n);
    kernels::project_parallel(frame, planned_geo, planned_local);
    kernels::project_parallel(frame, flown.points, flown_local);
    kernels::axis_errors_parallel(planned_local, flown_local, ex, ez);

    ErrorReport report;
    report.mode = frame.mode();
    report.home = frame.home();
    report.points.reserve(n);
    // Means are summed in order so results do not depend on thread count.
    double sum_x = 0.0, sum_z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        report.points.push_back({planned.points[i].id, planned_local[i].x_m, planned_local[i].z_m, flown_local[i].x_m,
                                 flown_local[i].z_m, ex[i], ez[i]});
        sum_x += ex[i];
        sum_z += ez[i];
    }
    report.mean_error_x = sum_x / static_cast<double>(n);
    report.mean_error_z = sum_z / static_cast<double>(n);
    return report;
}

double round_to_decimeter(double meters) { return std::round(meters * 10.0) / 10.0; }

ErrorSummary summarize(const ErrorReport& report) {
    if (report.points.empty()) throw Error(ErrorCode::Domain, "cannot summarize an empty report");
    ErrorSummary s;
    for (const auto& p : report.points) {
        s.max_error_x = std::max(s.max_error_x, p.error_x);
        s.max_error_z = std::max(s.max_error_z, p.error_z);
    }
    s.max_error_x = round_to_decimeter(s.max_error_x);
    s.max_error_z = round_to_decimeter(s.max_error_z);
    s.mean_error_x = round_to_decimeter(report.mean_error_x);
    s.mean_error_z = round_to_decimeter(report.mean_error_z);
    return s;
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::Csv;
    if (text == "table" || text == "table-text" || text == "text") return ReportFormat::Table;
    throw Error(ErrorCode::Domain, "unknown report format '" + std::string(text) + "' (expected csv or table)");
}

std::string render_report(const ErrorReport& report, ReportFormat format, int decimals) {
    if (report.points.empty()) throw Error(ErrorCode::Domain, "cannot render an empty report");
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "order,x_planned,z_planned,x_flown,z_flown,error_x,error_z\n";
        for (const auto& p : report.points) {
            out << p.order << ',' << number(p.x_planned, decimals) << ',' << number(p.z_planned, decimals) << ','
                << number(p.x_flown, decimals) << ',' << number(p.z_flown, decimals) << ','
                << number(p.error_x, decimals) << ',' << number(p.error_z, decimals) << '\n';
        }
        out << "mean,,,,," << number(report.mean_error_x, decimals) << ',' << number(report.mean_error_z, decimals)
            << '\n';
        return out.str();
    }

    char line[256];
    std::snprintf(line, sizeof line, "%5s %14s %14s %14s %14s %12s %12s\n", "order", "x_planned", "z_planned",
                  "x_flown", "z_flown", "error_x", "error_z");
    out << "mode: " << mode_name(report.mode) << "  home: " << doc::shortest(report.home.latitude_deg) << ", "
        << doc::shortest(report.home.longitude_deg) << '\n'
        << line;
    for (const auto& p : report.points) {
        std::snprintf(line, sizeof line, "%5d %14.9f %14.9f %14.9f %14.9f %12.9f %12.9f\n", p.order, p.x_planned,
                      p.z_planned, p.x_flown, p.z_flown, p.error_x, p.error_z);
        out << line;
    }
    std::snprintf(line, sizeof line, "%5s %14s %14s %14s %14s %12.9f %12.9f\n", "mean", "", "", "", "",
                  report.mean_error_x, report.mean_error_z);
    out << line;
    return out.str();
}

std::string render_plot_data(const ErrorReport& report, int decimals) {
    std::ostringstream out;
    out << "series,order,x_m,z_m\n";
    out << "home,,0,0\n";
    for (const auto& p : report.points) {
        out << "planned," << p.order << ',' << number(p.x_planned, decimals) << ',' << number(p.z_planned, decimals)
            << '\n';
    }
    for (const auto& p : report.points) {
        out << "flown," << p.order << ',' << number(p.x_flown, decimals) << ',' << number(p.z_flown, decimals)
            << '\n';
    }
    return out.str();
}

}  // namespace droneroute
