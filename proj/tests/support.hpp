#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "droneroute/analysis.hpp"
#include "droneroute/codec.hpp"
#include "droneroute/document.hpp"
#include "droneroute/mission.hpp"

namespace testsupport {

using namespace droneroute;

inline std::filesystem::path fixture_dir() { return DRONEROUTE_FIXTURE_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline Path planned_fixture(int route) {
    auto text = read_file(fixture_dir() / ("ruta" + std::to_string(route) + "_planned.json"));
    return doc::parse_routes(doc::parse_text(text)).at(0).path;
}

inline FlownRecord flown_fixture(int route) {
    auto text = read_file(fixture_dir() / ("ruta" + std::to_string(route) + "_flown.json"));
    return codec::flown_from_json(doc::parse_text(text));
}

// Published error tables: Ruta 96 and 103 at 9 decimals, Ruta 3 and 97 at full precision.
struct Golden {
    int route;
    std::vector<double> error_x;
    std::vector<double> error_z;
    double mean_x;
    double mean_z;
};

inline const std::vector<Golden>& golden_tables() {
    static const std::vector<Golden> g = {
        {96,
         {0.290725129, 0.132664223, 0.013403684, 0.063477732, 0.013553123, 0.012294602, 0.012935753, 0.028930066},
         {0.145115628, 0.061602569, 0.003664807, 0.025015923, 0.063966466, 0.116442864, 0.037499119, 0.019766211},
         0.070998039, 0.059134198},
        {103,
         {0.027235532, 0.141195261, 0.141362424, 0.029191693, 0.073660025, 0.105805634, 0.035412369, 0.105529863,
          0.017082335},
         {0.245329015, 0.344870194, 0.26875784, 0.133801522, 0.046762006, 0.005556442, 0.053164855, 0.202014292,
          0.089790198},
         0.075163904, 0.154449596},
        {3,
         {0.31211886061977300, 0.07236824901104380, 0.00797057779026478, 0.09561846851884150},
         {0.62659141202283700, 0.03379182397712200, 0.00030899173514332, 0.09469865671123200},
         0.12201903898498100, 0.18884772111158300},
        {97,
         {0.24222103037470900, 0.02847621412359570, 0.58267209658396100, 0.00083770547489515, 0.63025082090898400},
         {0.57628815649260000, 0.05204124503319820, 0.57045894082420300, 0.06373587000232290, 0.06551878479271340},
         0.29689157349322900, 0.26560859942900800},
    };
    return g;
}

// Ruta 96 planned latitude and z columns, used for the meters-per-degree regression.
inline const std::vector<std::pair<double, double>>& ruta96_original_lat_z() {
    static const std::vector<std::pair<double, double>> v = {
        {4.60076652464770000, 16.6782626999877000}, {4.60066636721870000, 5.5290281911492700},
        {4.60063163766860000, 1.6630354003308100},  {4.60059277158126000, -2.6634247186978300},
        {4.60048664994933000, -14.4765769997510000}, {4.60059602057194000, -2.3017564992677600},
        {4.60062709833645000, 1.1577301109336100},  {4.60066534790818000, 5.4155615003288400},
    };
    return v;
}

inline std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
    static const std::array<std::string, 12> pieces = {"a", "Z", " ", "ruta", "ñ", "é", "·", "→", "漢", "🚁", "\"", "\\"};
    std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, pieces.size() - 1);
    std::string s;
    for (std::size_t i = len(rng); i > 0; --i) s += pieces[pick(rng)];
    return s;
}

inline std::string random_instruction(std::mt19937_64& rng, CameraTask task) {
    std::uniform_int_distribution<int> coin(0, 2);
    switch (task) {
        case CameraTask::Video: {
            static const std::array<std::string, 3> v = {"", "start", "stop"};
            return v[coin(rng)];
        }
        case CameraTask::Interval:
            return coin(rng) == 0 ? "" : std::to_string(std::uniform_int_distribution<int>(1, 30)(rng));
        case CameraTask::Panorama:
            return coin(rng) == 0 ? "" : std::to_string(std::uniform_int_distribution<int>(1, 36)(rng));
        default:
            return "";
    }
}

// Any valid path: full coordinate range, all task kinds, optional unicode description.
inline Path random_valid_path(std::mt19937_64& rng, long long number, std::size_t max_points = 20) {
    std::uniform_real_distribution<double> lat(-90.0, 90.0), lon(-180.0, 180.0), alt(0.0, 120.0);
    std::uniform_int_distribution<std::size_t> count(0, max_points);
    std::uniform_int_distribution<int> task(0, 4), coin(0, 1);
    Path p;
    p.route_id = make_route_id(number);
    if (coin(rng)) p.description = random_text(rng, 12);
    for (std::size_t i = 0, n = count(rng); i < n; ++i) {
        PathPoint pt;
        pt.id = static_cast<int>(i);
        pt.latitude_deg = lat(rng);
        pt.longitude_deg = lon(rng);
        pt.altitude_m = alt(rng);
        pt.task = static_cast<CameraTask>(task(rng));
        pt.instruction = random_instruction(rng, pt.task);
        p.points.push_back(std::move(pt));
    }
    return p;
}

// Flyable path around a home: offsets within `radius_m`, video tasks as
// toggles so any sequence schedules.
inline Path random_flyable_path(std::mt19937_64& rng, HomePoint home, std::size_t max_points = 12,
                                double radius_m = 300.0) {
    std::uniform_real_distribution<double> off(-radius_m, radius_m), alt(1.0, 120.0);
    std::uniform_int_distribution<std::size_t> count(1, max_points);
    std::uniform_int_distribution<int> task(0, 4), coin(0, 2);
    LocalFrame frame(home, GeodesyMode::Corrected);
    Path p;
    p.route_id = "PATH-1";
    for (std::size_t i = 0, n = count(rng); i < n; ++i) {
        PathPoint pt;
        pt.id = static_cast<int>(i);
        GeoPoint g = frame.from_local({off(rng), off(rng)});
        pt.latitude_deg = g.latitude_deg;
        pt.longitude_deg = g.longitude_deg;
        pt.altitude_m = alt(rng);
        pt.task = static_cast<CameraTask>(task(rng));
        if (pt.task == CameraTask::Interval && coin(rng)) {
            pt.instruction = std::to_string(std::uniform_int_distribution<int>(1, 20)(rng));
        } else if (pt.task == CameraTask::Panorama && coin(rng)) {
            pt.instruction = std::to_string(std::uniform_int_distribution<int>(1, 12)(rng));
        }
        p.points.push_back(std::move(pt));
    }
    return p;
}

}  // namespace testsupport
