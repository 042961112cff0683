#include <doctest.h>

#include <random>

#include "droneroute/analysis.hpp"
#include "droneroute/error.hpp"
#include "support.hpp"

using namespace droneroute;

namespace {

HomePoint fixture_home(int route) { return *testsupport::flown_fixture(route).home; }

ErrorReport golden_report(int route) {
    return compare(testsupport::planned_fixture(route), testsupport::flown_fixture(route), fixture_home(route),
                   GeodesyMode::PaperFaithful);
}

}  // namespace

TEST_CASE("golden tables") {
    for (const auto& g : testsupport::golden_tables()) {
        CAPTURE(g.route);
        auto r = golden_report(g.route);
        REQUIRE(r.points.size() == g.error_x.size());
        for (std::size_t i = 0; i < g.error_x.size(); ++i) {
            CAPTURE(i);
            CHECK(std::abs(r.points[i].error_x - g.error_x[i]) < 1e-6);
            CHECK(std::abs(r.points[i].error_z - g.error_z[i]) < 1e-6);
            CHECK(r.points[i].order == static_cast<int>(i));
        }
        CHECK(std::abs(r.mean_error_x - g.mean_x) < 1e-6);
        CHECK(std::abs(r.mean_error_z - g.mean_z) < 1e-6);
    }
}

TEST_CASE("Ruta 96 row 1") {
    auto r = golden_report(96);
    CHECK(std::abs(r.points[0].error_x - 0.290725129) < 1e-6);
    CHECK(std::abs(r.points[0].z_planned - 16.6782626999877) < 1e-3);
    CHECK(std::abs(r.points[0].x_flown - 2.42273837381847) < 1e-3);
}

TEST_CASE("Ruta 103 row 9 as printed") {
    // The printed planned longitude drops a digit; it does not reproduce its
    // own X column or the 0.017082335 error, the reconstructed value does.
    auto planned = testsupport::planned_fixture(103);
    CHECK(planned.points[8].longitude_deg == -74.0626793523982);
    auto printed = planned;
    printed.points[8].longitude_deg = -74.062679523982;
    auto r = compare(printed, testsupport::flown_fixture(103), fixture_home(103), GeodesyMode::PaperFaithful);
    CHECK(std::abs(r.points[8].error_x - 0.00111) < 1e-4);
    CHECK(std::abs(r.points[8].error_x - 0.017082335) > 0.01);
    auto fixed = golden_report(103);
    CHECK(std::abs(fixed.points[8].x_planned - 10.6707588297402) < 1e-6);
}

TEST_CASE("summaries") {
    auto s96 = summarize(golden_report(96));
    CHECK(s96.max_error_x == 0.3);
    CHECK(s96.mean_error_x == 0.1);
    auto s97 = summarize(golden_report(97));
    CHECK(s97.mean_error_x == 0.3);
    CHECK(s97.mean_error_z == 0.3);

    ErrorReport zero;
    zero.points.push_back({0, 1, 2, 1, 2, 0, 0});
    auto z = summarize(zero);
    CHECK(z.max_error_x == 0.0);
    CHECK(z.max_error_z == 0.0);
    CHECK(z.mean_error_x == 0.0);
    CHECK(z.mean_error_z == 0.0);
    CHECK_THROWS_AS(summarize(ErrorReport{}), Error);
    CHECK(round_to_decimeter(0.145115628) == 0.1);
    CHECK(round_to_decimeter(0.25) == 0.3);
}

TEST_CASE("pairing and empty input") {
    auto planned = testsupport::planned_fixture(96);
    auto flown = testsupport::flown_fixture(103);
    try {
        compare(planned, flown, fixture_home(96));
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Pairing);
        CHECK(std::string(e.what()) == "cannot pair 8 planned waypoints with 9 flown points");
    }
    CHECK_THROWS_AS(compare(Path{"PATH-1", std::nullopt, {}}, FlownRecord{}, fixture_home(96)), Error);
}

TEST_CASE("default mode and home") {
    auto planned = testsupport::planned_fixture(96);
    auto flown = testsupport::flown_fixture(96);
    auto r = compare(planned, flown, analysis_home(planned, flown));
    CHECK(r.mode == GeodesyMode::PaperFaithful);
    CHECK(std::abs(r.mean_error_x - 0.070998039) < 1e-6);
    flown.home.reset();
    CHECK(analysis_home(planned, flown) == HomePoint{planned.points[0].latitude_deg, planned.points[0].longitude_deg});
}

TEST_CASE("render_report") {
    auto r = golden_report(96);
    auto csv = render_report(r, ReportFormat::Csv);
    CHECK(csv == render_report(r, ReportFormat::Csv));
    CHECK(csv.rfind("order,x_planned,z_planned,x_flown,z_flown,error_x,error_z\n", 0) == 0);
    auto fixed = render_report(r, ReportFormat::Csv, 9);
    CHECK(fixed.find(",0.290725129,0.145115628\n") != std::string::npos);
    CHECK(fixed.find("mean,,,,,0.070998039,0.059134198\n") != std::string::npos);

    // Every printed error appears in the 9-decimal table.
    auto table = render_report(r, ReportFormat::Table);
    for (double v : testsupport::golden_tables()[0].error_x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9f", v);
        CHECK(table.find(buf) != std::string::npos);
    }

    ErrorReport one;
    one.points.push_back({0, 1, 2, 1.5, 2, 0.5, 0});
    one.mean_error_x = 0.5;
    auto text = render_report(one, ReportFormat::Csv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text == "order,x_planned,z_planned,x_flown,z_flown,error_x,error_z\n0,1,2,1.5,2,0.5,0\nmean,,,,,0.5,0\n");
    CHECK_THROWS_AS(render_report(ErrorReport{}, ReportFormat::Csv), Error);
    CHECK(parse_report_format("table-text") == ReportFormat::Table);
    CHECK_THROWS_AS(parse_report_format("xml"), Error);
}

TEST_CASE("plot data") {
    auto r = golden_report(3);
    auto text = render_plot_data(r, 3);
    CHECK(text.rfind("series,order,x_m,z_m\nhome,,0,0\nplanned,0,8.224,-4.340\n", 0) == 0);
    CHECK(text.find("flown,0,7.912,-3.713\n") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2 + 2 * 4);
}

TEST_CASE("properties of compare") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-0.002, 0.002), hl(-60, 60), hlon(-170, 170);
    for (int round = 0; round < 300; ++round) {
        HomePoint home{hl(rng), hlon(rng)};
        Path planned{"PATH-1", std::nullopt, {}};
        FlownRecord flown;
        for (int i = 0; i < 6; ++i) {
            planned.points.push_back({i, home.latitude_deg + d(rng), home.longitude_deg + d(rng), 10, CameraTask::None, ""});
            flown.points.push_back({planned.points[i].latitude_deg + d(rng) * 1e-3,
                                    planned.points[i].longitude_deg + d(rng) * 1e-3});
        }
        for (auto mode : {GeodesyMode::PaperFaithful, GeodesyMode::Corrected}) {
            auto r = compare(planned, flown, home, mode);

            // Independent recomputation with the difference taken first.
            const double pi = 3.141592653589793;
            const double R = mode == GeodesyMode::PaperFaithful ? 6378000.0 : 6378137.0;
            const double cf = mode == GeodesyMode::PaperFaithful ? std::cos(home.latitude_deg * 180.0 / pi)
                                                                 : std::cos(home.latitude_deg * pi / 180.0);
            double sx = 0, sz = 0;
            for (std::size_t i = 0; i < flown.points.size(); ++i) {
                double ex = std::abs((flown.points[i].longitude_deg - planned.points[i].longitude_deg) * pi / 180.0 * R * cf);
                double ez = std::abs((flown.points[i].latitude_deg - planned.points[i].latitude_deg) * pi / 180.0 * R);
                CHECK(std::abs(r.points[i].error_x - ex) < 1e-9);
                CHECK(std::abs(r.points[i].error_z - ez) < 1e-9);
                sx += ex;
                sz += ez;
            }
            CHECK(std::abs(r.mean_error_x - sx / 6) < 1e-9);
            CHECK(std::abs(r.mean_error_z - sz / 6) < 1e-9);

            // Home latitude shift leaves error_z alone.
            auto shifted = compare(planned, flown, HomePoint{home.latitude_deg + d(rng), home.longitude_deg}, mode);
            for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(shifted.points[i].error_z - r.points[i].error_z) < 1e-9);

            // Doubling R doubles every error.
            LocalFrame big(home, mode, 2.0 * R);
            auto doubled = compare(planned, flown, big);
            for (std::size_t i = 0; i < 6; ++i) {
                CHECK(doubled.points[i].error_x == doctest::Approx(2.0 * r.points[i].error_x).epsilon(1e-9));
                CHECK(doubled.points[i].error_z == doctest::Approx(2.0 * r.points[i].error_z).epsilon(1e-9));
            }

            FlownRecord same;
            for (const auto& p : planned.points) same.points.push_back(position_of(p));
            auto zero = compare(planned, same, home, mode);
            CHECK(zero.mean_error_x == 0.0);
            CHECK(zero.mean_error_z == 0.0);
        }
    }
}
