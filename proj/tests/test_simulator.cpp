#include <doctest.h>

#include <random>

#include "droneroute/analysis.hpp"
#include "droneroute/error.hpp"
#include "droneroute/simulator.hpp"
#include "sim_oracle.hpp"
#include "support.hpp"

using namespace droneroute;

namespace {

constexpr HomePoint kHome{4.60122, -74.0658};

// Points placed by local offsets (x, z) with altitudes.
Path local_path(std::vector<std::array<double, 3>> xza, GeodesyMode mode = GeodesyMode::Corrected) {
    LocalFrame f(kHome, mode);
    Path p{"PATH-1", std::nullopt, {}};
    int id = 0;
    for (auto [x, z, alt] : xza) {
        auto g = f.from_local({x, z});
        p.points.push_back({id++, g.latitude_deg, g.longitude_deg, alt, CameraTask::None, ""});
    }
    return p;
}

std::vector<CameraEvent> of_kind(const SimulationResult& r, CameraEventKind k) {
    std::vector<CameraEvent> v;
    for (const auto& e : r.events)
        if (e.kind == k) v.push_back(e);
    return v;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("compile_schedule") {
    auto one = local_path({{0, 0, 10}});
    one.points[0].task = CameraTask::Photo;
    auto prog = compile_schedule(one);
    REQUIRE(prog.actions.size() == 1);
    CHECK(prog.actions[0].photo);

    auto video = local_path({{0, 0, 10}, {10, 0, 10}, {20, 0, 10}});
    video.points[0].task = CameraTask::Video;
    video.points[0].instruction = "start";
    video.points[2].task = CameraTask::Video;
    video.points[2].instruction = "stop";
    prog = compile_schedule(video);
    CHECK(prog.actions[0].video == VideoAction::Start);
    CHECK(prog.actions[1].video == VideoAction::None);
    CHECK(prog.actions[2].video == VideoAction::Stop);
    CHECK(prog.warnings.empty());

    auto orphan = video;
    orphan.points[0].task = CameraTask::None;
    CHECK(code_of([&] { compile_schedule(orphan); }) == ErrorCode::Schedule);
    auto twice = video;
    twice.points[2].instruction = "start";
    CHECK(code_of([&] { compile_schedule(twice); }) == ErrorCode::Schedule);

    auto toggles = video;
    toggles.points[0].instruction = "";
    toggles.points[2].instruction = "";
    prog = compile_schedule(toggles);
    CHECK(prog.actions[0].video == VideoAction::Start);
    CHECK(prog.actions[2].video == VideoAction::Stop);

    auto open_end = video;
    open_end.points[2].task = CameraTask::None;
    prog = compile_schedule(open_end);
    CHECK(prog.actions[2].close_open_video);
    CHECK(prog.warnings.size() == 1);

    auto interval = video;
    interval.points[1] = {1, interval.points[1].latitude_deg, interval.points[1].longitude_deg, 10,
                          CameraTask::Interval, ""};
    prog = compile_schedule(interval);
    CHECK(prog.actions[1].interval_s == 2.0);
}

TEST_CASE("two points 50 m apart") {
    auto p = local_path({{0, 0, 10}, {50, 0, 10}});
    SimConfig c;
    auto r = simulate(p, kHome, c, GeodesyMode::Corrected);
    auto e = simoracle::fine_step(p, kHome, c, GeodesyMode::Corrected);
    REQUIRE(r.arrivals.size() == 2);
    CHECK(std::abs(r.arrivals[0].time_s - 2.0) < 1e-9);
    CHECK(std::abs(r.arrivals[1].time_s - (2.0 + 10.0)) < 1e-9);
    CHECK(std::abs(r.arrivals[1].time_s - e.arrivals[1]) < 1e-6);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].time_s > r.trace[i - 1].time_s);
    CHECK(r.arrivals[1].measured == position_of(p.points[1]));
}

TEST_CASE("interval shots on a 50 m leg") {
    auto p = local_path({{0, 0, 10}, {50, 0, 10}});
    p.points[0].task = CameraTask::Interval;
    p.points[0].instruction = "2";
    auto r = simulate(p, kHome, {}, GeodesyMode::Corrected);
    auto shots = of_kind(r, CameraEventKind::IntervalShot);
    REQUIRE(shots.size() == 5);
    const double leg_start = r.arrivals[0].time_s;
    auto oracle = simoracle::enumerate_shots(10.0, 2.0);
    REQUIRE(oracle.size() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(std::abs(shots[k].time_s - leg_start - 2.0 * (k + 1)) < 1e-9);
        CHECK(std::abs(shots[k].time_s - leg_start - oracle[k]) <= 1e-3 + 1e-9);
        CHECK(shots[k].sequence == k + 1);
    }
    // The last shot coincides with the arrival.
    CHECK(shots.back().time_s == r.arrivals[1].time_s);
}

TEST_CASE("noise") {
    auto p = testsupport::planned_fixture(97);
    SimConfig c;
    auto clean = simulate(p, default_home(p), c, GeodesyMode::PaperFaithful);
    for (std::size_t i = 0; i < p.points.size(); ++i) CHECK(clean.arrivals[i].measured == position_of(p.points[i]));
    auto rep = compare(p, flown_from_simulation(clean), default_home(p), GeodesyMode::PaperFaithful);
    CHECK(rep.mean_error_x == 0.0);
    CHECK(rep.mean_error_z == 0.0);

    c.noise_sigma_m = 0.15;
    c.rng_seed = 5;
    auto a = simulate(p, default_home(p), c, GeodesyMode::Corrected);
    auto b = simulate(p, default_home(p), c, GeodesyMode::Corrected);
    CHECK(a == b);
    c.rng_seed = 6;
    auto other = simulate(p, default_home(p), c, GeodesyMode::Corrected);
    CHECK_FALSE(a == other);
    // Noise moves only the measured arrivals, never the flown trace.
    CHECK(a.trace == other.trace);
    CHECK(a.trace == simulate(p, default_home(p), SimConfig{}, GeodesyMode::Corrected).trace);
}

TEST_CASE("frames") {
    auto p = local_path({{0, 0, 10}, {50, 0, 10}, {50, 30, 20}});
    p.points[0].task = CameraTask::Interval;
    p.points[1].task = CameraTask::Panorama;
    p.points[2].task = CameraTask::Photo;
    SimConfig c;
    auto r = simulate(p, kHome, c, GeodesyMode::Corrected);
    FrameStream s(r);

    // Expected duration recomputed from geometry: climb, legs, panorama hover.
    double T = 10.0 / c.speed_mps + 50.0 / c.speed_mps + c.panorama_rotation_s +
               std::hypot(30.0, 10.0) / c.speed_mps;
    CHECK(std::abs(r.total_time_s - T) < 1e-9);
    // One sample per tick from t = 0, plus the exact end when it falls between ticks.
    const auto ticks = static_cast<std::size_t>(std::floor(T / c.tick_s));
    const bool end_on_tick = std::abs(T - static_cast<double>(ticks) * c.tick_s) <= 1e-12;
    CHECK(s.size() == ticks + 1 + (end_on_tick ? 0 : 1));

    auto first = s.at(0);
    CHECK(first.position == position_of(p.points[0]));
    CHECK(first.altitude_m == 0.0);
    CHECK(first.last_waypoint == -1);

    int interval_frames = 0, panorama_frames = 0;
    std::size_t count = 0;
    std::optional<Frame> last;
    while (auto f = step_stream(s)) {
        ++count;
        if (f->time_s > r.arrivals[0].time_s + 1e-9 && f->time_s < r.arrivals[1].time_s - 1e-9) {
            CHECK(f->active_task == CameraTask::Interval);
            CHECK(f->color == "#008000");
            ++interval_frames;
        }
        if (f->active_task == CameraTask::Panorama) {
            CHECK(f->color == "#FFFF00");
            ++panorama_frames;
        }
        CHECK_FALSE(f->completed != (f->index + 1 == s.size()));
        last = f;
    }
    CHECK(count == s.size());
    CHECK(interval_frames > 90);
    CHECK(panorama_frames >= 79);
    REQUIRE(last);
    CHECK(last->completed);
    CHECK(last->progress == 1.0);
    CHECK(last->last_waypoint == 2);
    CHECK(s.finished());
    CHECK_FALSE(s.next());

    FrameStream mobile(r, Palette::Mobile);
    CHECK(mobile.at(s.size() / 4).color == "#FFA500");

    auto pano = of_kind(r, CameraEventKind::PanoramaFrame);
    REQUIRE(pano.size() == 8);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(pano[k].time_s - r.arrivals[1].time_s - k * 1.0) < 1e-9);
    auto done = of_kind(r, CameraEventKind::PanoramaComplete);
    REQUIRE(done.size() == 1);
    CHECK(std::abs(done[0].time_s - r.arrivals[1].time_s - 8.0) < 1e-9);
}

TEST_CASE("video events") {
    auto p = local_path({{0, 0, 10}, {20, 0, 10}, {40, 0, 10}, {60, 0, 10}});
    p.points[0].task = CameraTask::Video;
    p.points[2].task = CameraTask::Video;
    auto r = simulate(p, kHome, {}, GeodesyMode::Corrected);
    auto starts = of_kind(r, CameraEventKind::VideoStart);
    auto stops = of_kind(r, CameraEventKind::VideoStop);
    REQUIRE(starts.size() == 1);
    REQUIRE(stops.size() == 1);
    CHECK(starts[0].time_s == r.arrivals[0].time_s);
    CHECK(stops[0].time_s == r.arrivals[2].time_s);
    FrameStream s(r);
    CHECK(s.at(40).active_task == CameraTask::Video);
    CHECK(s.at(40).color == "#FF0000");

    p.points[2].task = CameraTask::None;
    auto open = simulate(p, kHome, {}, GeodesyMode::Corrected);
    CHECK(open.warnings.size() == 1);
    stops = of_kind(open, CameraEventKind::VideoStop);
    REQUIRE(stops.size() == 1);
    CHECK(stops[0].time_s == open.arrivals.back().time_s);
}

TEST_CASE("rejected inputs") {
    CHECK(code_of([&] { simulate(Path{"PATH-1", std::nullopt, {}}, kHome, {}, GeodesyMode::Corrected); }) ==
          ErrorCode::Domain);
    auto flat = local_path({{0, 0, 0}});
    CHECK(code_of([&] { simulate(flat, kHome, {}, GeodesyMode::Corrected); }) == ErrorCode::Domain);
    auto ok = local_path({{0, 0, 5}});
    for (auto bad : {SimConfig{0.0}, SimConfig{5.0, 0.0}, SimConfig{5.0, 0.1, 0}, SimConfig{5.0, 0.1, 2, 0},
                     SimConfig{5.0, 0.1, 2, 8, 0.0}, SimConfig{5.0, 0.1, 2, 8, 8.0, -1.0}}) {
        CHECK(code_of([&] { simulate(ok, kHome, bad, GeodesyMode::Corrected); }) == ErrorCode::Domain);
    }
    auto single = simulate(ok, kHome, {}, GeodesyMode::Corrected);
    CHECK(single.total_time_s == 1.0);
    CHECK(single.trace.size() == 11);
}

TEST_CASE("seed sweep: parallel equals serial") {
    auto p = testsupport::planned_fixture(103);
    SimConfig c;
    c.noise_sigma_m = 0.2;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < 24; ++s) seeds.push_back(s * 7919);
    auto a = simulate_seeds_serial(p, default_home(p), c, GeodesyMode::Corrected, seeds);
    auto b = simulate_seeds_parallel(p, default_home(p), c, GeodesyMode::Corrected, seeds);
    CHECK(a == b);
    CHECK(a[3].config.rng_seed == seeds[3]);

    auto bad = p;
    bad.points[0].task = CameraTask::Video;
    bad.points[0].instruction = "stop";
    CHECK(code_of([&] { simulate_seeds_parallel(bad, default_home(bad), c, GeodesyMode::Corrected, seeds); }) ==
          ErrorCode::Schedule);
}

TEST_CASE("random paths obey the simulator invariants (property)") {
    std::mt19937_64 rng(404);
    for (int round = 0; round < 60; ++round) {
        auto path = testsupport::random_flyable_path(rng, kHome, 8, 150.0);
        for (auto mode : {GeodesyMode::Corrected, GeodesyMode::PaperFaithful}) {
            SimConfig c;
            c.speed_mps = std::uniform_real_distribution<double>(1.0, 15.0)(rng);
            auto r = simulate(path, kHome, c, mode);
            auto e = simoracle::fine_step(path, kHome, c, mode);
            for (std::size_t i = 0; i < r.arrivals.size(); ++i) CHECK(std::abs(r.arrivals[i].time_s - e.arrivals[i]) < 1e-6);
            CHECK(std::abs(r.total_time_s - e.total_time) < 1e-6);

            for (std::size_t i = 1; i < r.events.size(); ++i) CHECK(r.events[i].time_s >= r.events[i - 1].time_s);
            bool recording = false;
            for (const auto& ev : r.events) {
                if (ev.kind == CameraEventKind::VideoStart) {
                    CHECK_FALSE(recording);
                    recording = true;
                } else if (ev.kind == CameraEventKind::VideoStop) {
                    CHECK(recording);
                    recording = false;
                }
            }
            CHECK_FALSE(recording);

            for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
                if (path.points[i].task != CameraTask::Interval) continue;
                auto want = simoracle::enumerate_shots(e.leg_times[i], simoracle::interval_of(path.points[i], c));
                std::vector<double> got;
                for (const auto& ev : r.events)
                    if (ev.kind == CameraEventKind::IntervalShot && ev.waypoint_id == path.points[i].id)
                        got.push_back(ev.time_s - r.arrivals[i].time_s);
                REQUIRE(got.size() == want.size());
                for (std::size_t k = 0; k < got.size(); ++k) {
                    CHECK(got[k] > 0.0);
                    CHECK(std::abs(got[k] - want[k]) <= 1e-3 + 1e-6);
                }
            }

            for (std::size_t i = 1; i < r.trace.size(); ++i) {
                const auto& a = r.trace[i - 1];
                const auto& b = r.trace[i];
                double d = std::sqrt(std::pow(b.local.x_m - a.local.x_m, 2) + std::pow(b.altitude_m - a.altitude_m, 2) +
                                     std::pow(b.local.z_m - a.local.z_m, 2));
                CHECK(d <= c.speed_mps * (b.time_s - a.time_s) + 1e-9);
            }

            auto rep = compare(path, flown_from_simulation(r), kHome, mode);
            for (const auto& pe : rep.points) {
                CHECK(pe.error_x == 0.0);
                CHECK(pe.error_z == 0.0);
            }
            CHECK(simulate(path, kHome, c, mode) == r);
        }
    }
}
