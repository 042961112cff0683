#include "droneroute/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <random>

#include "droneroute/error.hpp"

namespace droneroute {

namespace {

// Tolerance for "shot lands exactly on the next arrival".
constexpr double kBoundaryEps = 1e-9;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

Vec3 lerp(const Vec3& a, const Vec3& b, double f) {
    return {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f, a.z + (b.z - a.z) * f};
}

double distance(const Vec3& a, const Vec3& b) {
    double dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct Segment {
    double t0 = 0.0, t1 = 0.0;
    Vec3 from, to;
};

class Timeline {
public:
    void move(const Vec3& from, const Vec3& to, double duration) {
        segments_.push_back({now_, now_ + duration, from, to});
        now_ += duration;
    }
    void hold(const Vec3& at, double duration) { move(at, at, duration); }
    double now() const { return now_; }

    Vec3 position(double t) const {
        auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                   [](double v, const Segment& s) { return v < s.t0; });
        if (it != segments_.begin()) --it;
        const Segment& s = *it;
        if (s.t1 <= s.t0) return s.to;
        double f = std::clamp((t - s.t0) / (s.t1 - s.t0), 0.0, 1.0);
        return lerp(s.from, s.to, f);
    }

private:
    std::vector<Segment> segments_;
    double now_ = 0.0;
};

}  // namespace

std::string_view event_kind_name(CameraEventKind kind) {
    switch (kind) {
        case CameraEventKind::Photo: return "Photo";
        case CameraEventKind::VideoStart: return "VideoStart";
        case CameraEventKind::VideoStop: return "VideoStop";
        case CameraEventKind::IntervalShot: return "IntervalShot";
        case CameraEventKind::PanoramaFrame: return "PanoramaFrame";
        case CameraEventKind::PanoramaComplete: return "PanoramaComplete";
    }
    return "Unknown";
}

void check_config(const SimConfig& c) {
    auto positive = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) throw Error(ErrorCode::Domain, std::string(name) + " must be > 0");
    };
    positive(c.speed_mps, "speed_mps");
    positive(c.tick_s, "tick_s");
    positive(c.panorama_rotation_s, "panorama_rotation_s");
    if (c.default_interval_s <= 0) throw Error(ErrorCode::Domain, "default_interval_s must be > 0");
    if (c.panorama_frames <= 0) throw Error(ErrorCode::Domain, "panorama_frames must be > 0");
    if (!std::isfinite(c.noise_sigma_m) || c.noise_sigma_m < 0.0) {
        throw Error(ErrorCode::Domain, "noise_sigma_m must be >= 0");
    }
}

bool SimulationResult::operator==(const SimulationResult& o) const {
    auto same_config = [](const SimConfig& a, const SimConfig& b) {
        return a.speed_mps == b.speed_mps && a.tick_s == b.tick_s && a.default_interval_s == b.default_interval_s &&
               a.panorama_frames == b.panorama_frames && a.panorama_rotation_s == b.panorama_rotation_s &&
               a.noise_sigma_m == b.noise_sigma_m && a.rng_seed == b.rng_seed;
    };
    return route_id == o.route_id && status == o.status && home == o.home && mode == o.mode &&
           same_config(config, o.config) && total_time_s == o.total_time_s && trace == o.trace &&
           arrivals == o.arrivals && events == o.events && activity == o.activity && warnings == o.warnings;
}

TaskProgram compile_schedule(const Path& path, const SimConfig& config) {
    TaskProgram program;
    program.actions.resize(path.points.size());
    bool recording = false;
    int opened_at = -1;

    for (std::size_t i = 0; i < path.points.size(); ++i) {
        const PathPoint& p = path.points[i];
        WaypointActions& a = program.actions[i];
        const std::string at = "waypoint " + std::to_string(p.id);
        switch (p.task) {
            case CameraTask::None: break;
            case CameraTask::Photo: a.photo = true; break;
            case CameraTask::Video: {
                auto cmd = parse_video_instruction(p.instruction);
                if (!cmd) throw Error(ErrorCode::Schedule, at + ": bad video instruction '" + p.instruction + "'");
                if (*cmd == VideoCommand::Toggle) cmd = recording ? VideoCommand::Stop : VideoCommand::Start;
                if (*cmd == VideoCommand::Start) {
                    if (recording) {
                        throw Error(ErrorCode::Schedule, at + ": video start while recording since waypoint " +
                                                             std::to_string(opened_at));
                    }
                    a.video = VideoAction::Start;
                    recording = true;
                    opened_at = p.id;
                } else {
                    if (!recording) throw Error(ErrorCode::Schedule, at + ": video stop with no open video");
                    a.video = VideoAction::Stop;
                    recording = false;
                }
                break;
            }
            case CameraTask::Interval: {
                std::optional<int> seconds;
                try {
                    seconds = parse_interval_instruction(p.instruction);
                } catch (const Error& e) {
                    throw Error(ErrorCode::Schedule, at + ": " + e.what());
                }
                a.interval_s = static_cast<double>(seconds.value_or(config.default_interval_s));
                if (i + 1 == path.points.size()) {
                    program.warnings.push_back(at + ": interval task on the final waypoint has no leg; no shots");
                }
                break;
            }
            case CameraTask::Panorama: {
                std::optional<int> frames;
                try {
                    frames = parse_panorama_instruction(p.instruction);
                } catch (const Error& e) {
                    throw Error(ErrorCode::Schedule, at + ": " + e.what());
                }
                a.panorama_frames = frames.value_or(config.panorama_frames);
                break;
            }
            default:
                throw Error(ErrorCode::Schedule, at + ": unknown task code " + task_code_text(p.task));
        }
    }
    if (recording) {
        program.actions.back().close_open_video = true;
        program.warnings.push_back("video started at waypoint " + std::to_string(opened_at) +
                                   " is still recording at mission end; stopped at final arrival");
    }
    return program;
}

HomePoint default_home(const Path& path) {
    if (path.points.empty()) throw Error(ErrorCode::Domain, "route has no waypoints");
    return {path.points.front().latitude_deg, path.points.front().longitude_deg};
}

SimulationResult simulate(const Path& path, HomePoint home, const SimConfig& config, GeodesyMode mode) {
    check_config(config);
    if (path.points.empty()) throw Error(ErrorCode::Domain, "cannot simulate a route with no waypoints");
    const TaskProgram program = compile_schedule(path, config);
    const LocalFrame frame(home, mode);
    const double speed = config.speed_mps;

    std::vector<Vec3> wp;
    wp.reserve(path.points.size());
    for (const auto& p : path.points) {
        LocalCoord c = frame.to_local(position_of(p));
        wp.push_back({c.x_m, p.altitude_m, c.z_m});
    }

    SimulationResult r;
    r.route_id = path.route_id;
    r.home = home;
    r.mode = mode;
    r.config = config;
    r.warnings = program.warnings;

    Timeline timeline;
    const Vec3 ground{wp[0].x, 0.0, wp[0].z};
    timeline.move(ground, wp[0], distance(ground, wp[0]) / speed);

    double video_since = 0.0;
    bool recording = false;
    int video_origin = -1;
    auto emit = [&r](double t, CameraEventKind kind, int id, int seq = 0) { r.events.push_back({t, kind, id, seq}); };

    for (std::size_t i = 0; i < wp.size(); ++i) {
        const int id = path.points[i].id;
        const WaypointActions& a = program.actions[i];
        const double arrival = timeline.now();
        r.arrivals.push_back({id, arrival, position_of(path.points[i]), path.points[i].altitude_m});

        if (a.photo) {
            emit(arrival, CameraEventKind::Photo, id);
            r.activity.push_back({arrival, arrival + config.tick_s, CameraTask::Photo, id});
        }
        if (a.video == VideoAction::Start) {
            emit(arrival, CameraEventKind::VideoStart, id);
            video_since = arrival;
            recording = true;
            video_origin = id;
        } else if (a.video == VideoAction::Stop) {
            emit(arrival, CameraEventKind::VideoStop, video_origin);
            r.activity.push_back({video_since, arrival, CameraTask::Video, video_origin});
            recording = false;
        }
        if (a.close_open_video && recording) {
            emit(arrival, CameraEventKind::VideoStop, video_origin);
            r.activity.push_back({video_since, arrival, CameraTask::Video, video_origin});
            recording = false;
        }
        if (a.panorama_frames > 0) {
            const double step = config.panorama_rotation_s / a.panorama_frames;
            for (int k = 0; k < a.panorama_frames; ++k) {
                emit(arrival + k * step, CameraEventKind::PanoramaFrame, id, k + 1);
            }
            timeline.hold(wp[i], config.panorama_rotation_s);
            emit(timeline.now(), CameraEventKind::PanoramaComplete, id);
            r.activity.push_back({arrival, timeline.now(), CameraTask::Panorama, id});
        }

        if (i + 1 == wp.size()) break;

        const double departure = timeline.now();
        const double leg_time = distance(wp[i], wp[i + 1]) / speed;
        timeline.move(wp[i], wp[i + 1], leg_time);
        const double next_arrival = timeline.now();
        if (a.interval_s) {
            const double interval = *a.interval_s;
            const auto shots = static_cast<int>(std::floor(leg_time / interval + kBoundaryEps));
            for (int k = 1; k <= shots; ++k) {
                // A shot due at the leg end is stamped with the arrival itself.
                const bool at_end = k * interval >= leg_time * (1.0 - kBoundaryEps);
                emit(at_end ? next_arrival : departure + k * interval, CameraEventKind::IntervalShot, id, k);
            }
            r.activity.push_back({departure, next_arrival, CameraTask::Interval, id});
        }
    }

    r.total_time_s = timeline.now();
    if (!(r.total_time_s > 0.0)) throw Error(ErrorCode::Domain, "zero-length mission: nothing to fly");

    // Trace: every tick plus the exact end time.
    const auto ticks = static_cast<std::size_t>(std::floor(r.total_time_s / config.tick_s));
    r.trace.reserve(ticks + 2);
    auto sample = [&](double t) {
        Vec3 p = timeline.position(t);
        LocalCoord c{p.x, p.z};
        GeoPoint g = frame.from_local_unchecked(c);
        r.trace.push_back({t, g.latitude_deg, g.longitude_deg, p.y, c});
    };
    for (std::size_t k = 0; k <= ticks; ++k) {
        double t = static_cast<double>(k) * config.tick_s;
        if (t > r.total_time_s) break;
        sample(t);
    }
    if (r.total_time_s - r.trace.back().time_s > 1e-12) sample(r.total_time_s);
    // The first sample sits on the ground below waypoint 0 exactly.
    r.trace.front().latitude_deg = path.points[0].latitude_deg;
    r.trace.front().longitude_deg = path.points[0].longitude_deg;

    if (config.noise_sigma_m > 0.0) {
        std::mt19937_64 rng(config.rng_seed);
        std::normal_distribution<double> noise(0.0, config.noise_sigma_m);
        for (auto& arr : r.arrivals) {
            double nx = noise(rng);
            double nz = noise(rng);
            arr.measured = frame.offset(arr.measured, {nx, nz});
        }
    }
    return r;
}

std::vector<SimulationResult> simulate_seeds_serial(const Path& path, HomePoint home, const SimConfig& config,
                                                    GeodesyMode mode, std::span<const std::uint64_t> seeds) {
    std::vector<SimulationResult> out;
    out.reserve(seeds.size());
    for (auto seed : seeds) {
        SimConfig c = config;
        c.rng_seed = seed;
        out.push_back(simulate(path, home, c, mode));
    }
    return out;
}

std::vector<SimulationResult> simulate_seeds_parallel(const Path& path, HomePoint home, const SimConfig& config,
                                                      GeodesyMode mode, std::span<const std::uint64_t> seeds) {
    std::vector<SimulationResult> out(seeds.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            SimConfig c = config;
            c.rng_seed = seeds[i];
            out[i] = simulate(path, home, c, mode);
        } catch (...) {
#pragma omp critical(droneroute_sim_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

FrameStream::FrameStream(SimulationResult result, Palette palette)
    : FrameStream(std::make_shared<const SimulationResult>(std::move(result)), palette) {}

FrameStream::FrameStream(std::shared_ptr<const SimulationResult> result, Palette palette)
    : result_(std::move(result)), palette_(palette) {
    if (!result_ || result_->trace.empty()) throw Error(ErrorCode::Domain, "simulation has no trace");
}

Frame FrameStream::at(std::size_t index) const {
    const auto& r = *result_;
    if (index >= r.trace.size()) throw Error(ErrorCode::Domain, "frame index past end of stream");
    const TraceSample& s = r.trace[index];

    // Panorama hover > interval leg > photo flash > recording video.
    constexpr std::array<CameraTask, 4> priority = {CameraTask::Panorama, CameraTask::Interval, CameraTask::Photo,
                                                    CameraTask::Video};
    CameraTask active = CameraTask::None;
    for (CameraTask want : priority) {
        bool hit = std::any_of(r.activity.begin(), r.activity.end(), [&](const ActivitySpan& a) {
            return a.task == want && s.time_s >= a.start_s && s.time_s < a.end_s;
        });
        if (hit) {
            active = want;
            break;
        }
    }

    int last = -1;
    for (const auto& a : r.arrivals) {
        if (a.time_s <= s.time_s) last = a.waypoint_id;
    }

    Frame f;
    f.index = index;
    f.time_s = s.time_s;
    f.position = {s.latitude_deg, s.longitude_deg};
    f.altitude_m = s.altitude_m;
    f.active_task = active;
    f.color = task_color(active, palette_);
    f.progress = r.total_time_s > 0.0 ? s.time_s / r.total_time_s : 1.0;
    f.last_waypoint = last;
    f.completed = index + 1 == r.trace.size();
    return f;
}

std::optional<Frame> FrameStream::next() {
    if (finished()) return std::nullopt;
    return at(cursor_++);
}

}  // namespace droneroute
