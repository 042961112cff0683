#pragma once

// Deterministic kinematic execution of a route.
//
// Timeline: the drone starts on the ground below waypoint 0, climbs
// vertically to its altitude, then flies straight local-frame legs at constant
// speed (vertical motion at the same speed). Waypoint tasks fire at the arrival
// instant; a panorama holds the drone in a hover while the frames are taken;
// an interval task fires every N seconds along the following leg, including a
// shot that lands exactly on the next arrival.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "droneroute/geodesy.hpp"
#include "droneroute/mission.hpp"

namespace droneroute {

struct SimConfig {
    double speed_mps = 5.0;
    double tick_s = 0.1;
    int default_interval_s = kDefaultIntervalSeconds;
    int panorama_frames = kDefaultPanoramaFrames;
    double panorama_rotation_s = 8.0;
    double noise_sigma_m = 0.0;
    std::uint64_t rng_seed = 0;
};

// Throws Error{Domain} naming the first bad field.
void check_config(const SimConfig& config);

enum class CameraEventKind { Photo, VideoStart, VideoStop, IntervalShot, PanoramaFrame, PanoramaComplete };

std::string_view event_kind_name(CameraEventKind kind);

struct CameraEvent {
    double time_s = 0.0;
    CameraEventKind kind = CameraEventKind::Photo;
    int waypoint_id = 0;  // waypoint whose task produced the event
    int sequence = 0;     // 1-based shot/frame index for multi-shot kinds, else 0

    bool operator==(const CameraEvent&) const = default;
};

enum class VideoAction { None, Start, Stop };

struct WaypointActions {
    bool photo = false;
    VideoAction video = VideoAction::None;
    int panorama_frames = 0;
    std::optional<double> interval_s;  // shots along the leg leaving this waypoint
    bool close_open_video = false;     // mission ends with recording still on
};

struct TaskProgram {
    std::vector<WaypointActions> actions;
    std::vector<std::string> warnings;
};

// Throws Error{Schedule} for an unbalanced video pairing.
TaskProgram compile_schedule(const Path& path, const SimConfig& config = {});

struct TraceSample {
    double time_s = 0.0;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;
    // Exact home-frame position the lat/lon were generated from.
    LocalCoord local;

    bool operator==(const TraceSample&) const = default;
};

struct Arrival {
    int waypoint_id = 0;
    double time_s = 0.0;
    GeoPoint measured;
    double altitude_m = 0.0;

    bool operator==(const Arrival&) const = default;
};

// Period during which a task is being executed, [start_s, end_s).
struct ActivitySpan {
    double start_s = 0.0;
    double end_s = 0.0;
    CameraTask task = CameraTask::None;
    int waypoint_id = 0;

    bool operator==(const ActivitySpan&) const = default;
};

enum class SimStatus { Completed };

struct SimulationResult {
    std::string route_id;
    SimStatus status = SimStatus::Completed;
    HomePoint home;
    GeodesyMode mode = GeodesyMode::Corrected;
    SimConfig config;
    double total_time_s = 0.0;
    std::vector<TraceSample> trace;
    std::vector<Arrival> arrivals;
    std::vector<CameraEvent> events;
    std::vector<ActivitySpan> activity;
    std::vector<std::string> warnings;

    bool operator==(const SimulationResult& o) const;
};

// Throws Error{Domain} for bad config / empty route / zero-length mission and
// Error{Schedule} from compile_schedule.
SimulationResult simulate(const Path& path, HomePoint home, const SimConfig& config, GeodesyMode mode);

// Home defaults to the ground position below waypoint 0.
HomePoint default_home(const Path& path);

// Same route under many seeds. The parallel version distributes seeds over
// OpenMP threads; output order follows `seeds` in both.
std::vector<SimulationResult> simulate_seeds_serial(const Path& path, HomePoint home, const SimConfig& config,
                                                    GeodesyMode mode, std::span<const std::uint64_t> seeds);
std::vector<SimulationResult> simulate_seeds_parallel(const Path& path, HomePoint home, const SimConfig& config,
                                                      GeodesyMode mode, std::span<const std::uint64_t> seeds);

struct Frame {
    std::size_t index = 0;
    double time_s = 0.0;
    GeoPoint position;
    double altitude_m = 0.0;
    CameraTask active_task = CameraTask::None;
    std::string_view color;
    double progress = 0.0;
    int last_waypoint = -1;  // -1 until waypoint 0 is reached
    bool completed = false;
};

// Replays a simulation as UI frames, one per trace sample. The final frame
// carries completed = true; next() after that returns nullopt.
class FrameStream {
public:
    explicit FrameStream(SimulationResult result, Palette palette = Palette::Web);
    explicit FrameStream(std::shared_ptr<const SimulationResult> result, Palette palette = Palette::Web);

    std::optional<Frame> next();
    Frame at(std::size_t index) const;
    std::size_t size() const noexcept { return result_->trace.size(); }
    bool finished() const noexcept { return cursor_ >= size(); }

private:
    std::shared_ptr<const SimulationResult> result_;
    Palette palette_;
    std::size_t cursor_ = 0;
};

inline std::optional<Frame> step_stream(FrameStream& stream) { return stream.next(); }

}  // namespace droneroute
