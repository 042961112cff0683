#pragma once

// Route and waypoint types, camera-task conventions and path validation.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace droneroute {

// Camera task codes as persisted ("0".."4"). The enum may carry an
// out-of-range value read from an untrusted source; validate_path flags it.
enum class CameraTask : std::uint8_t {
    None = 0,
    Photo = 1,
    Video = 2,
    Interval = 3,
    Panorama = 4,
};

inline constexpr int kCameraTaskCount = 5;

bool is_known_task(CameraTask task) noexcept;
int task_code(CameraTask task) noexcept;
std::string task_code_text(CameraTask task);

// Accepts "0".."4" (or the bare integer); anything else throws Error{Schema}.
CameraTask parse_task_code(std::string_view text);
std::optional<CameraTask> task_from_code(int code) noexcept;

std::string_view task_label(CameraTask task);

enum class Palette { Web, Mobile };

std::string_view task_color(CameraTask task, Palette palette);

struct PathPoint {
    int id = 0;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;
    CameraTask task = CameraTask::None;
    std::string instruction;

    bool operator==(const PathPoint&) const = default;
};

struct Path {
    std::string route_id;
    std::optional<std::string> description;
    std::vector<PathPoint> points;

    bool operator==(const Path&) const = default;
};

struct Limits {
    double altitude_max_m = 120.0;
    std::size_t max_waypoints = 99;
};

// "PATH-{n}" with n a positive integer written without leading zeros.
std::optional<long long> route_number(std::string_view route_id);
std::string make_route_id(long long number);

struct Violation {
    std::optional<int> point_id;
    std::string message;

    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_path(const Path& path, const Limits& limits = {});

// Instruction conventions per task kind.
enum class VideoCommand { Toggle, Start, Stop };

inline constexpr int kDefaultIntervalSeconds = 2;
inline constexpr int kDefaultPanoramaFrames = 8;

std::optional<VideoCommand> parse_video_instruction(std::string_view instruction);
// Positive whole number of seconds, or nullopt for the empty instruction.
// Throws Error{Domain} on anything else.
std::optional<int> parse_interval_instruction(std::string_view instruction);
std::optional<int> parse_panorama_instruction(std::string_view instruction);

// Empty string when the instruction is acceptable for the task, else a reason.
std::string instruction_problem(CameraTask task, std::string_view instruction);

}  // namespace droneroute
