#include "droneroute/mission.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>

#include "droneroute/error.hpp"

namespace droneroute {

namespace {

constexpr std::array<std::string_view, kCameraTaskCount> kLabels = {
    "do nothing", "Take Picture", "Start video", "Start interval", "Take Panorama Picture",
};

constexpr std::array<std::string_view, kCameraTaskCount> kWebColors = {
    "#000000", "#0000FF", "#FF0000", "#008000", "#FFFF00",
};

constexpr std::string_view kMobileIntervalColor = "#FFA500";

std::optional<long long> parse_positive(std::string_view text) {
    if (text.empty() || text.front() == '0') return std::nullopt;
    long long value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value <= 0) return std::nullopt;
    return value;
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
        }
        i += len;
    }
    return true;
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotFound: return "not_found";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::Schema: return "schema";
        case ErrorCode::Pairing: return "pairing";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Capacity: return "capacity";
        case ErrorCode::Schedule: return "schedule";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Conflict: return "conflict";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

bool is_known_task(CameraTask task) noexcept { return task_code(task) < kCameraTaskCount; }

int task_code(CameraTask task) noexcept { return static_cast<int>(task); }

std::string task_code_text(CameraTask task) { return std::to_string(task_code(task)); }

std::optional<CameraTask> task_from_code(int code) noexcept {
    if (code < 0 || code >= kCameraTaskCount) return std::nullopt;
    return static_cast<CameraTask>(code);
}

CameraTask parse_task_code(std::string_view text) {
    if (text.size() == 1 && text[0] >= '0' && text[0] <= '4') {
        return static_cast<CameraTask>(text[0] - '0');
    }
    throw Error(ErrorCode::Schema, "unknown task code '" + std::string(text) + "'");
}

std::string_view task_label(CameraTask task) {
    if (!is_known_task(task)) throw Error(ErrorCode::Domain, "unknown task code " + task_code_text(task));
    return kLabels[task_code(task)];
}

std::string_view task_color(CameraTask task, Palette palette) {
    if (!is_known_task(task)) throw Error(ErrorCode::Domain, "unknown task code " + task_code_text(task));
    if (palette == Palette::Mobile && task == CameraTask::Interval) return kMobileIntervalColor;
    return kWebColors[task_code(task)];
}

std::optional<long long> route_number(std::string_view route_id) {
    constexpr std::string_view prefix = "PATH-";
    if (!route_id.starts_with(prefix)) return std::nullopt;
    return parse_positive(route_id.substr(prefix.size()));
}

std::string make_route_id(long long number) { return "PATH-" + std::to_string(number); }

std::optional<VideoCommand> parse_video_instruction(std::string_view instruction) {
    if (instruction.empty()) return VideoCommand::Toggle;
    if (instruction == "start") return VideoCommand::Start;
    if (instruction == "stop") return VideoCommand::Stop;
    return std::nullopt;
}

std::optional<int> parse_interval_instruction(std::string_view instruction) {
    if (instruction.empty()) return std::nullopt;
    auto value = parse_positive(instruction);
    if (!value || *value > 86400) {
        throw Error(ErrorCode::Domain,
                    "interval must be a positive whole number of seconds, got '" + std::string(instruction) + "'");
    }
    return static_cast<int>(*value);
}

std::optional<int> parse_panorama_instruction(std::string_view instruction) {
    if (instruction.empty()) return std::nullopt;
    auto value = parse_positive(instruction);
    if (!value || *value > 360) {
        throw Error(ErrorCode::Domain,
                    "panorama frame count must be in 1..360, got '" + std::string(instruction) + "'");
    }
    return static_cast<int>(*value);
}

std::string instruction_problem(CameraTask task, std::string_view instruction) {
    try {
        switch (task) {
            case CameraTask::Video:
                if (!parse_video_instruction(instruction)) {
                    return "video instruction must be empty, 'start' or 'stop', got '" + std::string(instruction) + "'";
                }
                break;
            case CameraTask::Interval: parse_interval_instruction(instruction); break;
            case CameraTask::Panorama: parse_panorama_instruction(instruction); break;
            default: break;
        }
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

ValidationReport validate_path(const Path& path, const Limits& limits) {
    ValidationReport report;
    auto add = [&report](std::optional<int> id, std::string message) {
        report.push_back({id, std::move(message)});
    };

    if (!route_number(path.route_id)) add(std::nullopt, "malformed route_id '" + path.route_id + "'");

    if (path.description && !valid_utf8(*path.description)) add(std::nullopt, "description is not valid UTF-8");

    std::set<int> seen;
    bool consecutive = true;
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        const auto& p = path.points[i];
        if (!seen.insert(p.id).second) add(p.id, "duplicate id " + std::to_string(p.id));
        if (p.id != static_cast<int>(i)) consecutive = false;
    }
    if (!consecutive) add(std::nullopt, "non-consecutive ids");
    if (path.points.size() > limits.max_waypoints) {
        add(std::nullopt, "too many waypoints (" + std::to_string(path.points.size()) + " > " +
                              std::to_string(limits.max_waypoints) + ")");
    }

    for (const auto& p : path.points) {
        const std::string at = " at id " + std::to_string(p.id);
        if (!std::isfinite(p.latitude_deg) || p.latitude_deg < -90.0 || p.latitude_deg > 90.0) {
            add(p.id, "latitude out of range" + at);
        }
        if (!std::isfinite(p.longitude_deg) || p.longitude_deg < -180.0 || p.longitude_deg > 180.0) {
            add(p.id, "longitude out of range" + at);
        }
        if (!std::isfinite(p.altitude_m) || p.altitude_m < 0.0 || p.altitude_m > limits.altitude_max_m) {
            std::array<char, 32> buf{};
            auto res = std::to_chars(buf.data(), buf.data() + buf.size(), limits.altitude_max_m);
            add(p.id, "altitude out of range" + at + " (allowed 0.." + std::string(buf.data(), res.ptr) + " m)");
        }
        if (!valid_utf8(p.instruction)) add(p.id, "instruction is not valid UTF-8" + at);
        if (!is_known_task(p.task)) {
            add(p.id, "unknown task code " + task_code_text(p.task) + at);
        } else if (auto problem = instruction_problem(p.task, p.instruction); !problem.empty()) {
            add(p.id, problem + at);
        }
    }
    return report;
}

}  // namespace droneroute
