#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "droneroute/mission.hpp"

namespace droneroute {

struct RouteSummary {
    std::string route_id;
    // "." when the route carries no description.
    std::string description;
    std::size_t waypoint_count = 0;

    bool operator==(const RouteSummary&) const = default;
};

inline constexpr std::string_view kMissingDescription = ".";

// Immutable view of the store at one point in time, safe to share across threads.
class RouteSnapshot {
public:
    using Routes = std::map<long long, Path>;

    explicit RouteSnapshot(std::shared_ptr<const Routes> routes) : routes_(std::move(routes)) {}

    bool contains(std::string_view route_id) const;
    Path load_route(std::string_view route_id) const;
    std::vector<RouteSummary> list_routes() const;
    std::string next_route_id() const;
    std::string export_tree() const;
    std::size_t size() const { return routes_->size(); }

private:
    std::shared_ptr<const Routes> routes_;
};

// Document-file backed route store. All mutations go through one writer lock
// and publish a new snapshot; the file is replaced via write-temp-then-rename.
class RouteStore {
public:
    // No backing file: mutations live in memory only.
    explicit RouteStore(Limits limits = {});
    // Loads `file` if it exists; an absent file is an empty store.
    explicit RouteStore(std::filesystem::path file, Limits limits = {});

    RouteStore(const RouteStore&) = delete;
    RouteStore& operator=(const RouteStore&) = delete;

    std::string save_route(const Path& path);
    // Saves `path` under next_route_id() as one atomic step; returns the new id.
    std::string create_route(Path path);
    Path load_route(std::string_view route_id) const;
    std::vector<RouteSummary> list_routes() const;
    void delete_route(std::string_view route_id);
    std::string next_route_id() const;
    std::string export_tree() const;
    // Merges routes by key (overwrite); all-or-nothing. Returns routes imported.
    std::size_t import_tree(std::string_view text);

    RouteSnapshot snapshot() const;
    const Limits& limits() const noexcept { return limits_; }
    const std::optional<std::filesystem::path>& file() const noexcept { return file_; }

private:
    using Routes = RouteSnapshot::Routes;

    std::shared_ptr<const Routes> current() const;
    void publish(std::shared_ptr<const Routes> next);
    void write_file(const Routes& routes) const;

    Limits limits_;
    std::optional<std::filesystem::path> file_;
    mutable std::mutex snapshot_mutex_;
    std::mutex writer_mutex_;
    std::shared_ptr<const Routes> routes_;
};

// Whole-route exchange with a remote document database. Only a no-op and an
// in-process loopback ship; a real backend implements the same three calls.
class RemoteSync {
public:
    virtual ~RemoteSync() = default;
    virtual void push(const Path& path) = 0;
    virtual std::optional<Path> pull(std::string_view route_id) = 0;
    virtual std::vector<std::string> remote_ids() = 0;
};

class NoopSync final : public RemoteSync {
public:
    void push(const Path&) override {}
    std::optional<Path> pull(std::string_view) override { return std::nullopt; }
    std::vector<std::string> remote_ids() override { return {}; }
};

// Mirrors routes into a second store, e.g. to exercise sync against a copy.
class LoopbackSync final : public RemoteSync {
public:
    explicit LoopbackSync(RouteStore& remote) : remote_(remote) {}
    void push(const Path& path) override;
    std::optional<Path> pull(std::string_view route_id) override;
    std::vector<std::string> remote_ids() override;

private:
    RouteStore& remote_;
};

// Pushes every local route; returns the number pushed.
std::size_t push_all(const RouteStore& local, RemoteSync& sync);
// Pulls every remote route into `local` (overwriting by key); returns the number pulled.
std::size_t pull_all(RouteStore& local, RemoteSync& sync);

// Throws Error{Validation} carrying each violation as a detail line.
void require_valid(const Path& path, const Limits& limits);

}  // namespace droneroute
