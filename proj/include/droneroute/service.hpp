#pragma once

// HTTP/JSON front end over the store, editor, simulator and analysis.
//
//   GET    /paths                          route summaries
//   POST   /paths                          create under the next id
//   GET    /paths/{id}                     one-route document tree
//   PUT    /paths/{id}                     save
//   DELETE /paths/{id}                     delete
//   POST   /paths/{id}/simulate            SimulationResult
//   GET    /paths/{id}/simulate/stream     NDJSON frames, then a completion record
//   GET    /paths/{id}/simulate/state      one frame by index (polling)
//   POST   /paths/{id}/analysis            ErrorReport
//
// Errors are {"error": code, "message": ..., "details": [...]}.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>

#include "droneroute/error.hpp"
#include "droneroute/geodesy.hpp"
#include "droneroute/simulator.hpp"
#include "droneroute/store.hpp"

namespace droneroute {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    GeodesyMode simulation_mode = GeodesyMode::Corrected;
    GeodesyMode analysis_mode = GeodesyMode::PaperFaithful;
};

// DRONEROUTE_HOST, DRONEROUTE_PORT and DRONEROUTE_MODE override the defaults.
ServiceConfig service_config_from_env(ServiceConfig base = {});

struct Request {
    std::string method;
    std::string path;
    std::string body;
    std::map<std::string, std::string> query;
};

struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

int http_status(ErrorCode code);

class MissionService {
public:
    explicit MissionService(RouteStore& store, ServiceConfig config = {});

    // Whole-response dispatch; the stream endpoint returns all lines at once.
    Response handle(const Request& request);

    // Holds the per-route stream slot until destroyed.
    class StreamLease {
    public:
        StreamLease(MissionService& owner, std::string route_id);
        ~StreamLease();
        StreamLease(const StreamLease&) = delete;
        StreamLease& operator=(const StreamLease&) = delete;

    private:
        MissionService& owner_;
        std::string route_id_;
    };

    struct OpenStream {
        std::unique_ptr<StreamLease> lease;
        std::shared_ptr<const SimulationResult> result;
    };

    // Throws Error{Conflict} when the route already has an active stream.
    OpenStream open_stream(const std::string& route_id, const std::map<std::string, std::string>& query);

    const ServiceConfig& config() const noexcept { return config_; }

private:
    friend class StreamLease;

    Response dispatch(const Request& request);
    std::shared_ptr<const SimulationResult> run_simulation(const std::string& route_id,
                                                           const std::map<std::string, std::string>& query);

    RouteStore& store_;
    ServiceConfig config_;
    std::mutex streams_mutex_;
    std::set<std::string> active_streams_;
};

// Binds a MissionService to a listening socket on a background thread.
class HttpServer {
public:
    explicit HttpServer(MissionService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // port 0 picks a free port. Returns the bound port.
    int start(const std::string& host, int port);
    // Blocks in the calling thread until stop() is called elsewhere.
    void run(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace droneroute
