#include "droneroute/service.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <vector>

#include <httplib.h>

#include "droneroute/analysis.hpp"
#include "droneroute/codec.hpp"
#include "droneroute/document.hpp"
#include "droneroute/error.hpp"

namespace droneroute {

namespace {

using doc::Json;

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        auto slash = path.find('/', start);
        if (slash == std::string::npos) slash = path.size();
        if (slash > start) parts.push_back(path.substr(start, slash - start));
        start = slash + 1;
    }
    return parts;
}

Response json_response(int status, const Json& body) { return {status, "application/json", body.dump()}; }

Response error_response(const Error& e) {
    Json body = {{"error", error_code_name(e.code())}, {"message", e.what()}, {"details", e.details()}};
    return json_response(http_status(e.code()), body);
}

double query_number(const std::map<std::string, std::string>& q, const std::string& key, double fallback) {
    auto it = q.find(key);
    if (it == q.end() || it->second.empty()) return fallback;
    double v = 0.0;
    const char* first = it->second.data();
    const char* last = first + it->second.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw Error(ErrorCode::Schema, key + ": expected a number");
    return v;
}

std::uint64_t query_seed(const std::map<std::string, std::string>& q, std::uint64_t fallback) {
    auto it = q.find("seed");
    if (it == q.end() || it->second.empty()) return fallback;
    std::uint64_t v = 0;
    const char* first = it->second.data();
    const char* last = first + it->second.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw Error(ErrorCode::Schema, "seed: expected a non-negative integer");
    return v;
}

std::optional<HomePoint> query_home(const std::map<std::string, std::string>& q) {
    auto it = q.find("home");
    if (it == q.end() || it->second.empty()) return std::nullopt;
    auto comma = it->second.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::Schema, "home: expected lat,lon");
    Json j = {{"ZLatitude", it->second.substr(0, comma)}, {"XLongitude", it->second.substr(comma + 1)}};
    return codec::home_from_json(j, "home");
}

SimConfig config_from_query(const std::map<std::string, std::string>& q) {
    SimConfig c;
    c.speed_mps = query_number(q, "speed", c.speed_mps);
    c.tick_s = query_number(q, "tick", c.tick_s);
    c.noise_sigma_m = query_number(q, "noise", c.noise_sigma_m);
    c.rng_seed = query_seed(q, c.rng_seed);
    check_config(c);
    return c;
}

Json parse_body(const std::string& body) {
    if (body.find_first_not_of(" \t\r\n") == std::string::npos) return Json::object();
    return doc::parse_text(body);
}

Path single_route(const Json& body, const std::optional<std::string>& route_id) {
    auto routes = doc::parse_routes(body, route_id);
    if (routes.size() != 1) {
        throw Error(ErrorCode::Schema, "request body must hold exactly one route, found " + std::to_string(routes.size()));
    }
    return std::move(routes.front().path);
}

Json frame_line(const Frame& frame) { return codec::frame_to_json(frame); }

}  // namespace

ServiceConfig service_config_from_env(ServiceConfig base) {
    if (const char* host = std::getenv("DRONEROUTE_HOST"); host && *host) base.host = host;
    if (const char* port = std::getenv("DRONEROUTE_PORT"); port && *port) {
        int v = 0;
        std::string_view text(port);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || v < 0 || v > 65535) {
            throw Error(ErrorCode::Domain, "DRONEROUTE_PORT must be a port number");
        }
        base.port = v;
    }
    if (const char* mode = std::getenv("DRONEROUTE_MODE"); mode && *mode) {
        base.simulation_mode = base.analysis_mode = parse_mode(mode);
    }
    return base;
}

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotFound: return 404;
        case ErrorCode::Validation:
        case ErrorCode::Domain:
        case ErrorCode::Capacity:
        case ErrorCode::Schedule: return 422;
        case ErrorCode::Schema:
        case ErrorCode::Parse: return 400;
        case ErrorCode::Pairing:
        case ErrorCode::Conflict: return 409;
        case ErrorCode::Io: return 500;
    }
    return 500;
}

MissionService::MissionService(RouteStore& store, ServiceConfig config) : store_(store), config_(std::move(config)) {}

MissionService::StreamLease::StreamLease(MissionService& owner, std::string route_id)
    : owner_(owner), route_id_(std::move(route_id)) {
    std::lock_guard lock(owner_.streams_mutex_);
    if (!owner_.active_streams_.insert(route_id_).second) {
        throw Error(ErrorCode::Conflict, "a simulation stream is already active for " + route_id_);
    }
}

MissionService::StreamLease::~StreamLease() {
    std::lock_guard lock(owner_.streams_mutex_);
    owner_.active_streams_.erase(route_id_);
}

std::shared_ptr<const SimulationResult> MissionService::run_simulation(
    const std::string& route_id, const std::map<std::string, std::string>& query) {
    Path path = store_.load_route(route_id);
    SimConfig config = config_from_query(query);
    GeodesyMode mode = config_.simulation_mode;
    if (auto it = query.find("mode"); it != query.end() && !it->second.empty()) mode = parse_mode(it->second);
    HomePoint home = query_home(query).value_or(default_home(path));
    return std::make_shared<const SimulationResult>(simulate(path, home, config, mode));
}

MissionService::OpenStream MissionService::open_stream(const std::string& route_id,
                                                       const std::map<std::string, std::string>& query) {
    OpenStream s;
    s.lease = std::make_unique<StreamLease>(*this, route_id);
    s.result = run_simulation(route_id, query);
    return s;
}

Response MissionService::handle(const Request& request) {
    try {
        return dispatch(request);
    } catch (const Error& e) {
        return error_response(e);
    } catch (const std::exception& e) {
        return json_response(500, {{"error", "internal"}, {"message", e.what()}, {"details", Json::array()}});
    }
}

Response MissionService::dispatch(const Request& req) {
    const auto parts = split_path(req.path);
    const auto& m = req.method;
    auto method_not_allowed = [&]() {
        return json_response(405, {{"error", "method_not_allowed"},
                                   {"message", m + " is not supported on " + req.path},
                                   {"details", Json::array()}});
    };

    if (parts.empty() || parts[0] != "paths" || parts.size() > 4) {
        throw Error(ErrorCode::NotFound, "no such resource: " + req.path);
    }

    if (parts.size() == 1) {
        if (m == "GET") {
            Json list = Json::array();
            for (const auto& s : store_.list_routes()) list.push_back(codec::summary_to_json(s));
            return json_response(200, list);
        }
        if (m == "POST") {
            Json body = parse_body(req.body);
            Path path;
            // Tree or bare node; the placeholder id is replaced on create.
            if (!body.empty()) path = single_route(body, std::string("PATH-1"));
            auto id = store_.create_route(std::move(path));
            return json_response(201, {{"route_id", id}});
        }
        return method_not_allowed();
    }

    const std::string& id = parts[1];
    if (!route_number(id)) throw Error(ErrorCode::NotFound, "no route with id '" + id + "'");

    if (parts.size() == 2) {
        if (m == "GET") return {200, "application/json", doc::route_tree({store_.load_route(id)}).dump(2)};
        if (m == "PUT") {
            Json body = parse_body(req.body);
            Path path = single_route(body, id);
            if (path.route_id != id) {
                throw Error(ErrorCode::Schema, "body route '" + path.route_id + "' does not match '" + id + "'");
            }
            store_.save_route(path);
            return json_response(200, {{"route_id", id}, {"saved", true}});
        }
        if (m == "DELETE") {
            store_.delete_route(id);
            return json_response(200, {{"route_id", id}, {"deleted", true}});
        }
        return method_not_allowed();
    }

    if (parts[2] == "simulate") {
        if (parts.size() == 3) {
            if (m != "POST") return method_not_allowed();
            Json body = parse_body(req.body);
            if (!body.is_object()) throw Error(ErrorCode::Schema, "request body must be an object");
            Path path = store_.load_route(id);
            SimConfig config = codec::config_from_json(body.value("config", Json()));
            GeodesyMode mode = config_.simulation_mode;
            if (auto it = body.find("mode"); it != body.end()) {
                if (!it->is_string()) throw Error(ErrorCode::Schema, "mode: expected text");
                mode = parse_mode(it->get<std::string>());
            }
            HomePoint home = default_home(path);
            if (auto it = body.find("home"); it != body.end() && !it->is_null()) home = codec::home_from_json(*it);
            return json_response(200, codec::simulation_to_json(simulate(path, home, config, mode)));
        }
        if (m != "GET") return method_not_allowed();
        if (parts[3] == "stream") {
            auto open = open_stream(id, req.query);
            FrameStream stream(open.result);
            std::string body;
            while (auto f = stream.next()) body += frame_line(*f).dump() + "\n";
            body += codec::completion_record(*open.result).dump() + "\n";
            return {200, "application/x-ndjson", std::move(body)};
        }
        if (parts[3] == "state") {
            auto result = run_simulation(id, req.query);
            FrameStream stream(result);
            double k = query_number(req.query, "frame", 0.0);
            if (k < 0 || k != static_cast<double>(static_cast<std::size_t>(k))) {
                throw Error(ErrorCode::Schema, "frame: expected a non-negative integer");
            }
            auto index = static_cast<std::size_t>(k);
            if (index >= stream.size()) {
                throw Error(ErrorCode::NotFound, "frame " + std::to_string(index) + " out of range (" +
                                                     std::to_string(stream.size()) + " frames)");
            }
            Json j = frame_line(stream.at(index));
            j["total_frames"] = stream.size();
            if (index + 1 == stream.size()) j["completion"] = codec::completion_record(*result);
            return json_response(200, j);
        }
        throw Error(ErrorCode::NotFound, "no such resource: " + req.path);
    }

    if (parts[2] == "analysis" && parts.size() == 3) {
        if (m != "POST") return method_not_allowed();
        Json body = parse_body(req.body);
        if (!body.is_object()) throw Error(ErrorCode::Schema, "request body must be an object");
        Path planned = store_.load_route(id);
        FlownRecord flown = codec::flown_from_json(body);
        GeodesyMode mode = config_.analysis_mode;
        if (auto it = body.find("mode"); it != body.end()) {
            if (!it->is_string()) throw Error(ErrorCode::Schema, "mode: expected text");
            mode = parse_mode(it->get<std::string>());
        }
        // An explicit top-level home wins over the one carried by the flown record.
        HomePoint home = analysis_home(planned, flown);
        if (auto it = body.find("home"); it != body.end() && !it->is_null() && body.contains("flown")) {
            home = codec::home_from_json(*it);
        }
        ErrorReport report = compare(planned, flown, home, mode);
        Json j = codec::report_to_json(report);
        j["route"] = id;
        return json_response(200, j);
    }

    throw Error(ErrorCode::NotFound, "no such resource: " + req.path);
}

struct HttpServer::Impl {
    MissionService& service;
    httplib::Server server;
    std::thread thread;

    explicit Impl(MissionService& s) : service(s) {
        auto adapt = [this](const httplib::Request& hreq, httplib::Response& hres) {
            Request req{hreq.method, hreq.path, hreq.body, {}};
            for (const auto& [k, v] : hreq.params) req.query[k] = v;
            if (is_stream(req)) return stream(req, hres);
            Response res = service.handle(req);
            hres.status = res.status;
            hres.set_content(res.body, res.content_type);
        };
        server.Get(".*", adapt);
        server.Post(".*", adapt);
        server.Put(".*", adapt);
        server.Delete(".*", adapt);
    }

    static bool is_stream(const Request& req) {
        auto parts = split_path(req.path);
        return req.method == "GET" && parts.size() == 4 && parts[0] == "paths" && parts[2] == "simulate" &&
               parts[3] == "stream";
    }

    // Frames are written as they are produced; `pace=1` spaces them by the
    // simulation tick so a client can animate in real time.
    void stream(const Request& req, httplib::Response& hres) {
        std::shared_ptr<MissionService::OpenStream> open;
        try {
            if (!route_number(split_path(req.path)[1])) {
                throw Error(ErrorCode::NotFound, "no route with id '" + split_path(req.path)[1] + "'");
            }
            open = std::make_shared<MissionService::OpenStream>(service.open_stream(split_path(req.path)[1], req.query));
        } catch (const Error& e) {
            Response res = error_response(e);
            hres.status = res.status;
            hres.set_content(res.body, res.content_type);
            return;
        }
        const bool pace = req.query.count("pace") && req.query.at("pace") == "1";
        auto frames = std::make_shared<FrameStream>(open->result);
        auto done = std::make_shared<bool>(false);
        hres.set_chunked_content_provider(
            "application/x-ndjson",
            [open, frames, done, pace](std::size_t, httplib::DataSink& sink) {
                if (*done) {
                    sink.done();
                    return true;
                }
                if (auto f = frames->next()) {
                    std::string line = frame_line(*f).dump() + "\n";
                    if (!sink.write(line.data(), line.size())) return false;
                    if (pace) {
                        std::this_thread::sleep_for(std::chrono::duration<double>(open->result->config.tick_s));
                    }
                    return true;
                }
                std::string line = codec::completion_record(*open->result).dump() + "\n";
                *done = true;
                return sink.write(line.data(), line.size());
            },
            [open](bool) mutable { open->lease.reset(); });
    }
};

HttpServer::HttpServer(MissionService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
    } else if (!impl_->server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw Error(ErrorCode::Io, "cannot listen on " + host + ":" + std::to_string(port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpServer::run(const std::string& host, int port) {
    if (!impl_->server.listen(host, port)) {
        throw Error(ErrorCode::Io, "cannot listen on " + host + ":" + std::to_string(port));
    }
}

void HttpServer::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace droneroute
