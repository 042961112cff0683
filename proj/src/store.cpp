#include "droneroute/store.hpp"

#include <fstream>
#include <sstream>

#include "droneroute/document.hpp"
#include "droneroute/error.hpp"

namespace droneroute {

namespace fs = std::filesystem;

namespace {

long long require_route_number(std::string_view route_id) {
    auto n = route_number(route_id);
    if (!n) throw Error(ErrorCode::NotFound, "no route '" + std::string(route_id) + "'");
    return *n;
}

RouteSnapshot::Routes parse_routes_checked(std::string_view text, const Limits& limits) {
    RouteSnapshot::Routes routes;
    for (auto& parsed : doc::parse_route_tree(doc::parse_text(text))) {
        require_valid(parsed.path, limits);
        routes[*route_number(parsed.path.route_id)] = std::move(parsed.path);
    }
    return routes;
}

std::string export_routes(const RouteSnapshot::Routes& routes) {
    doc::Json tree = doc::Json::object();
    for (const auto& [n, path] : routes) tree[path.route_id] = doc::route_node(path);
    return tree.dump(2);
}

}  // namespace

void require_valid(const Path& path, const Limits& limits) {
    auto report = validate_path(path, limits);
    if (report.empty()) return;
    std::vector<std::string> details;
    for (const auto& v : report) details.push_back(v.message);
    std::string message = "route " + path.route_id + " is invalid: " + details.front();
    if (details.size() > 1) message += " (+" + std::to_string(details.size() - 1) + " more)";
    throw Error(ErrorCode::Validation, std::move(message), std::move(details));
}

bool RouteSnapshot::contains(std::string_view route_id) const {
    auto n = route_number(route_id);
    return n && routes_->contains(*n);
}

Path RouteSnapshot::load_route(std::string_view route_id) const {
    auto it = routes_->find(require_route_number(route_id));
    if (it == routes_->end()) throw Error(ErrorCode::NotFound, "no route '" + std::string(route_id) + "'");
    return it->second;
}

std::vector<RouteSummary> RouteSnapshot::list_routes() const {
    std::vector<RouteSummary> out;
    out.reserve(routes_->size());
    for (const auto& [n, path] : *routes_) {
        out.push_back({path.route_id, path.description ? *path.description : std::string(kMissingDescription),
                       path.points.size()});
    }
    return out;
}

std::string RouteSnapshot::next_route_id() const {
    return make_route_id(routes_->empty() ? 1 : routes_->rbegin()->first + 1);
}

std::string RouteSnapshot::export_tree() const { return export_routes(*routes_); }

RouteStore::RouteStore(Limits limits) : limits_(limits), routes_(std::make_shared<const Routes>()) {}

RouteStore::RouteStore(fs::path file, Limits limits) : RouteStore(limits) {
    file_ = std::move(file);
    std::error_code ec;
    if (!fs::exists(*file_, ec)) return;
    std::ifstream in(*file_, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read store file " + file_->string());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return;
    routes_ = std::make_shared<const Routes>(parse_routes_checked(text, limits_));
}

std::shared_ptr<const RouteStore::Routes> RouteStore::current() const {
    std::lock_guard lock(snapshot_mutex_);
    return routes_;
}

void RouteStore::publish(std::shared_ptr<const Routes> next) {
    if (file_) write_file(*next);
    std::lock_guard lock(snapshot_mutex_);
    routes_ = std::move(next);
}

void RouteStore::write_file(const Routes& routes) const {
    const std::string text = export_routes(routes) + "\n";
    fs::path tmp = *file_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, *file_, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot replace " + file_->string());
    }
}

RouteSnapshot RouteStore::snapshot() const { return RouteSnapshot(current()); }

std::string RouteStore::save_route(const Path& path) {
    require_valid(path, limits_);
    std::lock_guard writer(writer_mutex_);
    auto next = std::make_shared<Routes>(*current());
    (*next)[*route_number(path.route_id)] = path;
    publish(std::move(next));
    return path.route_id;
}

std::string RouteStore::create_route(Path path) {
    std::lock_guard writer(writer_mutex_);
    auto base = current();
    path.route_id = RouteSnapshot(base).next_route_id();
    require_valid(path, limits_);
    auto next = std::make_shared<Routes>(*base);
    (*next)[*route_number(path.route_id)] = path;
    publish(std::move(next));
    return path.route_id;
}

Path RouteStore::load_route(std::string_view route_id) const { return snapshot().load_route(route_id); }

std::vector<RouteSummary> RouteStore::list_routes() const { return snapshot().list_routes(); }

void RouteStore::delete_route(std::string_view route_id) {
    const long long n = require_route_number(route_id);
    std::lock_guard writer(writer_mutex_);
    auto base = current();
    if (!base->contains(n)) throw Error(ErrorCode::NotFound, "no route '" + std::string(route_id) + "'");
    auto next = std::make_shared<Routes>(*base);
    next->erase(n);
    publish(std::move(next));
}

std::string RouteStore::next_route_id() const { return snapshot().next_route_id(); }

std::string RouteStore::export_tree() const { return snapshot().export_tree(); }

std::size_t RouteStore::import_tree(std::string_view text) {
    auto incoming = parse_routes_checked(text, limits_);
    std::lock_guard writer(writer_mutex_);
    auto next = std::make_shared<Routes>(*current());
    for (auto& [n, path] : incoming) (*next)[n] = std::move(path);
    publish(std::move(next));
    return incoming.size();
}

void LoopbackSync::push(const Path& path) { remote_.save_route(path); }

std::optional<Path> LoopbackSync::pull(std::string_view route_id) {
    auto snap = remote_.snapshot();
    if (!snap.contains(route_id)) return std::nullopt;
    return snap.load_route(route_id);
}

std::vector<std::string> LoopbackSync::remote_ids() {
    std::vector<std::string> ids;
    for (const auto& s : remote_.list_routes()) ids.push_back(s.route_id);
    return ids;
}

std::size_t push_all(const RouteStore& local, RemoteSync& sync) {
    auto snap = local.snapshot();
    std::size_t n = 0;
    for (const auto& s : snap.list_routes()) {
        sync.push(snap.load_route(s.route_id));
        ++n;
    }
    return n;
}

std::size_t pull_all(RouteStore& local, RemoteSync& sync) {
    std::size_t n = 0;
    for (const auto& id : sync.remote_ids()) {
        if (auto path = sync.pull(id)) {
            local.save_route(*path);
            ++n;
        }
    }
    return n;
}

}  // namespace droneroute
