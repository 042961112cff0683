#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "droneroute/analysis.hpp"
#include "droneroute/codec.hpp"
#include "droneroute/document.hpp"
#include "droneroute/error.hpp"
#include "droneroute/service.hpp"
#include "droneroute/store.hpp"

namespace droneroute::cli {

namespace {

using doc::Json;

constexpr const char* kDefaultStore = "routes.json";

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotFound: return kNotFound;
        case ErrorCode::Validation:
        case ErrorCode::Domain:
        case ErrorCode::Capacity:
        case ErrorCode::Schedule: return kInvalid;
        case ErrorCode::Pairing:
        case ErrorCode::Conflict: return kPairing;
        case ErrorCode::Io: return kIo;
        case ErrorCode::Schema:
        case ErrorCode::Parse: return kSchema;
    }
    return kInternal;
}

std::string read_input(const std::string& source, std::istream& in) {
    if (source == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(source, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot read '" + source + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

void write_output(const std::string& target, const std::string& text, std::ostream& out) {
    if (target.empty() || target == "-") {
        out << text;
        return;
    }
    std::ofstream file(target, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) throw Error(ErrorCode::Io, "cannot write '" + target + "'");
}

HomePoint parse_home(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::Schema, "--home: expected lat,lon");
    Json j = {{"ZLatitude", text.substr(0, comma)}, {"XLongitude", text.substr(comma + 1)}};
    return codec::home_from_json(j, "--home");
}

// Options shared by analyze, report and plotdata.
struct AnalysisArgs {
    std::string route_id;
    std::string flown = "-";
    std::string home;
    std::string mode;
};

void add_analysis_options(CLI::App* cmd, AnalysisArgs& a) {
    cmd->add_option("id", a.route_id, "planned route id")->required();
    cmd->add_option("--flown", a.flown, "flown record or simulation result, '-' for stdin")->required();
    cmd->add_option("--home", a.home, "home point as lat,lon");
    cmd->add_option("--mode", a.mode, "paper or corrected");
}

ErrorReport run_analysis(const RouteStore& store, const AnalysisArgs& a, std::istream& in) {
    Path planned = store.load_route(a.route_id);
    Json doc = doc::parse_text(read_input(a.flown, in));
    FlownRecord flown = codec::flown_from_json(doc);
    // A simulation result names the mode it was produced in; analyzing in the
    // same mode keeps planned and flown in one frame.
    GeodesyMode mode = GeodesyMode::PaperFaithful;
    if (!a.mode.empty()) {
        mode = parse_mode(a.mode);
    } else if (doc.is_object() && doc.contains("mode") && doc["mode"].is_string()) {
        mode = parse_mode(doc["mode"].get<std::string>());
    }
    HomePoint home = a.home.empty() ? analysis_home(planned, flown) : parse_home(a.home);
    return compare(planned, flown, home, mode);
}

std::string store_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("DRONEROUTE_STORE"); env && *env) return env;
    return kDefaultStore;
}

void print_validation(const std::string& route_id, bool legacy, const ValidationReport& report, std::ostream& out) {
    out << route_id << ": ";
    if (report.empty()) {
        out << "valid";
    } else {
        out << "invalid (" << report.size() << (report.size() == 1 ? " problem)" : " problems)");
    }
    if (legacy) out << "; note: legacy schema upgraded";
    out << '\n';
    for (const auto& v : report) out << "  " << v.message << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Waypoint mission planning: routes, simulation and planned-vs-flown analysis", "droneroute"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string store_flag;
    app.add_option("--store", store_flag, "route document file (default $DRONEROUTE_STORE or routes.json)");

    std::string id, file;
    bool as_json = false;

    auto* list = app.add_subcommand("list", "list stored routes");
    list->add_flag("--json", as_json, "print a JSON array");

    auto* show = app.add_subcommand("show", "print one route as a document tree");
    show->add_option("id", id)->required();

    auto* validate = app.add_subcommand("validate", "validate a stored route or a document file");
    validate->add_option("target", id, "route id or file")->required();

    auto* import = app.add_subcommand("import", "merge routes from a document file into the store");
    import->add_option("file", file, "'-' for stdin")->required();

    auto* exporter = app.add_subcommand("export", "write the whole store as a document tree");
    exporter->add_option("file", file, "'-' or omitted for stdout");

    auto* remove = app.add_subcommand("delete", "delete a stored route");
    remove->add_option("id", id)->required();

    SimConfig sim;
    std::string sim_mode, sim_home;
    bool flown_only = false;
    auto* simulate_cmd = app.add_subcommand("simulate", "simulate a stored route and print the result");
    simulate_cmd->add_option("id", id)->required();
    simulate_cmd->add_option("--seed", sim.rng_seed);
    simulate_cmd->add_option("--speed", sim.speed_mps, "m/s");
    simulate_cmd->add_option("--noise", sim.noise_sigma_m, "per-axis position noise sigma at each arrival, m");
    simulate_cmd->add_option("--tick", sim.tick_s, "trace sampling period, s");
    simulate_cmd->add_option("--mode", sim_mode, "paper or corrected (default corrected)");
    simulate_cmd->add_option("--home", sim_home, "home point as lat,lon (default below waypoint 0)");
    simulate_cmd->add_flag("--flown-only", flown_only, "print only the flown record");

    AnalysisArgs analysis;
    bool round = false;
    auto* analyze = app.add_subcommand("analyze", "compare a flown record against the planned route");
    add_analysis_options(analyze, analysis);
    analyze->add_flag("--round", round, "round errors to 0.1 m");

    std::string format = "table";
    int decimals = -1;
    auto* report = app.add_subcommand("report", "render the error table");
    add_analysis_options(report, analysis);
    report->add_option("--format", format, "csv or table");
    report->add_option("--decimals", decimals, "fixed decimals for csv (default full precision)");

    auto* plotdata = app.add_subcommand("plotdata", "emit planned and flown x/z series as CSV");
    add_analysis_options(plotdata, analysis);
    plotdata->add_option("--decimals", decimals, "fixed decimals (default full precision)");

    ServiceConfig serve_config;
    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    serve->add_option("--port", serve_config.port);
    serve->add_option("--host", serve_config.host);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        const std::string path = store_path(store_flag);
        RouteStore store{std::filesystem::path(path)};

        if (list->parsed()) {
            auto routes = store.list_routes();
            if (as_json) {
                Json arr = Json::array();
                for (const auto& s : routes) arr.push_back(codec::summary_to_json(s));
                out << arr.dump(2) << '\n';
            } else {
                for (const auto& s : routes) out << s.route_id << '\t' << s.waypoint_count << '\t' << s.description << '\n';
            }
        } else if (show->parsed()) {
            out << doc::route_tree({store.load_route(id)}).dump(2) << '\n';
        } else if (validate->parsed()) {
            bool all_valid = true;
            if (route_number(id) && !std::filesystem::exists(id)) {
                Path p = store.load_route(id);
                auto r = validate_path(p, store.limits());
                all_valid = r.empty();
                print_validation(p.route_id, false, r, out);
            } else {
                auto routes = doc::parse_routes(doc::parse_text(read_input(id, in)));
                if (routes.empty()) throw Error(ErrorCode::Schema, id + ": no routes found");
                for (const auto& parsed : routes) {
                    auto r = validate_path(parsed.path, store.limits());
                    all_valid = all_valid && r.empty();
                    print_validation(parsed.path.route_id, parsed.legacy, r, out);
                }
            }
            if (!all_valid) return kInvalid;
        } else if (import->parsed()) {
            auto n = store.import_tree(read_input(file, in));
            out << "imported " << n << (n == 1 ? " route" : " routes") << '\n';
        } else if (exporter->parsed()) {
            write_output(file, store.export_tree() + "\n", out);
        } else if (remove->parsed()) {
            store.delete_route(id);
            out << "deleted " << id << '\n';
        } else if (simulate_cmd->parsed()) {
            Path p = store.load_route(id);
            GeodesyMode mode = sim_mode.empty() ? GeodesyMode::Corrected : parse_mode(sim_mode);
            HomePoint home = sim_home.empty() ? default_home(p) : parse_home(sim_home);
            SimulationResult r = simulate(p, home, sim, mode);
            for (const auto& w : r.warnings) err << "warning: " << w << '\n';
            Json j = codec::simulation_to_json(r);
            if (flown_only) {
                Json flown = j["flown"];
                flown["mode"] = mode_name(mode);
                j = std::move(flown);
            }
            out << j.dump() << '\n';
        } else if (analyze->parsed()) {
            ErrorReport r = run_analysis(store, analysis, in);
            Json j = codec::report_to_json(r);
            j["route"] = analysis.route_id;
            ErrorSummary s = summarize(r);
            if (round) {
                for (auto& p : j["points"]) {
                    p["error_x"] = round_to_decimeter(p["error_x"].get<double>());
                    p["error_z"] = round_to_decimeter(p["error_z"].get<double>());
                }
                j["mean_error_x"] = s.mean_error_x;
                j["mean_error_z"] = s.mean_error_z;
                j["max_error_x"] = s.max_error_x;
                j["max_error_z"] = s.max_error_z;
            } else {
                auto max_of = [&](double PointError::*field) {
                    double m = 0.0;
                    for (const auto& p : r.points) m = std::max(m, p.*field);
                    return m;
                };
                j["max_error_x"] = max_of(&PointError::error_x);
                j["max_error_z"] = max_of(&PointError::error_z);
            }
            out << j.dump(2) << '\n';
        } else if (report->parsed()) {
            ErrorReport r = run_analysis(store, analysis, in);
            out << render_report(r, parse_report_format(format), decimals);
        } else if (plotdata->parsed()) {
            ErrorReport r = run_analysis(store, analysis, in);
            out << render_plot_data(r, decimals);
        } else if (serve->parsed()) {
            ServiceConfig env = service_config_from_env();
            if (!serve->count("--port")) serve_config.port = env.port;
            if (!serve->count("--host")) serve_config.host = env.host;
            serve_config.simulation_mode = env.simulation_mode;
            serve_config.analysis_mode = env.analysis_mode;
            MissionService service(store, serve_config);
            HttpServer server(service);
            err << "serving " << path << " on " << serve_config.host << ':' << serve_config.port << '\n';
            server.run(serve_config.host, serve_config.port);
        }
    } catch (const Error& e) {
        err << Json{{"error", error_code_name(e.code())}, {"message", e.what()}, {"details", e.details()}}.dump()
            << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << Json{{"error", "internal"}, {"message", e.what()}, {"details", Json::array()}}.dump() << '\n';
        return kInternal;
    }
    return kOk;
}

}  // namespace droneroute::cli
