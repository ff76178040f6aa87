#pragma once

// Command-line front end: solve / body / optimize / compare.
//
// run_cli() is kept separate from main() so the test suites can drive the
// tool in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shocklayer/shocklayer.hpp"

namespace shocklayer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kFormatVersion = 1;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> mach;
    double gamma = 1.4;
    std::string geometry = "plane";
    double radius = 0.5;
    std::string shape = "poly2";
    std::optional<double> z0, a, b, c, d;
    std::string spline;
    int stations = 200;
    int streamlines = 200;
    std::string out;
    std::string reference;
    std::string field;
    int degree = 2;
    int threads = 0;
};

namespace detail {

template <class T>
void take(const nlohmann::json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

template <class T>
void take(const nlohmann::json& j, const char* key, std::optional<T>& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

} // namespace detail

/// Loads a JSON object whose keys mirror the long flag names.
inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
    static const char* known[] = {"mach", "gamma", "geometry", "radius", "shape", "z0",
                                  "a", "b", "c", "d", "spline", "stations", "streamlines",
                                  "out", "reference", "field", "degree", "threads"};
    for (const auto& item : j.items())
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return item.key() == k; }) == std::end(known))
            throw ValidationError("unknown config key '" + item.key() + "'");
    RunConfig c;
    try {
        detail::take(j, "mach", c.mach);
        detail::take(j, "gamma", c.gamma);
        detail::take(j, "geometry", c.geometry);
        detail::take(j, "radius", c.radius);
        detail::take(j, "shape", c.shape);
        detail::take(j, "z0", c.z0);
        detail::take(j, "a", c.a);
        detail::take(j, "b", c.b);
        detail::take(j, "c", c.c);
        detail::take(j, "d", c.d);
        detail::take(j, "spline", c.spline);
        detail::take(j, "stations", c.stations);
        detail::take(j, "streamlines", c.streamlines);
        detail::take(j, "out", c.out);
        detail::take(j, "reference", c.reference);
        detail::take(j, "field", c.field);
        detail::take(j, "degree", c.degree);
        detail::take(j, "threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config file: ") + e.what());
    }
    return c;
}

inline FreestreamConditions freestream(const RunConfig& c) {
    if (!c.mach) throw UsageError("--mach is required");
    FreestreamConditions fs;
    fs.mach = *c.mach;
    fs.gamma = c.gamma;
    if (c.geometry == "plane") fs.geometry = Geometry::plane;
    else if (c.geometry == "axisym") fs.geometry = Geometry::axisymmetric;
    else throw UsageError("--geometry must be 'plane' or 'axisym'");
    fs.body_radius = c.radius;
    fs.validate();
    return fs;
}

inline ShockShape shape_of(const RunConfig& c, const FreestreamConditions& fs) {
    auto need = [](const std::optional<double>& v, const char* flag) {
        if (!v) throw UsageError(std::string("shape needs ") + flag);
        return *v;
    };
    if (c.shape == "spline") {
        if (c.spline.empty()) throw UsageError("--shape spline needs --spline <path>");
        return load_spline_shock(c.spline);
    }
    if (c.shape == "moeckel") return ShockShape::moeckel(fs.mach, need(c.z0, "--z0"));
    int degree = 0;
    if (c.shape == "poly2") degree = 2;
    else if (c.shape == "poly3") degree = 3;
    else if (c.shape == "poly4") degree = 4;
    else throw UsageError("unknown --shape '" + c.shape + "'");
    std::vector<double> coeffs{need(c.a, "--a"), need(c.b, "--b")};
    if (degree >= 3) coeffs.push_back(need(c.c, "--c"));
    if (degree >= 4) coeffs.push_back(need(c.d, "--d"));
    return ShockShape::poly(fs.mach, need(c.z0, "--z0"), coeffs);
}

inline LayerOptions layer_options(const RunConfig& c) {
    if (c.stations < 2) throw ValidationError("--stations must be >= 2");
    if (c.streamlines < 2) throw ValidationError("--streamlines must be >= 2");
    if (c.threads < 0) throw ValidationError("--threads must be >= 0");
    LayerOptions o;
    o.n_stations = c.stations;
    o.n_streamlines = c.streamlines;
    o.threads = c.threads;
    return o;
}

/// "dir/name.csv" -> "dir/name_body.csv".
inline std::string body_path_for(const std::string& field_path) {
    const auto slash = field_path.find_last_of('/');
    const auto dot = field_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return field_path + "_body";
    return field_path.substr(0, dot) + "_body" + field_path.substr(dot);
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    return f;
}

inline void print_summary(std::ostream& out, const std::vector<BodyPoint>& body) {
    out << "standoff " << csv::format(body.front().delta) << '\n'
        << "p_b_axis " << csv::format(body.front().p_b) << '\n';
}

inline int cmd_solve(const RunConfig& c, std::ostream& out) {
    const auto fs = freestream(c);
    const auto shape = shape_of(c, fs);
    const auto opt = layer_options(c);
    const std::string field_path = c.out.empty() ? "field.csv" : c.out;
    const auto sol = solve_field(fs, shape, opt);
    {
        auto f = open_out(field_path);
        write_field_csv(f, sol.stations);
    }
    {
        auto f = open_out(body_path_for(field_path));
        write_body_csv(f, sol.body);
    }
    print_summary(out, sol.body);
    out << "field " << field_path << '\n' << "body " << body_path_for(field_path) << '\n';
    return kExitOk;
}

inline int cmd_body(const RunConfig& c, std::ostream& out) {
    const auto fs = freestream(c);
    const auto shape = shape_of(c, fs);
    const auto opt = layer_options(c);
    const std::string path = c.out.empty() ? "body.csv" : c.out;
    const auto body = body_shape(fs, shape, opt);
    const auto err = body_error_of(body, fs.body_radius);
    {
        auto f = open_out(path);
        write_body_csv(f, body);
    }
    print_summary(out, body);
    out << "rms " << csv::format(err.rms) << '\n'
        << "max_abs " << csv::format(err.max_abs) << '\n'
        << "body " << path << '\n';
    return kExitOk;
}

inline nlohmann::ordered_json optimization_json(const FreestreamConditions& fs, int degree,
                                                const OptimizationResult& r) {
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["mach"] = fs.mach;
    j["gamma"] = fs.gamma;
    j["geometry"] = to_string(fs.geometry);
    j["degree"] = degree;
    static const char* names[] = {"z0", "a", "b", "c", "d"};
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.params.size() && i < 5; ++i) params[names[i]] = r.params[i];
    j["params"] = params;
    j["rms"] = r.error.rms;
    j["max_abs"] = r.error.max_abs;
    j["evaluations"] = r.evaluations;
    j["converged"] = r.converged;
    return j;
}

/// Degree 1 is the Moeckel fit in z0; degree d >= 2 chains through the lower
/// degrees, each warm-started from the previous optimum. --z0 overrides the
/// initial vertex parameter.
inline int cmd_optimize(const RunConfig& c, std::ostream& out) {
    const auto fs = freestream(c);
    OptimizerOptions opt;
    opt.layer = layer_options(c);
    const double z0_init = c.z0 ? *c.z0 : default_z0(fs);
    if (!(z0_init > 0.0)) throw ValidationError("--z0 must be > 0");
    auto best = optimize_z0(fs, z0_init, opt);
    for (int d = 2; d <= c.degree; ++d) {
        auto init = best.params;
        if (init.size() == 1) init.push_back(1.0);
        init.push_back(0.0);
        best = optimize_poly(fs, d, init, opt);
    }
    const std::string text = optimization_json(fs, c.degree, best).dump(2) + "\n";
    if (!c.out.empty()) {
        auto f = open_out(c.out);
        f << text;
    }
    out << text;
    return kExitOk;
}

inline int cmd_compare(const RunConfig& c, std::ostream& out) {
    if (c.reference.empty()) throw UsageError("compare needs --reference <path>");
    const auto ref = load_reference(c.reference);
    std::vector<StationSolution> stations;
    std::vector<BodyPoint> body;
    if (!c.field.empty()) {
        stations = load_field(c.field);
        body = body_from_field(stations);
    } else {
        const auto fs = freestream(c);
        auto sol = solve_field(fs, shape_of(c, fs), layer_options(c));
        stations = std::move(sol.stations);
        body = std::move(sol.body);
    }
    const auto dens = max_density_error(stations, ref);
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["max_density_error"] = dens.max_error;
    try {
        j["integrated_surface_pressure_error"] = surface_pressure_error(body, ref).error;
    } catch (const NoOverlap&) {
        j["integrated_surface_pressure_error"] = nullptr;
    }
    j["samples_compared"] = dens.compared;
    j["samples_skipped"] = dens.skipped;
    const std::string text = j.dump(2) + "\n";
    if (!c.out.empty()) {
        auto f = open_out(c.out);
        f << text;
    }
    out << text;
    return kExitOk;
}

inline void add_common(CLI::App& sub, RunConfig& c, std::string& config_path) {
    sub.add_option("--config", config_path, "JSON config file; flags override its values");
    sub.add_option("--mach", c.mach, "freestream Mach number (> 1)");
    sub.add_option("--gamma", c.gamma, "ratio of specific heats")->capture_default_str();
    sub.add_option("--geometry", c.geometry, "plane | axisym")->capture_default_str();
    sub.add_option("--radius", c.radius, "body radius")->capture_default_str();
    sub.add_option("--stations", c.stations, "number of shock stations")->capture_default_str();
    sub.add_option("--streamlines", c.streamlines, "streamlines per station")
        ->capture_default_str();
    sub.add_option("--threads", c.threads, "worker threads (0 = auto)")->capture_default_str();
    sub.add_option("--out", c.out, "output path");
}

inline void add_shape(CLI::App& sub, RunConfig& c) {
    sub.add_option("--shape", c.shape, "moeckel | poly2 | poly3 | poly4 | spline")
        ->capture_default_str();
    sub.add_option("--z0", c.z0, "shock vertex parameter");
    sub.add_option("--a", c.a, "coefficient of f");
    sub.add_option("--b", c.b, "coefficient of f^2");
    sub.add_option("--c", c.c, "coefficient of f^3");
    sub.add_option("--d", c.d, "coefficient of f^4");
    sub.add_option("--spline", c.spline, "z,r CSV of shock points for --shape spline");
}

/// The value of --config if present, scanning raw arguments.
inline std::string find_config(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

/// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        if (const auto path = find_config(args); !path.empty()) cfg = load_config(path);
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return kExitError;
    }

    std::string config_path;
    CLI::App app{"Inverse blunt-body shock-layer solver", "shocklayer"};
    app.require_subcommand(1);
    auto* solve = app.add_subcommand("solve", "solve the shock layer; write field and body CSVs");
    auto* body = app.add_subcommand("body", "recover the body only; write body CSV");
    auto* optimize = app.add_subcommand("optimize", "fit the shock shape to the circular body");
    auto* compare = app.add_subcommand("compare", "compare a field with a reference field");
    for (auto* sub : {solve, body, optimize, compare}) add_common(*sub, cfg, config_path);
    for (auto* sub : {solve, body, compare}) add_shape(*sub, cfg);
    optimize->add_option("--z0", cfg.z0, "initial vertex parameter");
    optimize->add_option("--degree", cfg.degree, "1 (r = f) or polynomial degree 2..4")
        ->capture_default_str();
    compare->add_option("--reference", cfg.reference, "reference CSV with z,r,rho,p");
    compare->add_option("--field", cfg.field, "field CSV written by 'solve'");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        if (cfg.degree < 1 || cfg.degree > 4)
            throw UsageError("--degree must be 1, 2, 3 or 4");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg, out);
        if (body->parsed()) return cmd_body(cfg, out);
        if (optimize->parsed()) return cmd_optimize(cfg, out);
        return cmd_compare(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace shocklayer::cli
