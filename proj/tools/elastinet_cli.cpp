// elastinet: command line front end.
//
// Machine-readable output (JSON or CSV) goes to stdout or --out; a short human
// summary goes to stderr. Exit codes: 0 ok, 2 input/parse, 3 validation,
// 4 optimization failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "elastinet/bounds.hpp"
#include "elastinet/config.hpp"
#include "elastinet/energy.hpp"
#include "elastinet/error.hpp"
#include "elastinet/minimizer.hpp"
#include "elastinet/network.hpp"
#include "elastinet/render.hpp"
#include "elastinet/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace elastinet;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_validation = 3;
constexpr int exit_optimization = 4;

constexpr double pi = std::numbers::pi;

struct Exit {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Exit{exit_input, "cannot read " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Exit{exit_input, "cannot write " + path.string()};
    out << text;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        write_file(out, text);
    }
}

json as_json(const Network& net) { return json::parse(serialize(net, -1)); }

Network load_network(const std::string& path) { return deserialize(read_file(path)); }

void require_valid(const Network& net) {
    const ValidationReport v = validate(net);
    if (!v.valid) throw Exit{exit_validation, "invalid network: " + v.message};
}

// Angles as plain numbers or in the forms pi, 2pi/3, pi/2, 0.75pi.
double parse_angle(const std::string& text) {
    static const std::regex re(R"(^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
    std::smatch m;
    try {
        if (std::regex_match(text, m, re)) {
            const double k = m[1].str().empty() ? 1.0 : (m[1].str() == "-" ? -1.0 : std::stod(m[1].str()));
            const double d = m[2].matched ? std::stod(m[2].str()) : 1.0;
            return k * pi / d;
        }
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw Exit{exit_input, "cannot parse angle '" + text + "'"};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(parse_angle(item));
    }
    return out;
}

void table_row(const std::string& name, double value) {
    std::fprintf(stderr, "  %-28s %.12g\n", name.c_str(), value);
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& input, double tol_pos, double tol_ang) {
    const Network net = load_network(input);
    const double d = network_diameter(net);
    const ValidationReport v = validate(net, tol_pos > 0.0 ? tol_pos : 1e-9 * (d > 0.0 ? d : 1.0),
                                        tol_ang > 0.0 ? tol_ang : default_angle_tolerance);
    json j{{"kind", to_string(net.kind)},
           {"valid", v.valid},
           {"junction_gap", v.junction_gap},
           {"angle_defect", v.angle_defect},
           {"message", v.message}};
    std::cout << j.dump(2) << '\n';
    std::fprintf(stderr, "%s: %s\n", to_string(net.kind), v.valid ? "valid" : v.message.c_str());
    return v.valid ? exit_ok : exit_validation;
}

int cmd_energy(const std::string& input, double alpha) {
    const Network net = load_network(input);
    require_valid(net);
    const EnergyReport r = penalized_energy(net, alpha);
    json curves = json::array();
    std::fprintf(stderr, "%-8s %16s %16s %16s\n", "curve", "length", "elastic", "penalized");
    for (std::size_t i = 0; i < r.per_curve.size(); ++i) {
        const auto& c = r.per_curve[i];
        curves.push_back({{"length", c.length},
                          {"elastic", c.elastic},
                          {"penalized", c.penalized},
                          {"degenerate", c.degenerate}});
        std::fprintf(stderr, "%-8zu %16.10f %16.10f %16.10f\n", i, c.length, c.elastic, c.penalized);
    }
    std::fprintf(stderr, "%-8s %16.10f %16.10f %16.10f\n", "total", r.length, r.elastic, r.penalized);
    json j{{"kind", to_string(net.kind)},
           {"alpha", r.alpha},
           {"length", r.length},
           {"elastic", r.elastic},
           {"penalized", r.penalized},
           {"curves", curves}};
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

json bound_row(const std::string& name, const BoundCheck& b) {
    std::fprintf(stderr, "  %-24s lhs %-14.8g rhs %-14.8g %s\n", name.c_str(), b.lhs, b.rhs,
                 b.holds ? "holds" : "FAILS");
    return {{"name", name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.holds},
            {"corners_at_pi", b.corners_at_pi}};
}

int cmd_bounds(const std::string& input, double corner_threshold) {
    const Network net = load_network(input);
    require_valid(net);
    json rows = json::array();
    bool all = true;
    auto add = [&](const std::string& name, const BoundCheck& b) {
        rows.push_back(bound_row(name, b));
        all = all && b.holds;
    };
    auto add_cs = [&](const std::string& name, const DiscreteCurve& c, const EndClamp& clamp) {
        const auto cs = turning_cauchy_schwarz(c, clamp);
        std::fprintf(stderr, "  %-24s lhs %-14.8g rhs %-14.8g %s\n", name.c_str(), cs.lhs, cs.rhs,
                     cs.holds ? "holds" : "FAILS");
        rows.push_back({{"name", name}, {"lhs", cs.lhs}, {"rhs", cs.rhs}, {"holds", cs.holds}});
        all = all && cs.holds;
    };
    const auto clamps = end_clamps(net);
    switch (net.kind) {
        case NetworkKind::Closed: {
            const auto loop = corner_threshold > 0.0 ? split_at_corners(net.curves[0], corner_threshold)
                                                     : as_loop(net);
            add("gauss_bonnet", gauss_bonnet_check(loop));
            break;
        }
        case NetworkKind::Drop:
            add("gauss_bonnet", gauss_bonnet_check(as_loop(net)));
            add("drop", drop_bound_check(net));
            break;
        case NetworkKind::DoubleDrop:
        case NetworkKind::DegenerateTheta:
            for (std::size_t i = 0; i < net.curves.size(); ++i) {
                const Network drop{NetworkKind::Drop, {net.curves[i]}, {}, {}};
                add("gauss_bonnet[" + std::to_string(i) + "]", gauss_bonnet_check(as_loop(drop)));
                add("drop[" + std::to_string(i) + "]", drop_bound_check(drop));
            }
            break;
        case NetworkKind::Theta:
        case NetworkKind::GeneralizedTheta: {
            for (std::size_t i = 0; i < 3; ++i) {
                const std::size_t j = (i + 1) % 3;
                const std::string tag = "[" + std::to_string(i) + std::to_string(j) + "]";
                const auto loop = theta_pair_loop(net, i, j);
                add("gauss_bonnet" + tag, gauss_bonnet_check(loop));
                if (net.kind == NetworkKind::Theta) add("pair" + tag, pair_bound_check(loop, 1e-3));
            }
            if (net.kind == NetworkKind::Theta) {
                const auto t = theta_lower_bound_check(net);
                std::fprintf(stderr, "  %-24s F   %-14.8g bound %-12.8g %s\n", "theta_4pi", t.energy, t.bound,
                             t.holds ? "holds" : "FAILS");
                rows.push_back({{"name", "theta_4pi"},
                                {"lhs", t.energy},
                                {"rhs", t.bound},
                                {"holds", t.holds},
                                {"pair_energy", t.pair_energy},
                                {"identity_defect", t.identity_defect}});
                all = all && t.holds;
            }
            break;
        }
    }
    for (std::size_t i = 0; i < net.curves.size(); ++i) {
        add_cs("cauchy_schwarz[" + std::to_string(i) + "]", net.curves[i], clamps[i]);
    }
    std::cout << json{{"kind", to_string(net.kind)}, {"all_hold", all}, {"rows", rows}}.dump(2) << '\n';
    return exit_ok;
}

int cmd_minimize(const std::string& input, const std::string& config_path, const std::string& out,
                 bool symmetric, const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    const Network net = load_network(input);
    require_valid(net);
    OptimizationConfig config = config_path.empty() ? OptimizationConfig{} : config_from_json(read_file(config_path));
    if (const char* env = std::getenv("ELASTINET_SEED")) {
        try {
            config.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw Exit{exit_input, "ELASTINET_SEED must be a non-negative integer"};
        }
    }
    const OptimizationResult r = symmetric ? minimize_symmetric_double_drop(net, config) : minimize(net, config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(out);
    const EnergyReport e = penalized_energy(r.final, 1.0);
    const InjectivityReport inj = injectivity_report(r.final);
    json resamples = json::array();
    for (const auto& ev : r.resamples) {
        resamples.push_back({{"iteration", ev.iteration}, {"before", ev.before}, {"after", ev.after},
                             {"accepted", ev.accepted}});
    }
    json result{{"termination", to_string(r.termination)},
                {"message", r.message},
                {"iterations", r.iterations},
                {"initial_F", r.energy_trace.front()},
                {"final_F", e.penalized},
                {"final_E", e.elastic},
                {"final_L", e.length},
                {"final_grad_norm", r.grad_norm_trace.back()},
                {"trace_nonincreasing", trace_nonincreasing(r)},
                {"constraint_violation", {{"junction_gap", r.junction_gap}, {"angle_defect", r.angle_defect}}},
                {"injectivity", {{"self_intersections", inj.self_intersections}, {"total", inj.total()}}},
                {"resamples", resamples},
                {"network", as_json(r.final)}};
    write_file(fs::path(out) / "result.json", result.dump(2) + "\n");
    write_file(fs::path(out) / "trace.csv", trace_csv(r));
    write_file(fs::path(out) / "before.svg", render_svg(net, "initial"));
    write_file(fs::path(out) / "after.svg", render_svg(r.final, "final"));
    json manifest{{"command", argv},
                  {"input", input},
                  {"config", json::parse(config_to_json(config))},
                  {"symmetric", symmetric},
                  {"seed", config.seed},
                  {"version", version},
                  {"wall_time_s", wall}};
    write_file(fs::path(out) / "manifest.json", manifest.dump(2) + "\n");

    std::fprintf(stderr, "%s after %zu iterations: F %.10f -> %.10f\n", to_string(r.termination), r.iterations,
                 r.energy_trace.front(), e.penalized);
    if (inj.total() != 0) {
        std::fprintf(stderr, "warning: final network has %zu crossings\n", inj.total());
    }
    return r.termination == Termination::LineSearchFailed ? exit_optimization : exit_ok;
}

struct ReferenceArgs {
    std::string shape;
    std::size_t n = 200;
    double radius = 1.0;
    double a = 2.0, b = 1.0;
    std::string alpha1 = "2pi/3", alpha2 = "2pi/3";
    double chord = 1.0;
    double size = 1.5;
    bool optimal = false;
    std::string out;
};

int cmd_reference(const ReferenceArgs& args) {
    Network net;
    std::optional<double> closed_form;
    const std::string& s = args.shape;
    if (s == "circle") {
        net = make_circle(args.radius, args.n);
    } else if (s == "ellipse") {
        net = make_ellipse(args.a, args.b, args.n);
    } else if (s == "teardrop") {
        net = make_teardrop(args.n, args.size);
    } else if (s == "double-bubble") {
        net = make_standard_double_bubble(args.optimal ? optimal_bubble_radius() : args.radius, args.n);
        if (args.optimal) closed_form = double_bubble_energy_constant();
    } else if (s == "generalized") {
        const double a1 = parse_angle(args.alpha1), a2 = parse_angle(args.alpha2);
        closed_form = generalized_bubble_energy(std::min(a1, a2), std::max(a1, a2));
        net = make_generalized_bubble(a1, a2, args.chord, args.n);
        if (args.optimal) net = optimal_rescale(net).rescaled;
    } else if (s == "figure-eight") {
        net = make_figure_eight_degenerate(std::max<std::size_t>(args.n / 2, 8));
    } else if (s == "figure-eight-curve") {
        net = make_figure_eight_curve(args.n);
    } else {
        throw Exit{exit_input, "unknown shape '" + s + "'"};
    }
    if (args.optimal && s != "double-bubble" && s != "generalized") net = optimal_rescale(net).rescaled;
    const EnergyReport e = penalized_energy(net, 1.0);
    std::fprintf(stderr, "%s (%s)\n", s.c_str(), to_string(net.kind));
    table_row("length", e.length);
    table_row("elastic", e.elastic);
    table_row("F", e.penalized);
    if (closed_form) table_row("closed form", *closed_form);
    emit(serialize(net), args.out);
    return exit_ok;
}

int cmd_recovery(const std::string& input, std::size_t n, const std::string& out) {
    const Network net = load_network(input);
    if (net.kind != NetworkKind::DegenerateTheta) {
        throw Exit{exit_validation, "recovery needs a degenerate_theta network"};
    }
    require_valid(net);
    const RecoveryResult r = recovery_sequence(net, n);
    const double f0 = penalized_energy(net, 1.0).penalized;
    const double f1 = penalized_energy(r.theta, 1.0).penalized;
    const ValidationReport v = validate(r.theta);
    json report{{"n", n},
                {"relaxed_F", f0},
                {"theta_F", f1},
                {"defect", f1 - f0},
                {"expected_defect", 3.0 / static_cast<double>(n)},
                {"exact", r.exact},
                {"t1", r.t1},
                {"t2", r.t2},
                {"valid", v.valid},
                {"angle_defect", v.angle_defect}};
    if (!out.empty()) write_file(out, serialize(r.theta));
    else report["theta"] = as_json(r.theta);
    std::cout << report.dump(2) << '\n';
    std::fprintf(stderr, "defect %.12g (3/n = %.12g)%s\n", f1 - f0, 3.0 / static_cast<double>(n),
                 r.exact ? "" : ", inexact cut");
    return exit_ok;
}

int cmd_sweep(const std::string& g1, const std::string& g2, const std::string& out) {
    const auto a1 = parse_grid(g1), a2 = parse_grid(g2);
    if (a1.empty() || a2.empty()) throw Exit{exit_input, "empty angle grid"};
    std::ostringstream os;
    os.precision(17);
    os << "alpha1,alpha2,energy,status\n";
    for (double x : a1) {
        for (double y : a2) {
            os << x << ',' << y << ',';
            try {
                os << generalized_bubble_energy(x, y) << ",ok\n";
            } catch (const Error& e) {
                os << "nan," << to_string(e.kind()) << '\n';
            }
        }
    }
    emit(os.str(), out);
    return exit_ok;
}

int cmd_render(const std::string& input, const std::string& out) {
    const Network net = load_network(input);
    emit(render_svg(net, to_string(net.kind)), out);
    return exit_ok;
}

// Rigid motion putting the first junction at the origin with frame angle pi/3,
// so the first slot has tangent (1/2, sqrt3/2). Networks without junctions
// are translated so their first point is at the origin.
int cmd_normalize(const std::string& input, const std::string& out) {
    const Network net = load_network(input);
    Network moved;
    if (net.junctions.empty()) {
        const Point2 p = net.curves.at(0).points.at(0);
        moved = rigidly_moved(net, 0.0, -p);
    } else {
        const Junction& j = net.junctions[0];
        const double rot = pi / 3.0 - j.frame_angle;
        const double c = std::cos(rot), s = std::sin(rot);
        const Point2 p{c * j.position.x - s * j.position.y, s * j.position.x + c * j.position.y};
        moved = rigidly_moved(net, rot, -p);
        moved.junctions[0].position = Point2{};
        moved.junctions[0].frame_angle = pi / 3.0;
    }
    emit(serialize(moved), out);
    return exit_ok;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::InvalidInput:
        case ErrorKind::InvalidConfig:
        case ErrorKind::SingularAngle: return exit_input;
        case ErrorKind::Validation:
        case ErrorKind::InvalidCurve:
        case ErrorKind::NoOptimalRescale:
        case ErrorKind::ConstructionFailed: return exit_validation;
        case ErrorKind::Numeric: return exit_optimization;
    }
    return exit_input;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elastic energy of planar curves and curve networks"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    std::vector<std::string> args(argv, argv + argc);

    std::string input, out, config_path, grid1, grid2;
    double alpha = 1.0, tol_pos = -1.0, tol_ang = -1.0, corner_threshold = -1.0;
    std::size_t n = 10;
    bool symmetric = false;
    ReferenceArgs ref;

    auto* validate_cmd = app.add_subcommand("validate", "Check incidence and junction angles");
    validate_cmd->add_option("input", input, "Network JSON")->required();
    validate_cmd->add_option("--tol-pos", tol_pos, "Position tolerance (default 1e-9 * diameter)");
    validate_cmd->add_option("--tol-ang", tol_ang, "Angle tolerance in radians (default 1e-6)");

    auto* energy_cmd = app.add_subcommand("energy", "Penalized elastic energy");
    energy_cmd->add_option("input", input, "Network JSON")->required();
    energy_cmd->add_option("--alpha", alpha, "Length penalty")->check(CLI::PositiveNumber);

    auto* bounds_cmd = app.add_subcommand("bounds", "Gauss-Bonnet and energy lower bounds");
    bounds_cmd->add_option("input", input, "Network JSON")->required();
    bounds_cmd->add_option("--corner-threshold", corner_threshold,
                           "Closed curves: vertices turning more than this (radians) count as corners");

    auto* minimize_cmd = app.add_subcommand("minimize", "Descend the penalized energy");
    minimize_cmd->add_option("input", input, "Network JSON")->required();
    minimize_cmd->add_option("--kind-config", config_path, "Optimization config JSON");
    minimize_cmd->add_option("--out", out, "Output directory")->required();
    minimize_cmd->add_flag("--symmetric", symmetric, "Symmetric double drop descent");

    auto* reference_cmd = app.add_subcommand("reference", "Build a reference network");
    reference_cmd->add_option("--shape", ref.shape,
                              "circle | ellipse | teardrop | double-bubble | generalized | figure-eight | "
                              "figure-eight-curve")
        ->required();
    reference_cmd->add_option("--n", ref.n, "Resolution (edges per curve)");
    reference_cmd->add_option("--radius", ref.radius, "Circle or bubble radius");
    reference_cmd->add_option("--a", ref.a, "Ellipse semi-axis along x");
    reference_cmd->add_option("--b", ref.b, "Ellipse semi-axis along y");
    reference_cmd->add_option("--alpha1", ref.alpha1, "Generalized angle between curves 1 and 2");
    reference_cmd->add_option("--alpha2", ref.alpha2, "Generalized angle between curves 2 and 3");
    reference_cmd->add_option("--chord", ref.chord, "Generalized bubble segment length");
    reference_cmd->add_option("--size", ref.size, "Teardrop size");
    reference_cmd->add_flag("--optimal", ref.optimal, "Apply the optimal rescaling (double bubble: radius r-bar)");
    reference_cmd->add_option("--out", ref.out, "Output file (default stdout)");

    auto* recovery_cmd = app.add_subcommand("recovery", "Theta networks approaching a degenerate one");
    recovery_cmd->add_option("input", input, "Degenerate theta JSON")->required();
    recovery_cmd->add_option("--n", n, "Inserted segments have length 1/n")->check(CLI::PositiveNumber);
    recovery_cmd->add_option("--out", out, "Write the theta network here instead of embedding it");

    auto* sweep_cmd = app.add_subcommand("sweep", "Generalized bubble energy over an angle grid");
    sweep_cmd->add_option("--alpha1-grid", grid1, "Comma separated angles")->required();
    sweep_cmd->add_option("--alpha2-grid", grid2, "Comma separated angles")->required();
    sweep_cmd->add_option("--out", out, "CSV file (default stdout)");

    auto* render_cmd = app.add_subcommand("render", "Draw a network as SVG");
    render_cmd->add_option("input", input, "Network JSON")->required();
    render_cmd->add_option("--out", out, "SVG file (default stdout)");

    auto* normalize_cmd = app.add_subcommand("normalize", "Move the first junction to the origin with frame pi/3");
    normalize_cmd->add_option("input", input, "Network JSON")->required();
    normalize_cmd->add_option("--out", out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*validate_cmd) return cmd_validate(input, tol_pos, tol_ang);
        if (*energy_cmd) return cmd_energy(input, alpha);
        if (*bounds_cmd) return cmd_bounds(input, corner_threshold);
        if (*minimize_cmd) return cmd_minimize(input, config_path, out, symmetric, args);
        if (*reference_cmd) return cmd_reference(ref);
        if (*recovery_cmd) return cmd_recovery(input, n, out);
        if (*sweep_cmd) return cmd_sweep(grid1, grid2, out);
        if (*render_cmd) return cmd_render(input, out);
        if (*normalize_cmd) return cmd_normalize(input, out);
    } catch (const Exit& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const Error& e) {
        std::fprintf(stderr, "error (%s): %s\n", to_string(e.kind()), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_input;
    }
    return exit_input;
}
