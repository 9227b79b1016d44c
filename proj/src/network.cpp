#include "elastinet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elastinet/error.hpp"

namespace elastinet {

namespace {

constexpr double pi = std::numbers::pi;

std::array<double, 3> triple_offsets(const Network& n) {
    if (n.kind == NetworkKind::GeneralizedTheta) {
        return {0.0, n.angles[0], n.angles[0] + n.angles[1]};
    }
    return {0.0, 2.0 * pi / 3.0, 4.0 * pi / 3.0};
}

std::size_t expected_curves(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::Closed:
        case NetworkKind::Drop: return 1;
        case NetworkKind::DegenerateTheta:
        case NetworkKind::DoubleDrop: return 2;
        case NetworkKind::Theta:
        case NetworkKind::GeneralizedTheta: return 3;
    }
    return 0;
}

std::size_t expected_junctions(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::Closed:
        case NetworkKind::Drop:
        case NetworkKind::DoubleDrop: return 0;
        case NetworkKind::DegenerateTheta: return 1;
        case NetworkKind::Theta:
        case NetworkKind::GeneralizedTheta: return 2;
    }
    return 0;
}

// Outgoing tangent at a curve end, estimated from the polyline.
Vec2 outgoing_estimate(const DiscreteCurve& c, bool at_start) {
    return at_start ? start_tangent_estimate(c) : -end_tangent_estimate(c);
}

const Point2& end_point(const DiscreteCurve& c, bool at_start) {
    return at_start ? c.points.front() : c.points.back();
}

}  // namespace

const char* to_string(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::Closed: return "closed";
        case NetworkKind::Drop: return "drop";
        case NetworkKind::Theta: return "theta";
        case NetworkKind::DegenerateTheta: return "degenerate_theta";
        case NetworkKind::GeneralizedTheta: return "generalized_theta";
        case NetworkKind::DoubleDrop: return "double_drop";
    }
    return "unknown";
}

NetworkKind network_kind_from_string(const std::string& name) {
    for (auto k : {NetworkKind::Closed, NetworkKind::Drop, NetworkKind::Theta,
                   NetworkKind::DegenerateTheta, NetworkKind::GeneralizedTheta,
                   NetworkKind::DoubleDrop}) {
        if (name == to_string(k)) return k;
    }
    throw Error(ErrorKind::InvalidInput, "unknown network kind '" + name + "'");
}

std::array<double, 4> four_point_offsets(int pairing) {
    switch (pairing) {
        case 0: return {0.0, pi / 3.0, 4.0 * pi / 3.0, pi};
        case 1: return {pi / 3.0, pi, 4.0 * pi / 3.0, 0.0};
        case 2: return {0.0, pi, pi / 3.0, 4.0 * pi / 3.0};
        default: break;
    }
    throw Error(ErrorKind::InvalidInput, "four-point pairing must be 0, 1 or 2");
}

std::vector<EndSlot> end_slots(const Network& network) {
    std::vector<EndSlot> slots;
    switch (network.kind) {
        case NetworkKind::Theta:
        case NetworkKind::GeneralizedTheta: {
            const auto off = triple_offsets(network);
            for (std::size_t j = 0; j < 2 && j < network.junctions.size(); ++j) {
                const auto& jn = network.junctions[j];
                for (std::size_t c = 0; c < 3; ++c) {
                    slots.push_back({c, j == 0, j, off[c],
                                     jn.frame_angle + jn.orientation * off[c]});
                }
            }
            break;
        }
        case NetworkKind::DegenerateTheta: {
            if (network.junctions.empty()) break;
            const auto& jn = network.junctions[0];
            const auto off = four_point_offsets(jn.pairing);
            for (std::size_t k = 0; k < 4; ++k) {
                slots.push_back({k / 2, k % 2 == 0, 0, off[k],
                                 jn.frame_angle + jn.orientation * off[k]});
            }
            break;
        }
        default: break;
    }
    return slots;
}

std::vector<EndClamp> end_clamps(const Network& network) {
    std::vector<EndClamp> clamps(network.curves.size());
    for (const auto& s : end_slots(network)) {
        if (s.curve >= clamps.size()) continue;
        if (s.at_start) {
            clamps[s.curve].start = s.direction;
        } else {
            clamps[s.curve].end = s.direction + pi;
        }
    }
    return clamps;
}

Point2 network_anchor(const Network& network) {
    if (!network.junctions.empty()) return network.junctions.front().position;
    if (!network.curves.empty() && !network.curves.front().points.empty()) {
        return network.curves.front().points.front();
    }
    return {};
}

double network_diameter(const Network& network) {
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& c : network.curves) {
        for (const auto& p : c.points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    if (!(xmax >= xmin)) return 0.0;
    return std::hypot(xmax - xmin, ymax - ymin);
}

Network scaled(const Network& network, double factor) {
    if (factor == 1.0) return network;
    const Point2 o = network_anchor(network);
    Network out = network;
    for (auto& c : out.curves) {
        for (auto& p : c.points) p = o + (p - o) * factor;
    }
    for (auto& j : out.junctions) j.position = o + (j.position - o) * factor;
    return out;
}

Network rigidly_moved(const Network& network, double rotation, const Point2& translation) {
    Network out = network;
    for (auto& c : out.curves) c = transformed(c, rotation, translation);
    const double cr = std::cos(rotation), sr = std::sin(rotation);
    for (auto& j : out.junctions) {
        const Point2 p = j.position;
        j.position = Point2{cr * p.x - sr * p.y, sr * p.x + cr * p.y} + translation;
        j.frame_angle += rotation;
    }
    return out;
}

void check_structure(const Network& network) {
    const std::size_t nc = expected_curves(network.kind);
    if (network.curves.size() != nc) {
        throw Error(ErrorKind::Validation, std::string(to_string(network.kind)) + " network needs " +
                                               std::to_string(nc) + " curves, got " +
                                               std::to_string(network.curves.size()));
    }
    const std::size_t nj = expected_junctions(network.kind);
    if (network.junctions.size() != nj) {
        throw Error(ErrorKind::Validation, std::string(to_string(network.kind)) + " network needs " +
                                               std::to_string(nj) + " junctions, got " +
                                               std::to_string(network.junctions.size()));
    }
    for (const auto& c : network.curves) {
        if (c.points.size() < 3) throw Error(ErrorKind::Validation, "curves need at least 3 points");
        if (network.kind == NetworkKind::Closed ? !c.closed : c.closed) {
            throw Error(ErrorKind::Validation, "curve closedness does not match network kind");
        }
    }
    for (const auto& j : network.junctions) {
        if (j.orientation != 1 && j.orientation != -1) {
            throw Error(ErrorKind::Validation, "junction orientation must be +1 or -1");
        }
        if (network.kind == NetworkKind::DegenerateTheta) four_point_offsets(j.pairing);
    }
    if (network.kind == NetworkKind::GeneralizedTheta) {
        const auto& a = network.angles;
        for (double ai : a) {
            if (!(ai > 0.0 && ai < 2.0 * pi)) {
                throw Error(ErrorKind::Validation, "generalized angles must lie in (0, 2pi)");
            }
        }
        if (std::abs(a[0] + a[1] + a[2] - 2.0 * pi) > 1e-9) {
            throw Error(ErrorKind::Validation, "generalized angles must sum to 2pi");
        }
    }
}

ValidationReport validate(const Network& network, double tol_pos, double tol_ang) {
    if (!(tol_pos > 0.0) || !(tol_ang > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "validation tolerances must be positive");
    }
    ValidationReport report;
    try {
        check_structure(network);
        for (const auto& c : network.curves) require_regular(c);
    } catch (const Error& e) {
        report.valid = false;
        report.message = e.what();
        report.junction_gap = INFINITY;
        report.angle_defect = INFINITY;
        return report;
    }

    switch (network.kind) {
        case NetworkKind::Closed: break;
        case NetworkKind::Drop: {
            const auto& p = network.curves[0].points;
            report.junction_gap = norm(p.back() - p.front());
            break;
        }
        case NetworkKind::DoubleDrop: {
            const Point2 four = network.curves[0].points.front();
            for (const auto& c : network.curves) {
                report.junction_gap = std::max(report.junction_gap, norm(c.points.front() - four));
                report.junction_gap = std::max(report.junction_gap, norm(c.points.back() - four));
            }
            break;
        }
        default: {
            const auto slots = end_slots(network);
            for (const auto& s : slots) {
                const auto& c = network.curves[s.curve];
                const Point2 jp = network.junctions[s.junction].position;
                report.junction_gap =
                    std::max(report.junction_gap, norm(end_point(c, s.at_start) - jp));
            }
            // Pairwise angles between estimated outgoing tangents against the
            // prescribed ones; independent of the stored frame angle.
            for (std::size_t a = 0; a < slots.size(); ++a) {
                for (std::size_t b = a + 1; b < slots.size(); ++b) {
                    if (slots[a].junction != slots[b].junction) continue;
                    const int o = network.junctions[slots[a].junction].orientation;
                    const Vec2 ta = outgoing_estimate(network.curves[slots[a].curve], slots[a].at_start);
                    const Vec2 tb = outgoing_estimate(network.curves[slots[b].curve], slots[b].at_start);
                    const double measured = turning_angle(ta, tb);
                    const double prescribed = o * (slots[b].offset - slots[a].offset);
                    report.angle_defect =
                        std::max(report.angle_defect, std::abs(wrap_angle(measured - prescribed)));
                }
            }
            break;
        }
    }
    report.valid = report.junction_gap <= tol_pos && report.angle_defect <= tol_ang;
    if (!report.valid) {
        report.message = report.junction_gap > tol_pos ? "junction gap exceeds tolerance"
                                                       : "junction angles deviate from prescribed";
    }
    return report;
}

ValidationReport validate(const Network& network) {
    const double d = network_diameter(network);
    return validate(network, 1e-9 * (d > 0.0 ? d : 1.0), default_angle_tolerance);
}

void fit_frames(Network& network) {
    auto slots = end_slots(network);
    for (std::size_t j = 0; j < network.junctions.size(); ++j) {
        auto& jn = network.junctions[j];
        double best_residual = INFINITY;
        for (int o : {1, -1}) {
            double sx = 0.0, sy = 0.0;
            for (const auto& s : slots) {
                if (s.junction != j) continue;
                const Vec2 t = outgoing_estimate(network.curves[s.curve], s.at_start);
                const double f = angle_of(t) - o * s.offset;
                sx += std::cos(f);
                sy += std::sin(f);
            }
            const double frame = std::atan2(sy, sx);
            double residual = 0.0;
            for (const auto& s : slots) {
                if (s.junction != j) continue;
                const Vec2 t = outgoing_estimate(network.curves[s.curve], s.at_start);
                residual += std::abs(wrap_angle(angle_of(t) - frame - o * s.offset));
            }
            if (residual < best_residual) {
                best_residual = residual;
                jn.frame_angle = frame;
                jn.orientation = o;
            }
        }
    }
}

Network make_circle(double radius, std::size_t n) {
    if (!(radius > 0.0)) throw Error(ErrorKind::InvalidInput, "circle radius must be positive");
    if (n < 8) throw Error(ErrorKind::InvalidInput, "circle needs n >= 8");
    return make_ellipse(radius, radius, n);
}

Network make_ellipse(double a, double b, std::size_t n) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::InvalidInput, "semi-axes must be positive");
    if (n < 3) throw Error(ErrorKind::InvalidInput, "ellipse needs n >= 3");
    Network net;
    net.kind = NetworkKind::Closed;
    DiscreteCurve c;
    c.closed = true;
    c.points.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
        c.points.push_back({a * std::cos(t), b * std::sin(t)});
    }
    net.curves.push_back(std::move(c));
    return net;
}

Network make_teardrop(std::size_t n, double size) {
    if (n < 8) throw Error(ErrorKind::InvalidInput, "teardrop needs n >= 8");
    // Dense parameter sampling, then uniform in arclength.
    DiscreteCurve dense;
    const std::size_t m = 8 * n;
    for (std::size_t k = 0; k <= m; ++k) {
        const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(m);
        dense.points.push_back({size * (std::cos(t) - 1.0), size * std::sin(t) * std::sin(0.5 * t)});
    }
    dense.points.back() = dense.points.front();
    Network net;
    net.kind = NetworkKind::Drop;
    net.curves.push_back(resample_uniform(dense, n));
    net.curves[0].points.front() = Point2{};
    net.curves[0].points.back() = Point2{};
    return net;
}

namespace {

// Inscribed polygon of a circular arc leaving `start` with tangent angle `t0`
// and turning by `turn` (signed) over `n` equal chords.
DiscreteCurve arc_polygon(const Point2& start, double t0, double turn, double radius,
                          std::size_t n) {
    const double side = turn >= 0.0 ? 1.0 : -1.0;
    const Point2 center = start + perp(unit_from_angle(t0)) * (side * radius);
    const double phi0 = angle_of(start - center);
    DiscreteCurve c;
    c.points.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double phi = phi0 + turn * static_cast<double>(k) / static_cast<double>(n);
        c.points.push_back(center + unit_from_angle(phi) * radius);
    }
    c.points.front() = start;
    return c;
}

}  // namespace

Network make_generalized_bubble(double a1, double a2, double chord, std::size_t n) {
    if (!(a1 > 0.0 && a1 <= pi) || !(a2 > 0.0 && a2 <= pi)) {
        throw Error(ErrorKind::InvalidInput, "bubble construction needs angles in (0, pi]");
    }
    if (!(chord > 0.0)) throw Error(ErrorKind::InvalidInput, "chord must be positive");
    if (n < 3) throw Error(ErrorKind::InvalidInput, "bubble needs n >= 3 edges per curve");

    const Point2 j0{0.0, 0.0};
    const Point2 j1{-chord, 0.0};
    Network net;
    net.kind = NetworkKind::GeneralizedTheta;
    net.angles = {a1, a2, 2.0 * pi - a1 - a2};

    // Curve 1 bows counterclockwise, curve 3 clockwise; both subtend the chord.
    DiscreteCurve c1 = arc_polygon(j0, pi - a1, 2.0 * a1, chord / (2.0 * std::sin(a1)), n);
    DiscreteCurve c3 = arc_polygon(j0, pi + a2, -2.0 * a2, chord / (2.0 * std::sin(a2)), n);
    c1.points.back() = j1;
    c3.points.back() = j1;
    DiscreteCurve c2;
    for (std::size_t k = 0; k <= n; ++k) {
        c2.points.push_back({-chord * static_cast<double>(k) / static_cast<double>(n), 0.0});
    }
    c2.points.back() = j1;
    net.curves = {std::move(c1), std::move(c2), std::move(c3)};
    net.junctions = {Junction{j0, pi - a1, 1, 0}, Junction{j1, a1, -1, 0}};
    return net;
}

Network make_standard_double_bubble(double r, std::size_t n) {
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidInput, "bubble radius must be positive");
    Network net = make_generalized_bubble(2.0 * pi / 3.0, 2.0 * pi / 3.0, std::sqrt(3.0) * r, n);
    net.kind = NetworkKind::Theta;
    net.angles = {};
    return net;
}

double optimal_bubble_radius() {
    return std::sqrt(8.0 * pi / (3.0 * std::sqrt(3.0) + 8.0 * pi));
}

double double_bubble_energy_constant() {
    return 2.0 / 3.0 * std::sqrt(8.0 * pi * (8.0 * pi + 3.0 * std::sqrt(3.0)));
}

Network make_figure_eight_degenerate(std::size_t n_half, double apex_edge, double lobe_length) {
    if (n_half < 4) throw Error(ErrorKind::InvalidInput, "figure eight needs n_half >= 4");
    if (!(apex_edge > 0.0) || !(lobe_length > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "figure eight sizes must be positive");
    }
    const std::size_t m = n_half;
    const double h = (lobe_length - apex_edge) / (2.0 * static_cast<double>(m));

    // Turning at vertex k grows like (k/m)^p. The first edge sits half a turn
    // past 60 degrees so the endpoint tangent is exactly 60 degrees, and the
    // last turn lands on the horizontal apex edge.
    auto directions = [&](double p) {
        std::vector<double> w(m + 1, 0.0);
        double sum = 0.0;
        for (std::size_t k = 1; k <= m; ++k) {
            w[k] = std::pow(static_cast<double>(k) / static_cast<double>(m), p);
            sum += w[k];
        }
        const double scale = (2.0 * pi / 3.0) / (0.5 * w[1] + sum);
        std::vector<double> a(m);
        a[0] = pi / 3.0 + 0.5 * scale * w[1];
        for (std::size_t k = 1; k < m; ++k) a[k] = a[k - 1] + scale * w[k];
        return a;
    };
    auto apex_x = [&](double p) {
        double x = 0.0;
        for (double a : directions(p)) x += h * std::cos(a);
        return x - 0.5 * apex_edge;
    };
    double lo = 0.0, hi = 50.0;
    if (apex_x(lo) > 0.0 || apex_x(hi) < 0.0) {
        throw Error(ErrorKind::ConstructionFailed, "figure eight profile has no closing exponent");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (apex_x(mid) < 0.0 ? lo : hi) = mid;
    }
    const auto a = directions(0.5 * (lo + hi));

    std::vector<Point2> half{{0.0, 0.0}};
    for (double ai : a) half.push_back(half.back() + unit_from_angle(ai) * h);

    DiscreteCurve upper;
    upper.points = half;
    for (std::size_t k = half.size(); k-- > 0;) upper.points.push_back({-half[k].x, half[k].y});
    upper.points.back() = Point2{};

    DiscreteCurve lower;
    for (std::size_t k = upper.points.size(); k-- > 0;) lower.points.push_back(-upper.points[k]);
    lower.points.front() = Point2{};
    lower.points.back() = Point2{};

    Network net;
    net.kind = NetworkKind::DegenerateTheta;
    net.curves = {std::move(upper), std::move(lower)};
    net.junctions = {Junction{{0.0, 0.0}, pi / 3.0, 1, 0}};
    return net;
}

Network make_figure_eight_curve(std::size_t n) {
    if (n < 8) throw Error(ErrorKind::InvalidInput, "figure eight needs n >= 8");
    Network net;
    net.kind = NetworkKind::Closed;
    DiscreteCurve c;
    c.closed = true;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * pi * (static_cast<double>(k) + 0.25) / static_cast<double>(n);
        c.points.push_back({std::cos(t), std::sin(t) * std::cos(t)});
    }
    net.curves.push_back(std::move(c));
    return net;
}

double generalized_bubble_energy(double a1, double a2) {
    if (!(a1 > 0.0) || !(a1 <= a2) || !(a1 + a2 < 2.0 * pi)) {
        throw Error(ErrorKind::InvalidInput, "need 0 < a1 <= a2 and a1 + a2 < 2pi");
    }
    const double s1 = std::sin(a1);
    const double s2 = std::sin(a2);
    if (std::abs(s1) < 1e-15 || std::abs(s2) < 1e-15) {
        throw Error(ErrorKind::SingularAngle, "sin(a1) or sin(a2) vanishes");
    }
    const double u = a1 + a2 * s2 / s1;
    const double v = a1 + a2 * s1 / s2 + s1;
    if (u < 0.0 || v < 0.0) {
        throw Error(ErrorKind::SingularAngle, "two-arc bubble is not admissible for these angles");
    }
    return 4.0 * std::sqrt(u) * std::sqrt(v);
}

}  // namespace elastinet
