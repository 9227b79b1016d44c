#include "elastinet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elastinet/energy.hpp"
#include "elastinet/error.hpp"

namespace elastinet {

namespace {

constexpr double pi = std::numbers::pi;

Vec2 unit(const Vec2& v) { return v * (1.0 / norm(v)); }

Vec2 arc_start_tangent(const Arc& a) {
    return a.start_tangent ? *a.start_tangent : unit(a.curve.edge(0));
}

Vec2 arc_end_tangent(const Arc& a) {
    return a.end_tangent ? *a.end_tangent : unit(a.curve.edge(a.curve.num_edges() - 1));
}

EndClamp arc_clamp(const Arc& a) {
    EndClamp c;
    if (a.start_tangent) c.start = angle_of(*a.start_tangent);
    if (a.end_tangent) c.end = angle_of(*a.end_tangent);
    return c;
}

double arc_abs_turning(const Arc& a) {
    double sum = 0.0;
    for (const auto& v : vertex_curvature(a.curve)) sum += std::abs(v.turning);
    if (!a.curve.closed) {
        if (a.start_tangent) sum += std::abs(turning_angle(*a.start_tangent, a.curve.edge(0)));
        if (a.end_tangent) {
            sum += std::abs(turning_angle(a.curve.edge(a.curve.num_edges() - 1), *a.end_tangent));
        }
    }
    return sum;
}

double loop_diameter(const PiecewiseClosedCurve& loop) {
    Network tmp;
    for (const auto& a : loop.arcs) tmp.curves.push_back(a.curve);
    return network_diameter(tmp);
}

double max_segment(const PiecewiseClosedCurve& loop) {
    double m = 0.0;
    for (const auto& a : loop.arcs) {
        for (std::size_t i = 0; i < a.curve.num_edges(); ++i) m = std::max(m, norm(a.curve.edge(i)));
    }
    return m;
}

double loop_length(const PiecewiseClosedCurve& loop) {
    double l = 0.0;
    for (const auto& a : loop.arcs) l += polyline_length(a.curve);
    return l;
}

double loop_energy(const PiecewiseClosedCurve& loop) {
    double f = 0.0;
    for (const auto& a : loop.arcs) f += elastic_energy(a.curve, arc_clamp(a)) + polyline_length(a.curve);
    return f;
}

}  // namespace

std::size_t corner_count(const PiecewiseClosedCurve& curve) {
    if (curve.arcs.size() == 1 && curve.arcs[0].curve.closed) return 0;
    return curve.arcs.size();
}

std::vector<double> corner_angles(const PiecewiseClosedCurve& curve) {
    std::vector<double> out;
    const std::size_t n = corner_count(curve);
    for (std::size_t i = 0; i < n; ++i) {
        const Arc& a = curve.arcs[i];
        const Arc& b = curve.arcs[(i + 1) % curve.arcs.size()];
        out.push_back(external_angle(unit(arc_end_tangent(a)), unit(arc_start_tangent(b))));
    }
    return out;
}

double closure_gap(const PiecewiseClosedCurve& curve) {
    double gap = 0.0;
    const std::size_t n = corner_count(curve);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = curve.arcs[i].curve.points;
        const auto& b = curve.arcs[(i + 1) % curve.arcs.size()].curve.points;
        gap = std::max(gap, norm(a.back() - b.front()));
    }
    return gap;
}

double total_abs_curvature(const PiecewiseClosedCurve& curve, std::optional<double> tol) {
    if (curve.arcs.empty()) throw Error(ErrorKind::InvalidInput, "loop has no arcs");
    for (const auto& a : curve.arcs) {
        if (a.curve.closed && curve.arcs.size() > 1) {
            throw Error(ErrorKind::InvalidInput, "closed arcs cannot be chained");
        }
        require_regular(a.curve);
    }
    const double d = loop_diameter(curve);
    const double t = tol ? *tol : 1e-9 * (d > 0.0 ? d : 1.0);
    if (closure_gap(curve) > t) {
        throw Error(ErrorKind::InvalidInput, "arcs do not close up within tolerance");
    }
    double sum = 0.0;
    for (const auto& a : curve.arcs) sum += arc_abs_turning(a);
    return sum;
}

BoundCheck gauss_bonnet_check(const PiecewiseClosedCurve& curve) {
    BoundCheck out;
    out.lhs = total_abs_curvature(curve);
    const auto theta = corner_angles(curve);
    double sum_theta = 0.0;
    for (double t : theta) {
        sum_theta += t;
        if (t >= pi - 1e-12) ++out.corners_at_pi;
    }
    out.rhs = 2.0 * pi - sum_theta;
    double total_turning = out.lhs + sum_theta;
    out.slack = total_turning * max_segment(curve);
    out.holds = out.lhs >= out.rhs - 1e-6 - out.slack;
    return out;
}

PiecewiseClosedCurve as_loop(const Network& single) {
    if (single.curves.size() != 1) {
        throw Error(ErrorKind::InvalidInput, "expected a single-curve network");
    }
    return PiecewiseClosedCurve{{Arc{single.curves[0], {}, {}}}};
}

PiecewiseClosedCurve split_at_corners(const DiscreteCurve& closed, double threshold) {
    if (!closed.closed) throw Error(ErrorKind::InvalidInput, "split_at_corners needs a closed curve");
    require_regular(closed);
    const std::size_t n = closed.points.size();
    std::vector<std::size_t> corners;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(turning_angle(closed.edge((i + n - 1) % n), closed.edge(i))) > threshold) {
            corners.push_back(i);
        }
    }
    if (corners.empty()) return PiecewiseClosedCurve{{Arc{closed, {}, {}}}};
    PiecewiseClosedCurve loop;
    for (std::size_t k = 0; k < corners.size(); ++k) {
        const std::size_t a = corners[k];
        const std::size_t b = k + 1 < corners.size() ? corners[k + 1] : corners[0] + n;
        DiscreteCurve arc;
        for (std::size_t i = a; i <= b; ++i) arc.points.push_back(closed.points[i % n]);
        loop.arcs.push_back({arc, {}, {}});
    }
    return loop;
}

BoundCheck drop_bound_check(const Network& drop) {
    if (drop.kind != NetworkKind::Drop) {
        throw Error(ErrorKind::InvalidInput, "drop_bound_check needs a drop");
    }
    const auto loop = as_loop(drop);
    BoundCheck out;
    out.lhs = total_abs_curvature(loop);
    out.rhs = pi;
    const auto theta = corner_angles(loop);
    out.corners_at_pi = static_cast<std::size_t>(std::count_if(
        theta.begin(), theta.end(), [](double t) { return t >= pi - 1e-12; }));
    out.holds = out.lhs >= out.rhs - 1e-9;
    return out;
}

BoundCheck pair_bound_check(const PiecewiseClosedCurve& loop, double tol_ang) {
    const auto theta = corner_angles(loop);
    if (theta.size() != 2) throw Error(ErrorKind::InvalidInput, "pair loop needs exactly two corners");
    for (double t : theta) {
        if (std::abs(t - pi / 3.0) > tol_ang) {
            throw Error(ErrorKind::InvalidInput, "pair loop corners must both be pi/3");
        }
    }
    BoundCheck out;
    out.lhs = total_abs_curvature(loop);
    out.rhs = 4.0 * pi / 3.0;
    out.holds = out.lhs >= out.rhs - 1e-9;
    return out;
}

PiecewiseClosedCurve theta_pair_loop(const Network& theta, std::size_t i, std::size_t j) {
    if (theta.kind != NetworkKind::Theta && theta.kind != NetworkKind::GeneralizedTheta) {
        throw Error(ErrorKind::InvalidInput, "pair loops are built from theta networks");
    }
    if (i >= 3 || j >= 3 || i == j) throw Error(ErrorKind::InvalidInput, "bad curve pair");
    const auto clamps = end_clamps(theta);
    Arc first{theta.curves[i], unit_from_angle(*clamps[i].start), unit_from_angle(*clamps[i].end)};
    Arc second{reversed(theta.curves[j]), -unit_from_angle(*clamps[j].end),
               -unit_from_angle(*clamps[j].start)};
    return PiecewiseClosedCurve{{std::move(first), std::move(second)}};
}

AmGmBound amgm_energy_bound(const PiecewiseClosedCurve& loop, double c) {
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidInput, "c must be positive");
    AmGmBound out;
    const double turning = total_abs_curvature(loop);
    const double length = loop_length(loop);
    out.energy = loop_energy(loop);
    out.intermediate = c * c / length + length;
    out.bound = 2.0 * c;
    out.hypothesis_ok = turning >= c * (1.0 - 1e-12);
    const double tol = 1e-9 * std::max(1.0, out.bound);
    out.holds = out.energy >= out.intermediate - tol && out.intermediate >= out.bound - tol;
    return out;
}

ThetaLowerBound theta_lower_bound_check(const Network& theta, double tol_pos, double tol_ang) {
    if (theta.kind != NetworkKind::Theta) {
        throw Error(ErrorKind::InvalidInput, "theta_lower_bound_check needs a theta network");
    }
    const double d = network_diameter(theta);
    const auto v = validate(theta, tol_pos > 0.0 ? tol_pos : 1e-9 * (d > 0.0 ? d : 1.0), tol_ang);
    if (!v.valid) throw Error(ErrorKind::Validation, "invalid theta network: " + v.message);

    ThetaLowerBound out;
    const auto report = penalized_energy(theta, 1.0);
    out.energy = report.penalized;
    out.bound = 4.0 * pi;
    out.pair_bound = 8.0 * pi / 3.0;
    const std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 1}, {1, 2}, {2, 0}}};
    out.pairs_hold = true;
    double half_sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto [i, j] = pairs[k];
        out.pair_energy[k] = report.per_curve[i].penalized + report.per_curve[j].penalized;
        half_sum += 0.5 * out.pair_energy[k];
        // Each pair closes into a loop with two pi/3 corners.
        const auto loop = theta_pair_loop(theta, i, j);
        const auto pair = pair_bound_check(loop, 1e-9);
        const auto amgm = amgm_energy_bound(loop, pair.rhs);
        out.pairs_hold = out.pairs_hold && pair.holds && amgm.holds &&
                         out.pair_energy[k] >= out.pair_bound - 1e-9;
    }
    out.identity_defect = std::abs(half_sum - out.energy);
    out.holds = out.energy >= out.bound - 1e-9;
    return out;
}

CauchySchwarzCheck turning_cauchy_schwarz(const DiscreteCurve& curve, const EndClamp& clamp) {
    Arc a{curve, {}, {}};
    if (clamp.start) a.start_tangent = unit_from_angle(*clamp.start);
    if (clamp.end) a.end_tangent = unit_from_angle(*clamp.end);
    CauchySchwarzCheck out;
    out.lhs = arc_abs_turning(a);
    out.rhs = std::sqrt(elastic_energy(curve, clamp) * polyline_length(curve));
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-12;
    return out;
}

TangentGapCheck tangent_gap_bound(const DiscreteCurve& curve, const EndClamp& clamp) {
    if (curve.closed) throw Error(ErrorKind::InvalidInput, "tangent gap needs an open curve");
    Arc a{curve, {}, {}};
    if (clamp.start) a.start_tangent = unit_from_angle(*clamp.start);
    if (clamp.end) a.end_tangent = unit_from_angle(*clamp.end);
    TangentGapCheck out;
    out.gap = norm(arc_end_tangent(a) - arc_start_tangent(a));
    const double length = polyline_length(curve);
    const double f = elastic_energy(curve, clamp) + length;
    out.bound = std::sqrt(f * length);
    out.holds = out.gap <= out.bound + 1e-12;
    return out;
}

}  // namespace elastinet
