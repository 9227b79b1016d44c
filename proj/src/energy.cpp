#include "elastinet/energy.hpp"

#include <algorithm>
#include <cmath>

#include "elastinet/error.hpp"

namespace elastinet {

namespace {

// psi^2 / dual and its derivatives with respect to psi and dual.
struct VertexTerm {
    double value;
    double d_psi;
    double d_dual;
};

VertexTerm vertex_term(double psi, double dual) {
    return {psi * psi / dual, 2.0 * psi / dual, -psi * psi / (dual * dual)};
}

// d(angle of e)/de
Vec2 angle_gradient(const Vec2& e) {
    const double l2 = dot(e, e);
    return perp(e) * (1.0 / l2);
}

}  // namespace

double elastic_energy(const DiscreteCurve& curve, const EndClamp& clamp) {
    require_regular(curve);
    double e = 0.0;
    for (const auto& v : vertex_curvature(curve)) e += v.turning * v.turning / v.dual;
    if (!curve.closed) {
        const std::size_t ne = curve.num_edges();
        if (clamp.start) {
            const Vec2 e0 = curve.edge(0);
            const double psi = turning_angle(unit_from_angle(*clamp.start), e0);
            e += psi * psi / (0.5 * norm(e0));
        }
        if (clamp.end) {
            const Vec2 el = curve.edge(ne - 1);
            const double psi = turning_angle(el, unit_from_angle(*clamp.end));
            e += psi * psi / (0.5 * norm(el));
        }
    }
    return e;
}

double curve_energy_gradient(const DiscreteCurve& curve, const EndClamp& clamp, double alpha,
                             std::span<Vec2> grad_points, double* grad_start, double* grad_end) {
    require_regular(curve);
    const auto& p = curve.points;
    const std::size_t np = p.size();
    const std::size_t ne = curve.num_edges();

    std::vector<Vec2> edges(ne);
    std::vector<double> lens(ne);
    for (std::size_t i = 0; i < ne; ++i) {
        edges[i] = curve.edge(i);
        lens[i] = norm(edges[i]);
    }
    // Gradient with respect to edge vectors, scattered to points at the end.
    std::vector<Vec2> ge(ne);

    double energy = 0.0;
    for (std::size_t i = 0; i < ne; ++i) {
        energy += alpha * lens[i];
        ge[i] += edges[i] * (alpha / lens[i]);
    }

    auto add_vertex = [&](std::size_t ein, std::size_t eout) {
        const double psi = turning_angle(edges[ein], edges[eout]);
        const double dual = 0.5 * (lens[ein] + lens[eout]);
        const VertexTerm t = vertex_term(psi, dual);
        energy += t.value;
        ge[eout] += angle_gradient(edges[eout]) * t.d_psi;
        ge[ein] -= angle_gradient(edges[ein]) * t.d_psi;
        ge[eout] += edges[eout] * (0.5 * t.d_dual / lens[eout]);
        ge[ein] += edges[ein] * (0.5 * t.d_dual / lens[ein]);
    };

    if (curve.closed) {
        for (std::size_t i = 0; i < np; ++i) add_vertex((i + ne - 1) % ne, i);
    } else {
        for (std::size_t i = 1; i + 1 < np; ++i) add_vertex(i - 1, i);
        if (clamp.start) {
            const double psi = turning_angle(unit_from_angle(*clamp.start), edges[0]);
            const VertexTerm t = vertex_term(psi, 0.5 * lens[0]);
            energy += t.value;
            ge[0] += angle_gradient(edges[0]) * t.d_psi;
            ge[0] += edges[0] * (0.5 * t.d_dual / lens[0]);
            if (grad_start) *grad_start += -t.d_psi;
        }
        if (clamp.end) {
            const std::size_t l = ne - 1;
            const double psi = turning_angle(edges[l], unit_from_angle(*clamp.end));
            const VertexTerm t = vertex_term(psi, 0.5 * lens[l]);
            energy += t.value;
            ge[l] -= angle_gradient(edges[l]) * t.d_psi;
            ge[l] += edges[l] * (0.5 * t.d_dual / lens[l]);
            if (grad_end) *grad_end += t.d_psi;
        }
    }

    if (!grad_points.empty()) {
        for (std::size_t i = 0; i < ne; ++i) {
            grad_points[(i + 1) % np] += ge[i];
            grad_points[i] -= ge[i];
        }
    }
    return energy;
}

EnergyReport penalized_energy(const Network& network, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::InvalidConfig, "alpha must be positive");
    }
    const auto clamps = end_clamps(network);
    const double diameter = network_diameter(network);
    EnergyReport report;
    report.alpha = alpha;
    for (std::size_t c = 0; c < network.curves.size(); ++c) {
        const auto& curve = network.curves[c];
        CurveEnergy ce;
        ce.length = polyline_length(curve);
        if (ce.length < 1e-12 * diameter) {
            ce.degenerate = true;
            ce.length = 0.0;
        } else {
            ce.elastic = elastic_energy(curve, clamps[c]);
        }
        ce.penalized = ce.elastic + alpha * ce.length;
        report.length += ce.length;
        report.elastic += ce.elastic;
        report.per_curve.push_back(ce);
    }
    report.penalized = report.elastic + alpha * report.length;
    return report;
}

double scaling_identity_check(const Network& network, double alpha) {
    const double f1 = penalized_energy(network, 1.0).penalized;
    const double s = 1.0 / std::sqrt(alpha);
    const double fa = penalized_energy(scaled(network, s), alpha).penalized;
    return std::abs(f1 - s * fa);
}

Rescaling optimal_rescale(const Network& network) {
    const EnergyReport r = penalized_energy(network, 1.0);
    if (!(r.elastic > 0.0)) {
        throw Error(ErrorKind::NoOptimalRescale, "network has zero elastic energy");
    }
    if (!(r.length > 0.0)) {
        throw Error(ErrorKind::NoOptimalRescale, "network has zero length");
    }
    Rescaling out;
    out.factor = std::sqrt(r.elastic / r.length);
    out.rescaled = scaled(network, out.factor);
    return out;
}

double equipartition_defect(const Network& network) {
    const EnergyReport r = penalized_energy(network, 1.0);
    const double m = std::max(r.elastic, r.length);
    return m > 0.0 ? std::abs(r.elastic - r.length) / m : 0.0;
}

}  // namespace elastinet
