#include "elastinet/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "elastinet/error.hpp"

namespace elastinet {

CurveResidual el_residual(const DiscreteCurve& curve) {
    if (curve.points.size() < 8) {
        throw Error(ErrorKind::InvalidInput, "el_residual needs at least 8 points");
    }
    const auto kv = vertex_curvature(curve);
    const auto s = arclength_positions(curve);
    const double total = polyline_length(curve);
    const std::size_t m = kv.size();

    CurveResidual out;
    auto position = [&](std::size_t idx) { return s[kv[idx].vertex]; };
    const std::size_t first = curve.closed ? 0 : 1;
    const std::size_t last = curve.closed ? m : m - 1;
    for (std::size_t i = first; i < last; ++i) {
        const std::size_t a = (i + m - 1) % m;
        const std::size_t b = (i + 1) % m;
        double h1 = position(i) - position(a);
        double h2 = position(b) - position(i);
        if (h1 <= 0.0) h1 += total;
        if (h2 <= 0.0) h2 += total;
        const double k = kv[i].kappa;
        const double kss = 2.0 * ((kv[b].kappa - k) / h2 - (k - kv[a].kappa) / h1) / (h1 + h2);
        out.vertices.push_back(kv[i].vertex);
        out.values.push_back(2.0 * kss + k * k * k - k);
    }
    return out;
}

EndCurvature end_curvature(const DiscreteCurve& curve, bool at_start) {
    if (curve.closed || curve.points.size() < 5) {
        throw Error(ErrorKind::InvalidInput, "end curvature needs an open curve with >= 5 points");
    }
    const auto kv = vertex_curvature(curve);
    const auto s = arclength_positions(curve);
    const std::size_t m = kv.size();
    double x[3], y[3];
    const double s_end = at_start ? 0.0 : s.back();
    for (std::size_t j = 0; j < 3; ++j) {
        const auto& v = at_start ? kv[j] : kv[m - 1 - j];
        x[j] = s[v.vertex] - s_end;
        y[j] = v.kappa;
    }
    // Lagrange quadratic through (x_j, y_j), value and slope at 0.
    EndCurvature out;
    for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t a = (j + 1) % 3, b = (j + 2) % 3;
        const double denom = (x[j] - x[a]) * (x[j] - x[b]);
        out.k += y[j] * (x[a] * x[b]) / denom;
        out.dk += y[j] * (-(x[a] + x[b])) / denom;
    }
    return out;
}

ResidualReport junction_residuals(const Network& network) {
    ResidualReport report;
    for (const auto& c : network.curves) {
        report.interior.push_back(el_residual(c));
        for (double r : report.interior.back().values) {
            report.interior_max_abs = std::max(report.interior_max_abs, std::abs(r));
        }
    }
    if (network.kind != NetworkKind::Theta && network.kind != NetworkKind::GeneralizedTheta) {
        return report;
    }
    report.junction_scalar.assign(network.junctions.size(), 0.0);
    report.junction_vector.assign(network.junctions.size(), Vec2{});
    for (const auto& slot : end_slots(network)) {
        const auto& curve = network.curves[slot.curve];
        const EndCurvature ec = end_curvature(curve, slot.at_start);
        // Forward tangent of the curve at this end.
        Vec2 tau = unit_from_angle(slot.direction);
        if (!slot.at_start) tau = -tau;
        const Vec2 nu = perp(tau);
        report.junction_scalar[slot.junction] += ec.k;
        report.junction_vector[slot.junction] += nu * (2.0 * ec.dk) + tau * (ec.k * ec.k);
    }
    return report;
}

CriticalityAudit criticality_audit(const Network& network, const AuditThresholds& thresholds) {
    CriticalityAudit audit;
    audit.report = junction_residuals(network);
    std::ostringstream why;
    bool pass = true;
    if (audit.report.interior_max_abs > thresholds.interior) {
        pass = false;
        why << "interior residual " << audit.report.interior_max_abs << " exceeds "
            << thresholds.interior << "; ";
    }
    for (std::size_t j = 0; j < audit.report.junction_scalar.size(); ++j) {
        const double sc = std::abs(audit.report.junction_scalar[j]);
        const double vn = norm(audit.report.junction_vector[j]);
        if (sc > thresholds.junction) {
            pass = false;
            why << "junction " << j << " curvature sum " << sc << "; ";
        }
        if (vn > thresholds.junction) {
            pass = false;
            why << "junction " << j << " nonzero junction_vector |" << vn << "|; ";
        }
    }
    audit.pass = pass;
    audit.reason = pass ? "critical within thresholds" : why.str();
    return audit;
}

}  // namespace elastinet
