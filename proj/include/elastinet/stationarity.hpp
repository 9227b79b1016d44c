#pragma once

#include <string>
#include <vector>

#include "elastinet/geometry.hpp"
#include "elastinet/network.hpp"

namespace elastinet {

/// Residuals of 2 k_ss + k^3 - k along one curve.
struct CurveResidual {
    std::vector<std::size_t> vertices;
    std::vector<double> values;
};

/// Curvature k and its arclength derivative at a curve end, from the quadratic
/// through the three nearest vertex curvatures.
struct EndCurvature {
    double k = 0.0;
    double dk = 0.0;
};

struct ResidualReport {
    std::vector<CurveResidual> interior;
    double interior_max_abs = 0.0;
    std::vector<double> junction_scalar;  // sum_i k^i per junction
    std::vector<Vec2> junction_vector;    // sum_i (2 k^i_s nu^i + (k^i)^2 tau^i) per junction
};

/// Needs at least 8 points. Boundary vertices of open curves are excluded.
CurveResidual el_residual(const DiscreteCurve& curve);

EndCurvature end_curvature(const DiscreteCurve& curve, bool at_start);

/// Interior residuals for every curve plus junction conditions for theta and
/// generalized theta networks (empty junction lists otherwise).
ResidualReport junction_residuals(const Network& network);

struct AuditThresholds {
    double interior = 1e-2;
    double junction = 1e-2;
};

struct CriticalityAudit {
    bool pass = false;
    ResidualReport report;
    std::string reason;
};

CriticalityAudit criticality_audit(const Network& network, const AuditThresholds& thresholds = {});

}  // namespace elastinet
