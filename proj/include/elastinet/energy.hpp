#pragma once

#include <span>
#include <vector>

#include "elastinet/geometry.hpp"
#include "elastinet/network.hpp"

namespace elastinet {

struct CurveEnergy {
    double length = 0.0;
    double elastic = 0.0;
    double penalized = 0.0;
    bool degenerate = false;  // length below 1e-12 * diameter, contributes nothing
};

struct EnergyReport {
    double length = 0.0;
    double elastic = 0.0;
    double penalized = 0.0;
    double alpha = 1.0;
    std::vector<CurveEnergy> per_curve;
};

/// Discrete bending energy sum psi_i^2 / l_i.
///
/// Interior vertices always contribute. A clamped end contributes the turning
/// from the prescribed tangent into the end edge over half that edge; a free
/// end (drop closure, corner) contributes nothing.
double elastic_energy(const DiscreteCurve& curve, const EndClamp& clamp = {});

/// Energy and its gradient. `grad_points` must have one entry per point and is
/// accumulated into; `grad_start`/`grad_end` receive d/d(clamp angle).
double curve_energy_gradient(const DiscreteCurve& curve, const EndClamp& clamp, double alpha,
                             std::span<Vec2> grad_points, double* grad_start, double* grad_end);

EnergyReport penalized_energy(const Network& network, double alpha = 1.0);

/// |F_1(G) - alpha^{-1/2} F_alpha(alpha^{-1/2} G)|.
double scaling_identity_check(const Network& network, double alpha);

struct Rescaling {
    double factor = 1.0;
    Network rescaled;
};

/// Dilation by sqrt(E/L) about the network anchor.
Rescaling optimal_rescale(const Network& network);

/// |E - L| / max(E, L).
double equipartition_defect(const Network& network);

}  // namespace elastinet
