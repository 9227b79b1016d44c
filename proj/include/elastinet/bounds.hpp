#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "elastinet/geometry.hpp"
#include "elastinet/network.hpp"

namespace elastinet {

/// Smooth piece of a piecewise closed curve. When a tangent is prescribed at
/// an end, the turning between it and the end edge counts as curvature of the
/// arc; otherwise the end edge direction is the one-sided tangent.
struct Arc {
    DiscreteCurve curve;
    std::optional<Vec2> start_tangent;
    std::optional<Vec2> end_tangent;
};

/// Arcs chained head to tail, the last closing onto the first. A single closed
/// arc has no corners; otherwise there is one corner per arc junction.
struct PiecewiseClosedCurve {
    std::vector<Arc> arcs;
};

std::size_t corner_count(const PiecewiseClosedCurve& curve);
/// External angles theta_i in [0, pi]; corner i sits between arc i and arc i+1.
std::vector<double> corner_angles(const PiecewiseClosedCurve& curve);
/// Largest distance between the end of an arc and the start of the next.
double closure_gap(const PiecewiseClosedCurve& curve);

/// Sum over arcs of |psi_i| (= |kappa_i| l_i); corners excluded.
/// Throws InvalidInput when the closure gap exceeds `tol` (default 1e-9 * diameter).
double total_abs_curvature(const PiecewiseClosedCurve& curve, std::optional<double> tol = {});

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // allowance subtracted from rhs before comparing
    bool holds = false;
    std::size_t corners_at_pi = 0;
};

/// lhs = integral |k|, rhs = 2pi - sum theta_i, holds when lhs >= rhs - 1e-6 - slack
/// with slack = (total |turning|) * (max segment length).
BoundCheck gauss_bonnet_check(const PiecewiseClosedCurve& curve);

/// Drop as a one-corner loop: integral |k| >= pi.
BoundCheck drop_bound_check(const Network& drop);

/// Two-corner loop with both corners pi/3: integral |k| >= 4pi/3.
BoundCheck pair_bound_check(const PiecewiseClosedCurve& loop, double tol_ang = default_angle_tolerance);

/// Loop formed by curve i of a theta network followed by curve j reversed,
/// carrying the junction frame tangents at its ends.
PiecewiseClosedCurve theta_pair_loop(const Network& theta, std::size_t i, std::size_t j);
/// Drop (or closed curve) as a piecewise closed curve.
PiecewiseClosedCurve as_loop(const Network& single);

/// Closed polygon cut into arcs at every vertex turning by more than
/// `threshold` radians; those vertices become corners.
PiecewiseClosedCurve split_at_corners(const DiscreteCurve& closed, double threshold);

struct AmGmBound {
    double energy = 0.0;         // F = E + L of the loop
    double intermediate = 0.0;   // c^2 / L + L
    double bound = 0.0;          // 2c
    bool hypothesis_ok = false;  // integral |k| >= c
    bool holds = false;
};

AmGmBound amgm_energy_bound(const PiecewiseClosedCurve& loop, double c);

struct ThetaLowerBound {
    double energy = 0.0;
    double bound = 0.0;                // 4 pi
    std::array<double, 3> pair_energy{};  // F(G_12), F(G_23), F(G_31)
    double pair_bound = 0.0;           // 8 pi / 3
    double identity_defect = 0.0;      // |(F12 + F23 + F31)/2 - F|
    bool pairs_hold = false;
    bool holds = false;
};

ThetaLowerBound theta_lower_bound_check(const Network& theta, double tol_pos = -1.0,
                                        double tol_ang = default_angle_tolerance);

struct CauchySchwarzCheck {
    double lhs = 0.0;  // integral |k|
    double rhs = 0.0;  // sqrt(E L)
    bool holds = false;
};

CauchySchwarzCheck turning_cauchy_schwarz(const DiscreteCurve& curve, const EndClamp& clamp = {});

struct TangentGapCheck {
    double gap = 0.0;    // |tau(1) - tau(0)|
    double bound = 0.0;  // sqrt(F L)
    bool holds = false;
};

TangentGapCheck tangent_gap_bound(const DiscreteCurve& curve, const EndClamp& clamp = {});

}  // namespace elastinet
