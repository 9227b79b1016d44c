#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "elastinet/geometry.hpp"

namespace elastinet {

enum class NetworkKind {
    Closed,
    Drop,
    Theta,
    DegenerateTheta,
    GeneralizedTheta,
    DoubleDrop,  // two drops sharing a four-point, no angle condition
};

const char* to_string(NetworkKind kind);
NetworkKind network_kind_from_string(const std::string& name);

/// Triple junction (or four-point for degenerate networks).
///
/// The outgoing tangent of every incident curve end is
/// `frame_angle + orientation * offset`, where the offsets depend on the
/// network kind: {0, 2pi/3, 4pi/3} for theta, {0, a1, a1 + a2} for generalized
/// theta, and a pairing of the two lines crossing at 60 degrees for degenerate
/// networks.
struct Junction {
    Point2 position;
    double frame_angle = 0.0;
    int orientation = 1;  // +1 counterclockwise slot order, -1 clockwise
    int pairing = 0;      // degenerate four-points only, see four_point_offsets()
};

struct Network {
    NetworkKind kind = NetworkKind::Closed;
    std::vector<DiscreteCurve> curves;
    std::vector<Junction> junctions;
    std::array<double, 3> angles{};  // generalized theta only
};

/// One curve end attached to a junction.
struct EndSlot {
    std::size_t curve = 0;
    bool at_start = true;
    std::size_t junction = 0;
    double offset = 0.0;     // relative to the junction frame, before orientation
    double direction = 0.0;  // outgoing tangent angle
};

/// Prescribed forward tangent angles at the ends of one curve.
struct EndClamp {
    std::optional<double> start;
    std::optional<double> end;
};

/// Slot offsets of the four-point for a degenerate theta network, ordered
/// {curve0 start, curve0 end, curve1 start, curve1 end}. Pairing 0: each drop
/// spans a 60 degree sector (figure-eight crossing); 1: each drop spans a 120
/// degree sector; 2: each drop passes straight through the four-point.
std::array<double, 4> four_point_offsets(int pairing);

std::vector<EndSlot> end_slots(const Network& network);
std::vector<EndClamp> end_clamps(const Network& network);

/// Point about which rescaling acts: the first junction, or the first point.
Point2 network_anchor(const Network& network);
double network_diameter(const Network& network);

Network scaled(const Network& network, double factor);
Network rigidly_moved(const Network& network, double rotation, const Point2& translation);

/// Structural checks (curve and junction counts, angle sums). Throws Validation.
void check_structure(const Network& network);

struct ValidationReport {
    bool valid = false;
    double junction_gap = 0.0;
    double angle_defect = 0.0;
    std::string message;
};

inline constexpr double default_angle_tolerance = 1e-6;

ValidationReport validate(const Network& network, double tol_pos, double tol_ang);
/// Default tolerances: 1e-9 * diameter and 1e-6 rad.
ValidationReport validate(const Network& network);

/// Re-estimates the frame angle (and orientation) of every junction from the
/// curve data.
void fit_frames(Network& network);

// Reference constructions.

Network make_circle(double radius, std::size_t n);
Network make_ellipse(double a, double b, std::size_t n);
/// Drop built from the classic teardrop x = cos t, y = sin t sin(t/2), with its
/// corner moved to the origin.
Network make_teardrop(std::size_t n, double size = 1.5);
/// Two arcs of circle joined by a segment of length `chord` (curve 2), meeting
/// with angles a1 (curves 1,2) and a2 (curves 2,3). First junction at the
/// origin, segment along the negative x axis. Requires a1, a2 in (0, pi].
Network make_generalized_bubble(double a1, double a2, double chord, std::size_t n);
/// Standard double bubble of arc radius r in the normalized frame:
/// first junction at the origin with tangents (1/2, sqrt3/2), (-1, 0), (1/2, -sqrt3/2).
Network make_standard_double_bubble(double r, std::size_t n);
/// sqrt(8 pi / (3 sqrt3 + 8 pi)).
double optimal_bubble_radius();
/// Closed form (2/3) sqrt(8 pi (8 pi + 3 sqrt3)).
double double_bubble_energy_constant();

/// Degenerate theta shaped like a figure eight: two point-symmetric drops
/// through the origin, first tangent at 60 degrees, each lobe with a horizontal
/// apex edge of length `apex_edge`. `n_half` edges per half lobe.
Network make_figure_eight_degenerate(std::size_t n_half, double apex_edge = 1e-4,
                                     double lobe_length = 5.3);

/// Closed figure-eight curve (lemniscate of Gerono), one self-crossing.
Network make_figure_eight_curve(std::size_t n);

/// Energy of the optimally rescaled two-arc generalized bubble.
double generalized_bubble_energy(double a1, double a2);

// JSON document <-> network.

std::string serialize(const Network& network, int indent = 2);
Network deserialize(const std::string& text);

}  // namespace elastinet
