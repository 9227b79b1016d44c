#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace elastinet {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2& operator+=(const Point2& o) { x += o.x; y += o.y; return *this; }
    Point2& operator-=(const Point2& o) { x -= o.x; y -= o.y; return *this; }
    Point2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend Point2 operator+(Point2 a, const Point2& b) { return a += b; }
    friend Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
    friend Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }
    friend Point2 operator*(Point2 a, double s) { return a *= s; }
    friend Point2 operator*(double s, Point2 a) { return a *= s; }
    friend bool operator==(const Point2&, const Point2&) = default;
};

using Vec2 = Point2;

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }  // counterclockwise quarter turn
inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }
inline double angle_of(const Vec2& a) { return std::atan2(a.y, a.x); }
inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// Signed angle turning `from` into `to`, in (-pi, pi]. Positive is counterclockwise.
inline double turning_angle(const Vec2& from, const Vec2& to) {
    return std::atan2(cross(from, to), dot(from, to));
}

/// Ordered point sequence approximating a regular planar curve.
///
/// Closed curves do not repeat their first point; the edge from the last point
/// back to the first is implicit. Open curves whose endpoints coincide (drops)
/// store the shared point twice.
struct DiscreteCurve {
    std::vector<Point2> points;
    bool closed = false;

    std::size_t num_edges() const {
        if (points.size() < 2) return 0;
        return closed ? points.size() : points.size() - 1;
    }
    Vec2 edge(std::size_t i) const {
        return points[(i + 1) % points.size()] - points[i];
    }
};

/// A curvature sample at one vertex.
struct VertexCurvature {
    std::size_t vertex = 0;
    double turning = 0.0;  // signed turning angle psi_i
    double dual = 0.0;     // (|e_{i-1}| + |e_i|) / 2
    double kappa = 0.0;    // turning / dual
};

/// Throws InvalidCurve unless the curve has >= 2 finite points and no zero-length edge.
void require_regular(const DiscreteCurve& curve);

double polyline_length(const DiscreteCurve& curve);

/// Cumulative arclength at every stored point, starting at 0.
std::vector<double> arclength_positions(const DiscreteCurve& curve);

/// Equally spaced samples in arclength: n+1 points for open curves (endpoints
/// kept), n points for closed curves (first point kept).
DiscreteCurve resample_uniform(const DiscreteCurve& curve, std::size_t n);

/// Like resample_uniform, but the new points lie on a cubic spline through the
/// old ones (periodic when closed, not-a-knot otherwise), so curvature is kept
/// to second order. Spacing is uniform in spline arclength, which makes the
/// edges equal only up to the chord/arc difference.
DiscreteCurve resample_spline(const DiscreteCurve& curve, std::size_t n);

/// One unit tangent per edge.
std::vector<Vec2> edge_tangents(const DiscreteCurve& curve);

/// Turning-angle-over-dual-length curvature at every interior vertex (every
/// vertex when closed). Vertices listed in `corners` are skipped.
std::vector<VertexCurvature> vertex_curvature(const DiscreteCurve& curve,
                                              std::span<const std::size_t> corners = {});

/// Angle in [0, pi] between two unit tangents.
double external_angle(const Vec2& tangent_in, const Vec2& tangent_out);

/// Sum of signed turning angles over the vertices reported by vertex_curvature.
double total_turning(const DiscreteCurve& curve);

/// Second-order estimate of the unit tangent at the first (or last) point of an
/// open curve: the first edge direction rotated back by half the next turning.
Vec2 start_tangent_estimate(const DiscreteCurve& curve);
Vec2 end_tangent_estimate(const DiscreteCurve& curve);

DiscreteCurve reversed(const DiscreteCurve& curve);
DiscreteCurve transformed(const DiscreteCurve& curve, double rotation, const Point2& translation,
                          double scale = 1.0);

}  // namespace elastinet
