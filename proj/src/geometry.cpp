#include "elastinet/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "elastinet/error.hpp"

namespace elastinet {

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

void require_regular(const DiscreteCurve& curve) {
    if (curve.points.size() < 2) {
        throw Error(ErrorKind::InvalidCurve, "curve needs at least 2 points");
    }
    for (const auto& p : curve.points) {
        if (!is_finite(p)) throw Error(ErrorKind::InvalidCurve, "non-finite coordinate");
    }
    for (std::size_t i = 0; i < curve.num_edges(); ++i) {
        if (norm(curve.edge(i)) == 0.0) {
            throw Error(ErrorKind::InvalidCurve,
                        "zero-length edge at vertex " + std::to_string(i));
        }
    }
}

double polyline_length(const DiscreteCurve& curve) {
    if (curve.points.size() < 2) {
        throw Error(ErrorKind::InvalidCurve, "curve needs at least 2 points");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < curve.num_edges(); ++i) total += norm(curve.edge(i));
    return total;
}

std::vector<double> arclength_positions(const DiscreteCurve& curve) {
    std::vector<double> s(curve.points.size(), 0.0);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        s[i] = s[i - 1] + norm(curve.points[i] - curve.points[i - 1]);
    }
    return s;
}

namespace {

// Walks a polyline placing points at a fixed chord distance from each other.
struct ChordMarch {
    std::vector<Point2> poly;  // closed curves repeat their first point at the end

    // Next position after (e, u) whose distance from `from` first reaches c.
    bool step(std::size_t& e, double& u, const Point2& from, double c, Point2& out) const {
        for (; e + 1 < poly.size(); ++e, u = 0.0) {
            const Vec2 d = poly[e + 1] - poly[e];
            const double dd = dot(d, d);
            if (dd == 0.0) continue;
            const Vec2 w = poly[e] - from;
            const double b = dot(w, d), cc = dot(w, w) - c * c;
            const double disc = b * b - dd * cc;
            if (disc < 0.0) continue;
            const double root = (-b + std::sqrt(disc)) / dd;
            if (root >= u && root <= 1.0) {
                u = root;
                out = poly[e] + d * root;
                return true;
            }
        }
        return false;
    }

    // Places count points after the first; empty when the polyline runs out.
    std::vector<Point2> run(double c, std::size_t count) const {
        std::vector<Point2> pts{poly.front()};
        std::size_t e = 0;
        double u = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            Point2 next;
            if (!step(e, u, pts.back(), c, next)) return {};
            pts.push_back(next);
        }
        return pts;
    }

    // Positive while the last chord is still longer than c.
    double defect(double c, std::size_t n) const {
        const auto pts = run(c, n - 1);
        if (pts.empty()) return -c;
        return norm(poly.back() - pts.back()) - c;
    }
};

}  // namespace

DiscreteCurve resample_uniform(const DiscreteCurve& curve, std::size_t n) {
    if (n < 3) throw Error(ErrorKind::InvalidInput, "resample_uniform needs n >= 3");
    const double total = polyline_length(curve);
    if (!(total > 0.0)) throw Error(ErrorKind::InvalidCurve, "zero-length curve");

    // Equal chords rather than equal arclength, so every output edge has the
    // same length and resampling is idempotent.
    ChordMarch march{curve.points};
    if (curve.closed) march.poly.push_back(curve.points.front());

    double lo = 0.0, hi = total / static_cast<double>(n - 1);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * total; ++it) {
        const double mid = 0.5 * (lo + hi);
        (march.defect(mid, n) > 0.0 ? lo : hi) = mid;
    }
    auto pts = march.run(lo, n - 1);
    if (pts.empty()) throw Error(ErrorKind::InvalidCurve, "resampling did not converge");

    DiscreteCurve out;
    out.closed = curve.closed;
    out.points = std::move(pts);
    if (!curve.closed) out.points.push_back(curve.points.back());
    return out;
}

namespace {

// Cubic spline through (t_i, y_i) in the second-derivative form.
struct Spline {
    std::vector<double> t;
    std::vector<Point2> y;
    std::vector<Point2> m;

    Point2 eval(std::size_t i, double u) const {
        const double h = t[i + 1] - t[i];
        const double a = h - u;
        return m[i] * (a * a * a / (6.0 * h)) + m[i + 1] * (u * u * u / (6.0 * h)) +
               (y[i] * (1.0 / h) - m[i] * (h / 6.0)) * a + (y[i + 1] * (1.0 / h) - m[i + 1] * (h / 6.0)) * u;
    }
};

Spline fit_spline(const DiscreteCurve& curve) {
    Spline s;
    s.y = curve.points;
    if (curve.closed) s.y.push_back(curve.points.front());
    const std::size_t m = s.y.size() - 1;  // intervals
    s.t.assign(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) s.t[i + 1] = s.t[i] + norm(s.y[i + 1] - s.y[i]);
    std::vector<double> h(m);
    for (std::size_t i = 0; i < m; ++i) h[i] = s.t[i + 1] - s.t[i];

    // Unknowns: M_0..M_{m-1} when closed (M_m = M_0), M_0..M_m otherwise.
    const std::size_t nu = curve.closed ? m : m + 1;
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<long>(nu), 2);
    auto idx = [&](std::size_t i) { return static_cast<int>(curve.closed ? i % m : i); };
    auto row = [&](std::size_t i) {
        const std::size_t ip = curve.closed ? (i + m - 1) % m : i - 1;
        const double hp = h[ip], hn = h[i % m];
        const int r = idx(i);
        trip.emplace_back(r, idx(curve.closed ? ip : i - 1), hp);
        trip.emplace_back(r, r, 2.0 * (hp + hn));
        trip.emplace_back(r, idx(i + 1), hn);
        const Vec2 d = (s.y[i + 1] - s.y[i]) * (1.0 / hn) - (s.y[ip + 1] - s.y[ip]) * (1.0 / hp);
        rhs(r, 0) = 6.0 * d.x;
        rhs(r, 1) = 6.0 * d.y;
    };
    if (curve.closed) {
        for (std::size_t i = 0; i < m; ++i) row(i);
    } else {
        for (std::size_t i = 1; i < m; ++i) row(i);
        // Not-a-knot: third derivative continuous at the second and last-but-one knots.
        trip.emplace_back(0, 0, h[1]);
        trip.emplace_back(0, 1, -(h[0] + h[1]));
        trip.emplace_back(0, 2, h[0]);
        const int l = static_cast<int>(m);
        trip.emplace_back(l, l - 2, h[m - 1]);
        trip.emplace_back(l, l - 1, -(h[m - 2] + h[m - 1]));
        trip.emplace_back(l, l, h[m - 2]);
    }
    Eigen::SparseMatrix<double> a(static_cast<long>(nu), static_cast<long>(nu));
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw Error(ErrorKind::InvalidCurve, "spline system is singular");
    const Eigen::MatrixXd sol = lu.solve(rhs);
    s.m.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const auto r = static_cast<long>(curve.closed ? i % m : i);
        s.m[i] = {sol(r, 0), sol(r, 1)};
    }
    return s;
}

}  // namespace

DiscreteCurve resample_spline(const DiscreteCurve& curve, std::size_t n) {
    if (n < 3) throw Error(ErrorKind::InvalidInput, "resample_spline needs n >= 3");
    require_regular(curve);
    const std::size_t intervals = curve.num_edges();
    if (intervals < 3) return resample_uniform(curve, n);
    const Spline s = fit_spline(curve);

    // Arclength table on a fine subdivision of every interval.
    constexpr std::size_t sub = 16;
    std::vector<std::pair<std::size_t, double>> where;  // interval, offset
    std::vector<double> arc;
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < intervals; ++i) {
        const double h = s.t[i + 1] - s.t[i];
        for (std::size_t k = 0; k < sub; ++k) {
            where.emplace_back(i, h * static_cast<double>(k) / sub);
            pts.push_back(s.eval(i, where.back().second));
        }
    }
    where.emplace_back(intervals - 1, s.t[intervals] - s.t[intervals - 1]);
    pts.push_back(s.y.back());
    arc.assign(pts.size(), 0.0);
    for (std::size_t k = 1; k < pts.size(); ++k) arc[k] = arc[k - 1] + norm(pts[k] - pts[k - 1]);
    const double total = arc.back();

    DiscreteCurve out;
    out.closed = curve.closed;
    out.points.push_back(curve.points.front());
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j) {
        const double target = total * static_cast<double>(j) / static_cast<double>(n);
        while (k + 2 < arc.size() && arc[k + 1] < target) ++k;
        const double w = std::clamp((target - arc[k]) / (arc[k + 1] - arc[k]), 0.0, 1.0);
        const std::size_t i = where[k].first;
        const double u0 = where[k].second;
        const double u1 = where[k + 1].first == i ? where[k + 1].second : s.t[i + 1] - s.t[i];
        out.points.push_back(s.eval(i, u0 + w * (u1 - u0)));
    }
    if (!curve.closed) out.points.push_back(curve.points.back());
    return out;
}

std::vector<Vec2> edge_tangents(const DiscreteCurve& curve) {
    std::vector<Vec2> tangents;
    tangents.reserve(curve.num_edges());
    for (std::size_t i = 0; i < curve.num_edges(); ++i) {
        const Vec2 e = curve.edge(i);
        const double len = norm(e);
        if (len == 0.0) {
            throw Error(ErrorKind::InvalidCurve, "zero-length edge at vertex " + std::to_string(i));
        }
        tangents.push_back(e * (1.0 / len));
    }
    return tangents;
}

std::vector<VertexCurvature> vertex_curvature(const DiscreteCurve& curve,
                                              std::span<const std::size_t> corners) {
    require_regular(curve);
    const std::size_t np = curve.points.size();
    const std::size_t first = curve.closed ? 0 : 1;
    const std::size_t last = curve.closed ? np : np - 1;  // exclusive
    std::vector<VertexCurvature> out;
    out.reserve(last > first ? last - first : 0);
    for (std::size_t i = first; i < last; ++i) {
        if (std::find(corners.begin(), corners.end(), i) != corners.end()) continue;
        const Vec2 e_in = curve.points[i] - curve.points[(i + np - 1) % np];
        const Vec2 e_out = curve.points[(i + 1) % np] - curve.points[i];
        VertexCurvature v;
        v.vertex = i;
        v.turning = turning_angle(e_in, e_out);
        v.dual = 0.5 * (norm(e_in) + norm(e_out));
        v.kappa = v.turning / v.dual;
        out.push_back(v);
    }
    return out;
}

double external_angle(const Vec2& tangent_in, const Vec2& tangent_out) {
    constexpr double tol = 1e-6;
    if (std::abs(norm(tangent_in) - 1.0) > tol || std::abs(norm(tangent_out) - 1.0) > tol) {
        throw Error(ErrorKind::InvalidInput, "external_angle expects unit tangents");
    }
    return std::acos(std::clamp(dot(tangent_in, tangent_out), -1.0, 1.0));
}

double total_turning(const DiscreteCurve& curve) {
    double sum = 0.0;
    for (const auto& v : vertex_curvature(curve)) sum += v.turning;
    return sum;
}

namespace {

Vec2 end_estimate(const Point2& a, const Point2& b, const Point2& c) {
    // Edge directions are midpoint samples of the tangent angle; extrapolate
    // linearly from the two nearest ones to the endpoint a.
    const Vec2 e0 = b - a;
    const Vec2 e1 = c - b;
    const double phi = angle_of(e0) - 0.5 * turning_angle(e0, e1);
    return unit_from_angle(phi);
}

}  // namespace

Vec2 start_tangent_estimate(const DiscreteCurve& curve) {
    require_regular(curve);
    const auto& p = curve.points;
    if (p.size() < 3) return curve.edge(0) * (1.0 / norm(curve.edge(0)));
    return end_estimate(p[0], p[1], p[2]);
}

Vec2 end_tangent_estimate(const DiscreteCurve& curve) {
    require_regular(curve);
    const auto& p = curve.points;
    const std::size_t n = p.size();
    if (n < 3) return curve.edge(0) * (1.0 / norm(curve.edge(0)));
    return -end_estimate(p[n - 1], p[n - 2], p[n - 3]);
}

DiscreteCurve reversed(const DiscreteCurve& curve) {
    DiscreteCurve out = curve;
    std::reverse(out.points.begin(), out.points.end());
    return out;
}

DiscreteCurve transformed(const DiscreteCurve& curve, double rotation, const Point2& translation,
                          double scale) {
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    DiscreteCurve out = curve;
    for (auto& p : out.points) {
        const Point2 q{c * p.x - s * p.y, s * p.x + c * p.y};
        p = q * scale + translation;
    }
    return out;
}

}  // namespace elastinet
