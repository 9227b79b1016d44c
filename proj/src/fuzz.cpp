#include "elastinet/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elastinet/minimizer.hpp"

namespace elastinet {

namespace {

constexpr double pi = std::numbers::pi;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

// Random radius function 1 + sum a_m cos(m phi + b_m), bounded below by 0.6.
struct Radial {
    double a[4]{};
    double b[4]{};
    double operator()(double phi) const {
        double r = 1.0;
        for (int m = 0; m < 4; ++m) r += a[m] * std::cos((m + 2) * phi + b[m]);
        return r;
    }
};

Radial random_radial(Rng& rng, double amplitude) {
    Radial r;
    for (int m = 0; m < 4; ++m) {
        r.a[m] = uniform(rng, -amplitude, amplitude);
        r.b[m] = uniform(rng, 0.0, 2.0 * pi);
    }
    return r;
}

Point2 polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }

Network random_rigid(Rng& rng, const Network& net) {
    return rigidly_moved(net, uniform(rng, -pi, pi), {uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)});
}

}  // namespace

void perturb_interior(DiscreteCurve& curve, Rng& rng, double amplitude, std::size_t first,
                      std::size_t last) {
    const std::size_t np = curve.points.size();
    if (last >= np || first >= last) return;
    const double c1 = uniform(rng, -1.0, 1.0), c2 = uniform(rng, -0.5, 0.5), c3 = uniform(rng, -0.3, 0.3);
    const auto old = curve.points;
    for (std::size_t i = first; i <= last; ++i) {
        const double u = static_cast<double>(i - first) / static_cast<double>(last - first);
        const double s = std::sin(pi * u);
        const double w = amplitude * s * s * (c1 + c2 * std::sin(2.0 * pi * u) + c3 * std::cos(3.0 * pi * u));
        const Point2 prev = old[(i + np - 1) % np], next = old[(i + 1) % np];
        Vec2 n = perp(next - prev);
        n = n * (1.0 / norm(n));
        curve.points[i] = old[i] + n * w;
    }
}

PiecewiseClosedCurve random_piecewise_loop(Rng& rng, std::size_t max_corners, std::size_t points_per_arc) {
    const auto k = std::uniform_int_distribution<std::size_t>(0, max_corners)(rng);
    const Radial base = random_radial(rng, 0.06);
    const double scale = uniform(rng, 0.5, 2.0);
    PiecewiseClosedCurve loop;
    if (k == 0) {
        DiscreteCurve c;
        c.closed = true;
        const std::size_t n = 2 * points_per_arc;
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
            c.points.push_back(polar(scale * base(phi), phi));
        }
        loop.arcs.push_back({c, {}, {}});
        return loop;
    }
    // Corner angles with a minimum gap so every arc keeps some length.
    std::vector<double> phi;
    do {
        phi.clear();
        const double start = uniform(rng, 0.0, 2.0 * pi);
        for (std::size_t i = 0; i < k; ++i) phi.push_back(start + uniform(rng, 0.0, 2.0 * pi));
        std::sort(phi.begin(), phi.end());
    } while (k > 1 && [&] {
        for (std::size_t i = 0; i < k; ++i) {
            const double next = i + 1 < k ? phi[i + 1] : phi[0] + 2.0 * pi;
            if (next - phi[i] < 0.3) return true;
        }
        return false;
    }());
    std::vector<Point2> corner;
    for (double p : phi) corner.push_back(polar(scale * base(p), p));
    for (std::size_t i = 0; i < k; ++i) {
        const double p0 = phi[i];
        const double p1 = i + 1 < k ? phi[i + 1] : phi[0] + 2.0 * pi;
        const double bump = uniform(rng, -0.3, 0.3);
        const double wave = uniform(rng, -0.1, 0.1);
        DiscreteCurve c;
        for (std::size_t s = 0; s <= points_per_arc; ++s) {
            if (s == 0) {
                c.points.push_back(corner[i]);
                continue;
            }
            if (s == points_per_arc) {
                c.points.push_back(corner[(i + 1) % k]);
                continue;
            }
            const double u = static_cast<double>(s) / static_cast<double>(points_per_arc);
            const double p = p0 + u * (p1 - p0);
            const double r = base(p) + bump * std::sin(pi * u) + wave * std::sin(2.0 * pi * u);
            c.points.push_back(polar(scale * r, p));
        }
        loop.arcs.push_back({c, {}, {}});
    }
    return loop;
}

Network random_closed(Rng& rng, std::size_t n) {
    const Radial base = random_radial(rng, 0.08);
    const double scale = uniform(rng, 0.5, 2.0);
    Network net;
    net.kind = NetworkKind::Closed;
    DiscreteCurve c;
    c.closed = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
        c.points.push_back(polar(scale * base(phi), phi));
    }
    net.curves.push_back(c);
    return random_rigid(rng, net);
}

Network random_drop(Rng& rng, std::size_t n) {
    const double size = uniform(rng, 0.8, 2.0);
    Network net = make_teardrop(n, size);
    auto& c = net.curves[0];
    perturb_interior(c, rng, 0.05 * size, 3, c.points.size() - 4);
    return random_rigid(rng, net);
}

Network random_theta(Rng& rng, std::size_t n) {
    const double r = uniform(rng, 0.6, 1.5);
    Network net = make_standard_double_bubble(r, n);
    for (auto& c : net.curves) perturb_interior(c, rng, 0.05 * r, 3, c.points.size() - 4);
    return random_rigid(rng, net);
}

Network random_generalized_theta(Rng& rng, std::size_t n) {
    const double a1 = uniform(rng, 1.2, 2.4);
    const double a2 = uniform(rng, a1, std::min(pi, 2.0 * pi - a1 - 0.8));
    Network net = make_generalized_bubble(a1, a2, uniform(rng, 0.8, 2.0), n);
    for (auto& c : net.curves) perturb_interior(c, rng, 0.03, 3, c.points.size() - 4);
    return random_rigid(rng, net);
}

Network random_degenerate_theta(Rng& rng, std::size_t n_half) {
    Network net = make_figure_eight_degenerate(n_half);
    for (auto& c : net.curves) perturb_interior(c, rng, 0.05, 3, c.points.size() - 4);
    return random_rigid(rng, net);
}

Network random_double_drop(Rng& rng, std::size_t n) {
    return random_rigid(rng, symmetric_double_drop(random_drop(rng, n)));
}

Network random_network(Rng& rng) {
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: return random_closed(rng);
        case 1: return random_drop(rng);
        case 2: return random_theta(rng);
        case 3: return random_generalized_theta(rng);
        case 4: return random_degenerate_theta(rng);
        default: return random_double_drop(rng);
    }
}

}  // namespace elastinet
