#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "elastinet/error.hpp"
#include "elastinet/fuzz.hpp"
#include "elastinet/geometry.hpp"
#include "elastinet/network.hpp"
#include "oracle_values.hpp"

using namespace elastinet;
using std::numbers::pi;

namespace {

DiscreteCurve regular_polygon(double r, std::size_t n, bool clockwise = false) {
    DiscreteCurve c;
    c.closed = true;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
        if (clockwise) t = -t;
        c.points.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return c;
}

DiscreteCurve unit_square() {
    return DiscreteCurve{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("polyline_length examples") {
    CHECK(polyline_length(resample_uniform(unit_square(), 8)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(polyline_length(regular_polygon(1.0, 360)) == doctest::Approx(oracle::polygon360_perimeter).epsilon(1e-13));
    CHECK(std::abs(polyline_length(regular_polygon(1.0, 360)) - 2.0 * pi) < 1e-4);
    CHECK(polyline_length(DiscreteCurve{{{0, 0}, {3, 4}}, false}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(polyline_length(DiscreteCurve{{{0, 0}}, false}), Error);
}

TEST_CASE("polyline_length is additive under concatenation") {
    DiscreteCurve a{{{0, 0}, {1, 0}, {1, 2}}, false};
    DiscreteCurve b{{{1, 2}, {4, 6}, {5, 6}}, false};
    DiscreteCurve ab{{{0, 0}, {1, 0}, {1, 2}, {4, 6}, {5, 6}}, false};
    CHECK(polyline_length(ab) == doctest::Approx(polyline_length(a) + polyline_length(b)).epsilon(1e-15));
}

TEST_CASE("resample_uniform on a segment") {
    const DiscreteCurve r = resample_uniform(DiscreteCurve{{{0, 0}, {1, 0}}, false}, 4);
    REQUIRE(r.points.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(r.points[i].x == doctest::Approx(0.25 * static_cast<double>(i)).epsilon(1e-14));
        CHECK(r.points[i].y == 0.0);
    }
}

TEST_CASE("resample_uniform keeps length when vertices are hit") {
    const DiscreteCurve bent{{{0, 0}, {2, 0}, {2, 1}}, false};
    CHECK(polyline_length(resample_uniform(bent, 3)) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(polyline_length(resample_uniform(unit_square(), 12)) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("resample_uniform on the square gives edges of 0.5") {
    const DiscreteCurve r = resample_uniform(unit_square(), 8);
    REQUIRE(r.points.size() == 8);
    for (std::size_t i = 0; i < r.num_edges(); ++i) CHECK(norm(r.edge(i)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("resample_uniform contract") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const DiscreteCurve c = random_closed(rng, 90).curves[0];
        const double L = polyline_length(c);
        const DiscreteCurve r = resample_uniform(c, 64);
        // chords cut the input's corners, so length can only drop, by O(h^2)
        const double Lr = polyline_length(r);
        CHECK(Lr <= L * (1 + 1e-12));
        CHECK(Lr >= L * (1 - 5e-3));
        for (std::size_t i = 0; i < r.num_edges(); ++i) CHECK(std::abs(norm(r.edge(i)) - Lr / 64.0) <= 1e-9 * L);

        const DiscreteCurve twice = resample_uniform(r, 64);
        for (std::size_t i = 0; i < r.points.size(); ++i) CHECK(norm(twice.points[i] - r.points[i]) <= 1e-9);

        DiscreteCurve open = c;
        open.closed = false;
        const DiscreteCurve ro = resample_uniform(open, 50);
        CHECK(ro.points.size() == 51);
        const double Lo = polyline_length(ro);
        for (std::size_t i = 0; i < ro.num_edges(); ++i) CHECK(std::abs(norm(ro.edge(i)) - Lo / 50.0) <= 1e-9 * Lo);
        CHECK(ro.points.front() == open.points.front());
        CHECK(norm(ro.points.back() - open.points.back()) <= 1e-12);
    }
    CHECK_THROWS_AS(resample_uniform(DiscreteCurve{{{1, 1}, {1, 1}}, false}, 4), Error);
    CHECK_THROWS_AS(resample_uniform(unit_square(), 2), Error);
}

TEST_CASE("resample_spline keeps circle curvature") {
    const DiscreteCurve coarse = regular_polygon(1.0, 60);
    const DiscreteCurve fine = resample_spline(coarse, 97);
    REQUIRE(fine.points.size() == 97);
    for (const auto& p : fine.points) CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("edge_tangents") {
    const auto t = edge_tangents(DiscreteCurve{{{0, 0}, {2, 0}, {5, 0}}, false});
    REQUIRE(t.size() == 2);
    CHECK(t[0].x == 1.0);
    CHECK(t[0].y == 0.0);

    const auto tc = edge_tangents(regular_polygon(1.0, 400));
    // the closing edge straddles angle 0
    CHECK(std::abs(tc.back().x) < 1e-2);
    CHECK(tc.back().y == doctest::Approx(1.0).epsilon(1e-4));

    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        for (const Vec2& u : edge_tangents(random_closed(rng).curves[0])) CHECK(std::abs(norm(u) - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(edge_tangents(DiscreteCurve{{{0, 0}, {0, 0}, {1, 0}}, false}), Error);
}

TEST_CASE("vertex_curvature examples") {
    for (const auto& v : vertex_curvature(regular_polygon(1.0, 100))) CHECK(std::abs(v.kappa - 1.0) < 1e-3);
    for (const auto& v : vertex_curvature(regular_polygon(1.0, 100, true))) CHECK(std::abs(v.kappa + 1.0) < 1e-3);
    const auto flat = vertex_curvature(resample_uniform(DiscreteCurve{{{0, 0}, {3, 1}}, false}, 10));
    CHECK(flat.size() == 9);
    for (const auto& v : flat) CHECK(std::abs(v.kappa) < 1e-12);
}

TEST_CASE("vertex_curvature skips designated corners") {
    const std::size_t corners[] = {0, 2};
    const auto k = vertex_curvature(unit_square(), corners);
    REQUIRE(k.size() == 2);
    CHECK(k[0].vertex == 1);
    CHECK(k[1].vertex == 3);
}

TEST_CASE("vertex_curvature converges at second order") {
    // kappa_i = 2 sin(pi/N) ... the error against 1/R shrinks by ~4 per doubling
    const double R = 1.7;
    double prev = 0.0;
    for (std::size_t n : {50u, 100u, 200u}) {
        const double err = std::abs(vertex_curvature(regular_polygon(R, n))[0].kappa - 1.0 / R);
        if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.02));
        prev = err;
    }
}

TEST_CASE("external_angle examples") {
    CHECK(external_angle({1, 0}, {1, 0}) == 0.0);
    CHECK(external_angle({1, 0}, {0, 1}) == doctest::Approx(pi / 2));
    CHECK(external_angle({1, 0}, {-0.5, std::sqrt(3.0) / 2}) == doctest::Approx(2 * pi / 3).epsilon(1e-14));
    CHECK(external_angle({1, 0}, {-1, 0}) == doctest::Approx(pi));
    CHECK_THROWS_AS(external_angle({2, 0}, {1, 0}), Error);
}

TEST_CASE("total turning of convex polygons is 2pi") {
    CHECK(std::abs(total_turning(unit_square()) - 2 * pi) <= 1e-12);
    CHECK(std::abs(total_turning(regular_polygon(3.0, 17)) - 2 * pi) <= 1e-12);
    CHECK(std::abs(total_turning(regular_polygon(1.0, 17, true)) + 2 * pi) <= 1e-12);
}

TEST_CASE("length and curvature are invariant under rigid motions") {
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const DiscreteCurve c = random_closed(rng).curves[0];
        const DiscreteCurve m = transformed(c, 0.7 + trial, {0.4, -0.3});
        CHECK(std::abs(polyline_length(m) - polyline_length(c)) <= 1e-12 * polyline_length(c));
        const auto k0 = vertex_curvature(c), k1 = vertex_curvature(m);
        REQUIRE(k0.size() == k1.size());
        for (std::size_t i = 0; i < k0.size(); ++i) CHECK(std::abs(k0[i].kappa - k1[i].kappa) <= 1e-12 * (1 + std::abs(k0[i].kappa)));
    }
}

TEST_CASE("end tangent estimates on an arc") {
    DiscreteCurve arc;
    for (int i = 0; i <= 40; ++i) {
        const double t = pi * i / 40.0;
        arc.points.push_back({std::cos(t), std::sin(t)});
    }
    const Vec2 s = start_tangent_estimate(arc), e = end_tangent_estimate(arc);
    CHECK(s.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.y == doctest::Approx(-1.0).epsilon(1e-12));
}

}  // TEST_SUITE
