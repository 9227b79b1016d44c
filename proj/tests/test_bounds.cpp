#include <cmath>
#include <numbers>

#include "doctest.h"

#include "elastinet/bounds.hpp"
#include "elastinet/energy.hpp"
#include "elastinet/error.hpp"
#include "elastinet/fuzz.hpp"
#include "elastinet/network.hpp"
#include "oracle_values.hpp"

using namespace elastinet;
using std::numbers::pi;

namespace {

DiscreteCurve rounded_square(double side, double rho, std::size_t per_corner) {
    DiscreteCurve c;
    c.closed = true;
    const double h = side / 2 - rho;
    const Point2 centres[] = {{h, h}, {-h, h}, {-h, -h}, {h, -h}};
    for (int q = 0; q < 4; ++q) {
        for (std::size_t k = 0; k <= per_corner; ++k) {
            const double t = pi / 2 * (q + static_cast<double>(k) / static_cast<double>(per_corner));
            c.points.push_back(centres[q] + Point2{rho * std::cos(t), rho * std::sin(t)});
        }
    }
    return c;
}

DiscreteCurve half_circle(std::size_t n) {
    DiscreteCurve c;
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = pi * static_cast<double>(k) / static_cast<double>(n);
        c.points.push_back({std::cos(t), std::sin(t)});
    }
    return c;
}

PiecewiseClosedCurve single(const DiscreteCurve& c) { return PiecewiseClosedCurve{{Arc{c, {}, {}}}}; }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("total absolute curvature examples") {
    CHECK(std::abs(total_abs_curvature(as_loop(make_circle(1.0, 360))) - 2 * pi) <= 1e-3 * 2 * pi);
    CHECK(std::abs(total_abs_curvature(single(rounded_square(2.0, 0.3, 40))) - 2 * pi) <= 5e-3 * 2 * pi);
    const DiscreteCurve square = resample_uniform(DiscreteCurve{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true}, 40);
    const PiecewiseClosedCurve split = split_at_corners(square, 0.5);
    CHECK(corner_count(split) == 4);
    CHECK(total_abs_curvature(split) <= 1e-12);
}

TEST_CASE("closure gap beyond tolerance is rejected") {
    DiscreteCurve a{{{0, 0}, {1, 0}, {1, 1}}, false};
    DiscreteCurve b{{{1, 1}, {0, 1}, {0, 0.1}}, false};
    PiecewiseClosedCurve loop{{Arc{a, {}, {}}, Arc{b, {}, {}}}};
    CHECK(closure_gap(loop) == doctest::Approx(0.1));
    CHECK_THROWS_AS(total_abs_curvature(loop), Error);
    CHECK_NOTHROW(total_abs_curvature(loop, 0.2));
}

TEST_CASE("Gauss-Bonnet examples") {
    const BoundCheck circle = gauss_bonnet_check(as_loop(make_circle(1.0, 400)));
    CHECK(circle.rhs == doctest::Approx(2 * pi));
    CHECK(std::abs(circle.lhs - circle.rhs) <= 1e-3);
    CHECK(circle.holds);

    const DiscreteCurve square = resample_uniform(DiscreteCurve{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true}, 40);
    const BoundCheck sq = gauss_bonnet_check(split_at_corners(square, 0.5));
    CHECK(std::abs(sq.rhs) <= 1e-12);
    CHECK(sq.lhs <= 1e-12);
    CHECK(sq.holds);
}

TEST_CASE("corner angles match external angles") {
    const DiscreteCurve square = resample_uniform(DiscreteCurve{{{0, 0}, {2, 0}, {2, 1}, {0, 1}}, true}, 30);
    for (double t : corner_angles(split_at_corners(square, 0.5))) CHECK(t == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("Gauss-Bonnet fuzz") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const BoundCheck b = gauss_bonnet_check(random_piecewise_loop(rng));
        CHECK(b.holds);
    }
}

TEST_CASE("drop bound") {
    Network circle_drop = make_circle(1.0, 100);
    circle_drop.kind = NetworkKind::Drop;
    circle_drop.curves[0].closed = false;
    circle_drop.curves[0].points.push_back(circle_drop.curves[0].points.front());
    const BoundCheck c = drop_bound_check(circle_drop);
    CHECK(c.rhs == doctest::Approx(pi));
    CHECK(c.lhs == doctest::Approx(2 * pi).epsilon(1e-2));
    CHECK(c.holds);

    const BoundCheck t = drop_bound_check(make_teardrop(200));
    CHECK(t.holds);
    CHECK(t.lhs >= pi);
    CHECK_THROWS_AS(drop_bound_check(make_circle(1.0, 30)), Error);
}

TEST_CASE("pair bound on the double bubble") {
    const Network b = make_standard_double_bubble(1.0, 400);
    const BoundCheck arc_and_segment = pair_bound_check(theta_pair_loop(b, 0, 1));
    CHECK(arc_and_segment.rhs == doctest::Approx(4 * pi / 3));
    CHECK(arc_and_segment.lhs == doctest::Approx(4 * pi / 3).epsilon(1e-3));
    CHECK(arc_and_segment.holds);
    const BoundCheck two_arcs = pair_bound_check(theta_pair_loop(b, 0, 2));
    CHECK(two_arcs.lhs == doctest::Approx(8 * pi / 3).epsilon(1e-3));
    CHECK(two_arcs.holds);

    const DiscreteCurve square = resample_uniform(DiscreteCurve{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true}, 40);
    CHECK_THROWS_AS(pair_bound_check(split_at_corners(square, 0.5)), Error);
}

TEST_CASE("pair bound on fuzzed thetas") {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const Network t = random_theta(rng);
        for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}}) {
            CHECK(pair_bound_check(theta_pair_loop(t, i, j)).holds);
        }
    }
}

TEST_CASE("AM-GM energy bound") {
    const AmGmBound unit = amgm_energy_bound(as_loop(make_circle(1.0, 400)), 2 * pi);
    CHECK(unit.bound == doctest::Approx(4 * pi));
    CHECK(unit.energy == doctest::Approx(4 * pi).epsilon(1e-4));
    CHECK(unit.holds);

    const AmGmBound two = amgm_energy_bound(as_loop(make_circle(2.0, 400)), 2 * pi);
    CHECK(two.energy == doctest::Approx(5 * pi).epsilon(1e-4));
    CHECK(two.holds);

    const AmGmBound too_big = amgm_energy_bound(as_loop(make_circle(1.0, 100)), 3 * pi);
    CHECK_FALSE(too_big.hypothesis_ok);

    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const PiecewiseClosedCurve loop = as_loop(random_closed(rng));
        const AmGmBound b = amgm_energy_bound(loop, total_abs_curvature(loop));
        CHECK(b.hypothesis_ok);
        CHECK(b.holds);
        CHECK(b.energy >= b.intermediate * (1 - 1e-12));
    }
}

TEST_CASE("theta lower bound") {
    const ThetaLowerBound b = theta_lower_bound_check(make_standard_double_bubble(optimal_bubble_radius(), 400));
    CHECK(b.energy == doctest::Approx(18.4059).epsilon(1e-3));
    CHECK(b.bound == doctest::Approx(4 * pi));
    CHECK(b.holds);
    CHECK(b.pairs_hold);
    CHECK(b.identity_defect <= 1e-12 * b.energy);

    Rng rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        const ThetaLowerBound f = theta_lower_bound_check(random_theta(rng));
        CHECK(f.holds);
        CHECK(f.pairs_hold);
        CHECK(f.identity_defect <= 1e-12 * f.energy);
    }
}

TEST_CASE("Cauchy-Schwarz on curvature") {
    const CauchySchwarzCheck c = turning_cauchy_schwarz(make_circle(1.0, 300).curves[0]);
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-4));
    CHECK(c.holds);
    const CauchySchwarzCheck s = turning_cauchy_schwarz(DiscreteCurve{{{0, 0}, {1, 0}, {2, 0}}, false});
    CHECK(s.lhs == 0.0);
    CHECK(s.holds);
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) CHECK(turning_cauchy_schwarz(random_closed(rng).curves[0]).holds);
}

TEST_CASE("tangent gap bound") {
    const TangentGapCheck seg = tangent_gap_bound(DiscreteCurve{{{0, 0}, {1, 0}, {2, 0}}, false});
    CHECK(seg.gap == 0.0);
    CHECK(seg.holds);

    const TangentGapCheck half = tangent_gap_bound(half_circle(400));
    CHECK(half.gap == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(half.bound == doctest::Approx(oracle::half_circle_gap_bound).epsilon(1e-3));
    CHECK(half.holds);

    // a half turn on ever smaller arcs: F L >= gap^2 = 4 forces F up
    double prev = 0.0;
    for (double r : {1.0, 0.1, 0.01}) {
        DiscreteCurve arc = half_circle(200);
        for (auto& p : arc.points) p *= r;
        const TangentGapCheck g = tangent_gap_bound(arc);
        CHECK(g.holds);
        const double f = g.bound * g.bound / polyline_length(arc);
        CHECK(f >= 4.0 / polyline_length(arc) * (1 - 1e-3));
        CHECK(f > prev);
        prev = f;
    }
}

TEST_CASE("total curvature is additive over the two lobes of a figure eight") {
    const std::size_t n = 200;
    DiscreteCurve eight;
    eight.closed = true;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = pi / 2 + 2 * pi * static_cast<double>(k) / static_cast<double>(n);
        eight.points.push_back({std::cos(t), std::sin(t) * std::cos(t)});
    }
    const double whole = total_abs_curvature(single(eight));

    // lobes split at the crossing (vertices 0 and n/2); each lobe takes the
    // turning at the vertex it starts from
    auto lobe = [&](std::size_t from) {
        DiscreteCurve c;
        for (std::size_t k = 0; k <= n / 2; ++k) c.points.push_back(eight.points[(from + k) % n]);
        const Point2 before = eight.points[(from + n - 1) % n];
        const Vec2 in = eight.points[from] - before;
        return PiecewiseClosedCurve{{Arc{c, in * (1.0 / norm(in)), {}}}};
    };
    const double parts = total_abs_curvature(lobe(0)) + total_abs_curvature(lobe(n / 2));
    CHECK(std::abs(whole - parts) <= 1e-12 * whole);
}

}  // TEST_SUITE
