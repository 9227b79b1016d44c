#include <cmath>
#include <numbers>

#include "doctest.h"

#include "elastinet/network.hpp"
#include "elastinet/stationarity.hpp"
#include "oracle_values.hpp"

using namespace elastinet;
using std::numbers::pi;

namespace {

double max_abs_deviation(const CurveResidual& r, double target) {
    double m = 0.0;
    for (double v : r.values) m = std::max(m, std::abs(v - target));
    return m;
}

DiscreteCurve arc(double radius, double span, std::size_t n) {
    DiscreteCurve c;
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = span * static_cast<double>(k) / static_cast<double>(n);
        c.points.push_back({radius * std::cos(t), radius * std::sin(t)});
    }
    return c;
}

}  // namespace

TEST_SUITE("stationarity") {

TEST_CASE("circle residuals") {
    CHECK(max_abs_deviation(el_residual(make_circle(1.0, 400).curves[0]), 0.0) <= 1e-3);
    CHECK(max_abs_deviation(el_residual(make_circle(2.0, 400).curves[0]), oracle::el_residual_r2) <= 1e-3);
    CHECK_THROWS(el_residual(DiscreteCurve{{{0, 0}, {1, 0}, {2, 1}, {3, 3}}, false}));
}

TEST_CASE("arc residual converges at second order") {
    const double R = 1.5, target = (1 - R * R) / (R * R * R);
    // beyond n ~ 300 rounding in the second difference of k takes over
    double prev = 0.0;
    for (std::size_t n : {50u, 100u, 200u}) {
        const CurveResidual r = el_residual(arc(R, 2.0, n));
        const double err = std::abs(r.values[r.values.size() / 2] - target);
        if (prev > 0.0) CHECK(prev / err > 3.0);
        prev = err;
    }
}

TEST_CASE("open curves exclude boundary vertices") {
    const CurveResidual r = el_residual(arc(1.0, 2.0, 50));
    REQUIRE_FALSE(r.vertices.empty());
    CHECK(r.vertices.front() > 0);
    CHECK(r.vertices.back() < 50);
}

TEST_CASE("double bubble junction conditions") {
    for (double r : {0.7, optimal_bubble_radius(), 1.3}) {
        const ResidualReport rep = junction_residuals(make_standard_double_bubble(r, 400));
        REQUIRE(rep.junction_scalar.size() == 2);
        CHECK(std::abs(rep.junction_scalar[0]) <= 1e-6);
        const Vec2 v = rep.junction_vector[0];
        CHECK(std::abs(v.x - 1.0 / (r * r)) <= 1e-3);
        CHECK(std::abs(v.y) <= 1e-3);
    }
    const ResidualReport bar = junction_residuals(make_standard_double_bubble(optimal_bubble_radius(), 400));
    CHECK(norm(bar.junction_vector[0]) == doctest::Approx(oracle::rbar_inv_sq).epsilon(1e-3));
}

TEST_CASE("junction vector rotates with the network") {
    const Network b = make_standard_double_bubble(1.0, 200);
    const Vec2 v0 = junction_residuals(b).junction_vector[0];
    for (double phi : {0.4, 2.0, -1.1}) {
        const Vec2 v1 = junction_residuals(rigidly_moved(b, phi, {})).junction_vector[0];
        const Vec2 expect{std::cos(phi) * v0.x - std::sin(phi) * v0.y, std::sin(phi) * v0.x + std::cos(phi) * v0.y};
        CHECK(norm(v1 - expect) <= 1e-9);
    }
}

TEST_CASE("residuals are invariant under translation") {
    const Network b = make_standard_double_bubble(1.0, 200);
    const ResidualReport r0 = junction_residuals(b);
    const ResidualReport r1 = junction_residuals(rigidly_moved(b, 0.0, {0.3, -0.2}));
    CHECK(std::abs(r0.interior_max_abs - r1.interior_max_abs) <= 1e-8);
    CHECK(norm(r0.junction_vector[0] - r1.junction_vector[0]) <= 1e-8);
    CHECK(std::abs(r0.junction_scalar[1] - r1.junction_scalar[1]) <= 1e-8);
}

TEST_CASE("criticality audit") {
    CHECK(criticality_audit(make_circle(1.0, 400)).pass);
    const CriticalityAudit bubble = criticality_audit(make_standard_double_bubble(optimal_bubble_radius(), 400));
    CHECK_FALSE(bubble.pass);
    CHECK(bubble.reason.find("junction") != std::string::npos);
    CHECK_FALSE(criticality_audit(make_circle(2.0, 400)).pass);
}

TEST_CASE("end curvature of an arc") {
    const EndCurvature e = end_curvature(arc(2.0, 1.5, 300), true);
    CHECK(e.k == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(std::abs(e.dk) <= 1e-3);
}

}  // TEST_SUITE
