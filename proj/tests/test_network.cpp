#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"

#include "elastinet/energy.hpp"
#include "elastinet/error.hpp"
#include "elastinet/network.hpp"
#include "oracle_values.hpp"

using namespace elastinet;
using std::numbers::pi;

TEST_SUITE("network") {

TEST_CASE("standard double bubble is valid") {
    for (double r : {0.5, optimal_bubble_radius(), 2.0}) {
        const ValidationReport v = validate(make_standard_double_bubble(r, 100));
        CHECK(v.valid);
        CHECK(v.angle_defect <= 1e-9);
    }
}

namespace {

// Rotates the first few points of a curve about its start, turning the
// outgoing tangent without moving the junction.
void turn_start(Network& net, std::size_t curve, double angle) {
    auto& p = net.curves[curve].points;
    const Point2 o = p[0];
    const double c = std::cos(angle), s = std::sin(angle);
    for (std::size_t i = 1; i < 4; ++i) {
        const Vec2 d = p[i] - o;
        p[i] = o + Vec2{c * d.x - s * d.y, s * d.x + c * d.y};
    }
}

}  // namespace

TEST_CASE("perturbed theta tangents are detected") {
    Network net = make_standard_double_bubble(1.0, 100);
    turn_start(net, 0, 0.1);
    const ValidationReport v = validate(net);
    CHECK_FALSE(v.valid);
    CHECK(v.angle_defect == doctest::Approx(0.1).epsilon(1e-3));
}

TEST_CASE("open drop is invalid") {
    Network drop = make_teardrop(100);
    drop.curves[0].points.back() += Point2{1e-3, 0.0};
    CHECK_FALSE(validate(drop, 1e-6, 1e-6).valid);
    CHECK(validate(make_teardrop(100), 1e-6, 1e-6).valid);
}

TEST_CASE("validation tolerances must be positive") {
    CHECK_THROWS_AS(validate(make_circle(1.0, 20), 0.0, 1e-6), Error);
}

TEST_CASE("valid iff both defects are within tolerance") {
    Network net = make_standard_double_bubble(1.0, 80);
    turn_start(net, 2, 1e-4);
    const ValidationReport v = validate(net);
    CHECK(validate(net, 1e-9, 2e-4).valid == (v.junction_gap <= 1e-9 && v.angle_defect <= 2e-4));
    CHECK_FALSE(validate(net, 1e-9, 5e-5).valid);
}

TEST_CASE("circle examples") {
    CHECK(std::abs(penalized_energy(make_circle(1.0, 200)).penalized - 4 * pi) <= 1e-3 * 4 * pi);
    CHECK(std::abs(penalized_energy(make_circle(2.0, 200)).elastic - pi) <= 1e-3 * pi);
    Network rev = make_circle(1.0, 200);
    rev.curves[0] = reversed(rev.curves[0]);
    CHECK(penalized_energy(rev).penalized ==
          doctest::Approx(penalized_energy(make_circle(1.0, 200)).penalized).epsilon(1e-13));
    CHECK_THROWS_AS(make_circle(1.0, 5), Error);
}

TEST_CASE("double bubble energy") {
    const Network b = make_standard_double_bubble(optimal_bubble_radius(), 400);
    CHECK(std::abs(penalized_energy(b).penalized - 18.4059) <= 1e-3 * 18.4059);
    CHECK(optimal_bubble_radius() == doctest::Approx(oracle::rbar).epsilon(1e-14));
    CHECK(double_bubble_energy_constant() == doctest::Approx(oracle::bubble_constant).epsilon(1e-14));
    CHECK(double_bubble_energy_constant() == doctest::Approx(oracle::bubble_energy_at_rbar).epsilon(1e-14));
}

TEST_CASE("double bubble closed forms for E and L") {
    for (double r : {0.4, 1.0, 3.0}) {
        const EnergyReport e = penalized_energy(make_standard_double_bubble(r, 400));
        CHECK(e.length == doctest::Approx((8 * pi / 3 + std::sqrt(3.0)) * r).epsilon(1e-4));
        CHECK(e.elastic == doctest::Approx(8 * pi / (3 * r)).epsilon(1e-4));
        CHECK(e.per_curve[1].elastic <= 1e-20);
    }
}

TEST_CASE("double bubble middle segment has length sqrt3 r") {
    const Network b = make_standard_double_bubble(1.5, 50);
    CHECK(polyline_length(b.curves[1]) == doctest::Approx(std::sqrt(3.0) * 1.5).epsilon(1e-12));
    CHECK(norm(b.junctions[0].position - b.junctions[1].position) == doctest::Approx(std::sqrt(3.0) * 1.5));
}

TEST_CASE("rescaling the doubled bubble halves it") {
    const Rescaling r = optimal_rescale(make_standard_double_bubble(2 * optimal_bubble_radius(), 400));
    CHECK(std::abs(r.factor - 0.5) <= 1e-3);
}

TEST_CASE("bubble energy is minimized at r-bar") {
    double best = 1e300, best_r = 0.0;
    for (int k = 0; k <= 400; ++k) {
        const double r = 0.7 + 1e-3 * k;
        const double f = penalized_energy(make_standard_double_bubble(r, 100)).penalized;
        if (f < best) best = f, best_r = r;
    }
    CHECK(std::abs(best_r - optimal_bubble_radius()) <= 1e-3);
}

TEST_CASE("generalized bubble energy") {
    CHECK(std::abs(generalized_bubble_energy(2 * pi / 3, 2 * pi / 3) - oracle::bubble_constant) <= 1e-9);
    CHECK(generalized_bubble_energy(pi / 2, pi / 2) == doctest::Approx(oracle::generalized_half_pi_closed).epsilon(1e-13));
    CHECK_THROWS_AS(generalized_bubble_energy(pi, pi / 2), Error);
    CHECK_THROWS_AS(generalized_bubble_energy(2.0, 1.0), Error);
    try {
        generalized_bubble_energy(pi / 2, pi);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::SingularAngle || e.kind() == ErrorKind::InvalidInput));
    }
}

TEST_CASE("generalized bubble construction matches its closed form") {
    const double a1 = pi / 2, a2 = pi / 2;
    const Network g = make_generalized_bubble(a1, a2, 1.0, 300);
    CHECK(validate(g).valid);
    const double f = penalized_energy(optimal_rescale(g).rescaled).penalized;
    CHECK(f == doctest::Approx(generalized_bubble_energy(a1, a2)).epsilon(1e-4));
}

TEST_CASE("generalized energy along alpha2") {
    // recorded only: the scan is finite and positive on the admissible range
    const double a1 = pi / 3;
    for (double a2 = a1; a2 < 2 * pi - a1 - 1e-9 && a2 < pi - 1e-3; a2 += 0.05) {
        const double f = generalized_bubble_energy(a1, a2);
        CHECK(std::isfinite(f));
        CHECK(f > 0.0);
    }
}

TEST_CASE("serialization round trip") {
    for (const Network& net : {make_standard_double_bubble(optimal_bubble_radius(), 77), make_teardrop(50),
                               make_figure_eight_degenerate(20), make_generalized_bubble(1.0, 2.0, 0.7, 40)}) {
        const Network back = deserialize(serialize(net));
        REQUIRE(back.curves.size() == net.curves.size());
        CHECK(back.kind == net.kind);
        for (std::size_t c = 0; c < net.curves.size(); ++c) CHECK(back.curves[c].points == net.curves[c].points);
        REQUIRE(back.junctions.size() == net.junctions.size());
        for (std::size_t j = 0; j < net.junctions.size(); ++j) {
            CHECK(back.junctions[j].position == net.junctions[j].position);
            CHECK(back.junctions[j].frame_angle == net.junctions[j].frame_angle);
            CHECK(back.junctions[j].orientation == net.junctions[j].orientation);
            CHECK(back.junctions[j].pairing == net.junctions[j].pairing);
        }
        CHECK(serialize(back) == serialize(net));
    }
}

TEST_CASE("missing kind names the path") {
    try {
        deserialize(R"({"curves": [{"points": [[0,0],[1,0],[1,1]]}]})");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("/kind") != std::string::npos);
    }
}

TEST_CASE("schema violations") {
    auto kind_of = [](const std::string& text) {
        try {
            deserialize(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Numeric;
    };
    CHECK(kind_of("{not json") == ErrorKind::Parse);
    CHECK(kind_of(R"({"kind": "closed", "curves": [{"points": [[0,0],[1,"x"],[1,1]]}]})") == ErrorKind::Parse);
    CHECK(kind_of(R"({"kind": "closed", "curves": [{"points": [[0,0],[1,1e999],[1,1]]}]})") == ErrorKind::Parse);
    CHECK(kind_of(R"({"kind": "spiral", "curves": []})") == ErrorKind::Parse);

    Network g = make_generalized_bubble(1.0, 2.0, 0.7, 40);
    g.angles = {0.6 * pi, 0.6 * pi, 0.7 * pi};  // sums to 1.9 pi
    CHECK(kind_of(serialize(g)) == ErrorKind::Validation);
}

TEST_CASE("figure eight degenerate is valid") {
    const Network f = make_figure_eight_degenerate(40);
    CHECK(validate(f).valid);
    CHECK(f.kind == NetworkKind::DegenerateTheta);
    CHECK(f.curves.size() == 2);
}

TEST_CASE("end slots of theta are mutually 120 degrees") {
    const Network b = make_standard_double_bubble(1.0, 40);
    const auto slots = end_slots(b);
    REQUIRE(slots.size() == 6);
    for (std::size_t j = 0; j < 2; ++j) {
        Vec2 sum;
        for (const auto& s : slots) {
            if (s.junction == j) sum += unit_from_angle(s.direction);
        }
        CHECK(norm(sum) <= 1e-14);
    }
}

TEST_CASE("fit_frames recovers a rotated frame") {
    Network b = make_standard_double_bubble(1.0, 200);
    const double f0 = b.junctions[0].frame_angle;
    b = rigidly_moved(b, 0.3, {1.0, 2.0});
    b.junctions[0].frame_angle = 0.0;
    fit_frames(b);
    CHECK(wrap_angle(b.junctions[0].frame_angle - f0 - 0.3) == doctest::Approx(0.0).epsilon(1e-9));
}

}  // TEST_SUITE
