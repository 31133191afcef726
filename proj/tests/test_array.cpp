#include <catch2/catch_amalgamated.hpp>

#include "jamsim/array.hpp"

using namespace jamsim;

namespace {
const ArrayGeometry kUra = make_ura(2, 2, 1.5, 3.0);
}

TEST_CASE("make_ura centers the 2x2 grid") {
    REQUIRE(kUra.element_positions.size() == 4);
    for (const Vec3& p : kUra.element_positions) {
        REQUIRE(std::abs(std::abs(p.x) - 0.75) < 1e-15);
        REQUIRE(std::abs(std::abs(p.y) - 0.75) < 1e-15);
        REQUIRE(p.z == 0.0);
    }
}

TEST_CASE("make_ura degenerate single element sits at the origin") {
    const ArrayGeometry g = make_ura(1, 1, 1.5, 3.0);
    REQUIRE(g.element_positions.size() == 1);
    REQUIRE(g.element_positions[0].x == 0.0);
    REQUIRE(g.element_positions[0].y == 0.0);
}

TEST_CASE("make_ura 2x4 grid matches brute-force enumeration") {
    const ArrayGeometry g = make_ura(2, 4, 0.5, 1.0);
    REQUIRE(g.element_positions.size() == 8);
    std::size_t i = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 4; ++c) {
            REQUIRE_THAT(g.element_positions[i].x, Catch::Matchers::WithinAbs((c - 1.5) * 0.5, 1e-15));
            REQUIRE_THAT(g.element_positions[i].y, Catch::Matchers::WithinAbs((r - 0.5) * 0.5, 1e-15));
            ++i;
        }
}

TEST_CASE("make_ura rejects invalid parameters") {
    REQUIRE_THROWS_AS(make_ura(0, 2, 1.0, 1.0), ValidationError);
    REQUIRE_THROWS_AS(make_ura(2, 2, 0.0, 1.0), ValidationError);
    REQUIRE_THROWS_AS(make_ura(2, 2, 1.0, -1.0), ValidationError);
}

TEST_CASE("steering_vector boresight phases match per-element computation") {
    const auto a = steering_vector(kUra, {0.0, 0.0});
    // u = (0, 1, 0): phase_i = (2pi/3) * p_i.y
    const double k = 2.0 * std::numbers::pi / 3.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double phase = k * kUra.element_positions[i].y;
        REQUIRE(std::abs(a[i] - cplx{std::cos(phase), std::sin(phase)}) < 1e-15);
    }
}

TEST_CASE("steering_vector at zenith is the all-ones vector") {
    const auto a = steering_vector(kUra, {0.0, 90.0});
    for (const cplx& v : a) REQUIRE(std::abs(v - cplx{1.0}) < 1e-12);
}

TEST_CASE("steering_vector row conjugate symmetry a(-az) = conj(a(az)) at el 0") {
    const ArrayGeometry ula = make_ura(1, 4, 1.5, 3.0);
    for (double az : {10.0, 35.0, 72.5}) {
        const auto ap = steering_vector(ula, {az, 0.0});
        const auto am = steering_vector(ula, {-az, 0.0});
        for (std::size_t i = 0; i < ap.size(); ++i)
            REQUIRE(std::abs(am[i] - std::conj(ap[i])) < 1e-12);
    }
}

TEST_CASE("steering vectors have unit-magnitude entries and norm M*N") {
    for (double az = -90.0; az <= 90.0; az += 7.5)
        for (double el = -90.0; el <= 90.0; el += 15.0) {
            const auto a = steering_vector(kUra, {az, el});
            double n2 = 0.0;
            for (const cplx& v : a) {
                REQUIRE(std::abs(std::abs(v) - 1.0) <= 1e-12);
                n2 += std::norm(v);
            }
            REQUIRE_THAT(n2, Catch::Matchers::WithinAbs(4.0, 1e-12));
        }
}

TEST_CASE("steering_vector is continuous in azimuth") {
    for (double az = -89.9; az < 90.0; az += 3.7) {
        const auto a = steering_vector(kUra, {az, 0.0});
        const auto b = steering_vector(kUra, {az + 0.001, 0.0});
        for (std::size_t i = 0; i < a.size(); ++i)
            REQUIRE(std::abs(a[i] - b[i]) <= 1e-3);
    }
}

TEST_CASE("direction round trip through the unit vector") {
    for (double az = -179.0; az <= 179.0; az += 13.0)
        for (double el = -89.0; el <= 89.0; el += 11.0) {
            const Direction d{az, el};
            const Direction back = direction_from_vector(direction_unit_vector(d));
            REQUIRE_THAT(back.azimuth_deg, Catch::Matchers::WithinAbs(az, 1e-9));
            REQUIRE_THAT(back.elevation_deg, Catch::Matchers::WithinAbs(el, 1e-9));
        }
}

TEST_CASE("direction_from_vector rejects the zero vector") {
    REQUIRE_THROWS_AS(direction_from_vector(Vec3{0, 0, 0}), ValidationError);
}

TEST_CASE("angular_distance_deg basics") {
    REQUIRE_THAT(angular_distance_deg({0, 0}, {0, 90}), Catch::Matchers::WithinAbs(90.0, 1e-12));
    REQUIRE_THAT(angular_distance_deg({-40, 0}, {30, 0}), Catch::Matchers::WithinAbs(70.0, 1e-12));
    // at the pole every azimuth is the same direction
    REQUIRE(angular_distance_deg({-79, 90}, {13, 90}) < 1e-9);
}
