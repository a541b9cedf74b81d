#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbitcount/lattice.hpp"
#include "orbitcount/lift.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/region.hpp"

using namespace orbitcount;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

StarDomainSpec quarter_annulus(double theta_lo, double inner) {
    StarDomainSpec spec;
    spec.theta_lo = theta_lo;
    spec.theta_hi = theta_lo + kPi / 2.0;
    spec.radius = [](double) { return 1.0; };
    spec.inner_radius = inner;
    return spec;
}

}  // namespace

TEST_CASE("fundamental width scales inversely with the squared base norm") {
    const LatticeSpec lattice = preset_sl2z();
    CHECK(fundamental_width(lattice, {1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(fundamental_width(lattice, {2.0, 0.0}) == doctest::Approx(0.25));
    CHECK(fundamental_width(preset_hecke(5), {1.0, 0.0}) ==
          doctest::Approx(1.6180339887498948));
}

TEST_CASE("width witness must recompute from the generators") {
    LatticeSpec broken = preset_sl2z();
    broken.cusps[0].width = 0.5;
    CHECK_THROWS_AS(fundamental_width(broken, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("base point off the cusp ray is rejected") {
    CHECK_THROWS_AS(fundamental_width(preset_sl2z(), {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fundamental_width(preset_sl2z(), {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("group and planar membership agree point by point") {
    const LatticeSpec lattice = preset_sl2z();
    const StarDomainSpec spec = quarter_annulus(0.3, 0.7);
    const LiftedDomain dom = build_lifted_domain(lattice, {1.0, 0.0}, spec, 8.0);
    const std::vector<Mat2> ball = enumerate_group_ball(lattice, 40.0);
    std::size_t inside = 0;
    for (const Mat2& gamma : ball) {
        const PlaneVector p = gamma * PlaneVector{1.0, 0.0};
        if (lift_contains(dom, gamma)) {
            ++inside;
            CHECK(domain_contains_point(dom, p));
        }
    }
    CHECK(inside > 0);
}

TEST_CASE("bijection between selected group elements and orbit points") {
    const StarDomainSpec spec = quarter_annulus(0.3, 0.7);
    for (double scale : {5.0, 12.0}) {
        const BijectionReport report =
            verify_lift_bijection(preset_sl2z(), {1.0, 0.0}, spec, scale);
        CHECK(report.counts_match);
        CHECK(report.points_match);
        CHECK(report.orbit_count > 0);
        CHECK(report.orbit_count == report.group_count);
    }
}

TEST_CASE("bijection survives a profile jump and a hecke lattice") {
    StarDomainSpec spec;
    spec.theta_lo = 0.1;
    spec.theta_hi = 1.2;
    spec.inner_radius = 0.6;
    spec.radius = [](double theta) { return theta < 0.7 ? 0.8 : 1.2; };
    spec.jumps = {0.7};
    const BijectionReport report = verify_lift_bijection(preset_hecke(5), {1.0, 0.0}, spec, 9.0);
    CHECK(report.counts_match);
    CHECK(report.points_match);
    CHECK(report.orbit_count > 0);
}

TEST_CASE("bijection count equals the sector count of the orbit") {
    const StarDomainSpec spec = quarter_annulus(0.3, 0.7);
    const double scale = 10.0;
    const BijectionReport report = verify_lift_bijection(preset_sl2z(), {1.0, 0.0}, spec, scale);
    const OrbitSet orbit = enumerate_orbit(preset_sl2z(), {1.0, 0.0}, scale + 1.0);
    const std::size_t sector =
        count_in_region(orbit, SectorRegion{spec.theta_lo, kPi / 2.0}, scale);
    const std::size_t inner_cut =
        count_in_region(orbit, SectorRegion{spec.theta_lo, kPi / 2.0}, spec.inner_radius);
    CHECK(report.orbit_count == sector - inner_cut);
}

TEST_CASE("haar volume of the unit coordinate box") {
    CHECK(haar_box_volume(1.0, 0.0, 1.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0));
    CHECK(haar_box_volume(2.0, -1.0, 0.0, 3.0) ==
          doctest::Approx(6.0 * (1.0 - std::exp(-1.0))));
    CHECK(haar_box_volume(0.0, 0.0, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(haar_box_volume(-1.0, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(haar_box_volume(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("lifted domain volume is twice the planar area times the shear width") {
    // For a unit base point e^t is the squared radius, so the lift of the
    // star domain has Haar volume x0 * 2 * (area in the r dr dtheta sense).
    const StarDomainSpec spec = quarter_annulus(0.0, 0.5);
    const LiftedDomain dom = build_lifted_domain(preset_sl2z(), {1.0, 0.0}, spec, 4.0);
    const double area = (kPi / 2.0) * 0.5 * (16.0 - 0.25);
    CHECK(haar_volume(dom) == doctest::Approx(2.0 * dom.x0 * area).epsilon(1e-9));
}

TEST_CASE("invariance of the coordinate volume under right translation") {
    const Mat2 moves[] = {
        shear(0.4),
        rotation(0.9) * geodesic_flow(0.3) * shear(0.25),
        geodesic_flow(-0.35) * rotation(2.1),
    };
    for (const Mat2& h : moves) {
        const HaarInvarianceReport report = haar_invariance_check(h, 20240901, 400000);
        CHECK(report.ok);
        CHECK(report.mean_square_z <= 2.0);
        CHECK(report.total_rel_deviation <= 0.01);
        CHECK(report.probes > 0);
    }
}

TEST_CASE("immoderate translation is refused rather than scored") {
    CHECK_THROWS_AS(haar_invariance_check(geodesic_flow(4.0), 1, 1000), std::invalid_argument);
}

TEST_CASE("wellroundedness excess shrinks linearly in the margin") {
    StarDomainSpec spec;
    spec.theta_lo = 0.2;
    spec.theta_hi = 1.4;
    spec.lipschitz = 0.8;
    spec.inner_radius = 1.0;
    spec.radius = [](double theta) { return 1.0 + 0.8 * std::abs(std::sin(theta)); };
    const WellRoundResult coarse = wellroundedness_ratio(spec, 1.0, 20.0, 0.02);
    const WellRoundResult fine = wellroundedness_ratio(spec, 1.0, 20.0, 0.01);
    CHECK(coarse.ratio > 1.0);
    CHECK(fine.ratio > 1.0);
    CHECK(coarse.ratio > fine.ratio);
    const double halving = (coarse.ratio - 1.0) / (fine.ratio - 1.0);
    CHECK(halving > 1.6);
    CHECK(halving < 2.4);
    CHECK(fine.linear_constant == doctest::Approx((fine.ratio - 1.0) / 0.01));
}

TEST_CASE("oversized margin is rejected up front") {
    StarDomainSpec spec = quarter_annulus(0.0, 1.0);
    spec.regularity_scale = 0.4;
    CHECK_THROWS_AS(wellroundedness_ratio(spec, 1.0, 10.0, 0.2), std::invalid_argument);
}
