#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "orbitcount/lattice.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/region.hpp"

using namespace orbitcount;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("ball entry scale is the norm") {
    CHECK(region_entry_scale(BallRegion{}, {3.0, 4.0}) == doctest::Approx(5.0));
}

TEST_CASE("sector entry scale is infinite outside the angular window") {
    const SectorRegion sector{0.0, kPi / 2.0};
    CHECK(region_entry_scale(sector, {1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::isinf(region_entry_scale(sector, {-1.0, 1.0})));
    CHECK(std::isinf(region_entry_scale(sector, {1.0, -1.0})));
}

TEST_CASE("sector window wraps through zero") {
    const SectorRegion sector{7.0 * kPi / 4.0, kPi / 2.0};
    CHECK_FALSE(std::isinf(region_entry_scale(sector, {1.0, 0.1})));
    CHECK_FALSE(std::isinf(region_entry_scale(sector, {1.0, -0.1})));
    CHECK(std::isinf(region_entry_scale(sector, {0.0, 1.0})));
}

TEST_CASE("ellipse entry scale uses the shape preimage") {
    const EllipseRegion ellipse{diag_scale(2.0)};
    // shape maps (x, y) to (2x, y/2), so (4, 0) enters at scale 2.
    CHECK(region_entry_scale(ellipse, {4.0, 0.0}) == doctest::Approx(2.0));
    CHECK(region_entry_scale(ellipse, {0.0, 1.0}) == doctest::Approx(2.0));
}

TEST_CASE("star entry scale divides by the direction profile") {
    const StarProfile profile =
        make_star_profile([](double theta) { return 1.0 + 0.5 * std::cos(theta); });
    const StarRegion star{profile};
    CHECK(region_entry_scale(star, {3.0, 0.0}) == doctest::Approx(2.0));
    CHECK(region_entry_scale(star, {0.0, 2.0}) == doctest::Approx(2.0));
}

TEST_CASE("region counts are consistent slices of the ball count") {
    const OrbitSet orbit = primitive_points_oracle(200.0);
    const std::size_t ball = count_in_region(orbit, BallRegion{}, 150.0);
    CHECK(ball == count_at_radius(orbit, 150.0));

    std::size_t covered = 0;
    for (int k = 0; k < 6; ++k) {
        covered += count_in_region(orbit, SectorRegion{k * kPi / 3.0, kPi / 3.0}, 150.0);
    }
    // Every boundary ray of the six-fold split passes through orbit points,
    // and those are counted by both adjacent sectors.
    CHECK(covered >= ball);
    CHECK(covered <= ball + 64);
}

TEST_CASE("counting past the enumeration cap throws") {
    const OrbitSet orbit = primitive_points_oracle(100.0);
    CHECK_THROWS_AS(count_in_region(orbit, BallRegion{}, 101.0), std::out_of_range);
    const StarProfile profile = make_star_profile([](double) { return 1.25; });
    CHECK_THROWS_AS(count_in_region(orbit, StarRegion{profile}, 90.0), std::out_of_range);
    CHECK_NOTHROW(count_in_region(orbit, StarRegion{profile}, 79.0));
}

TEST_CASE("count curve equals pointwise counts") {
    const OrbitSet orbit = primitive_points_oracle(120.0);
    const std::vector<double> radii = {10.0, 30.0, 60.0, 120.0};
    const CountCurve curve = count_curve(orbit, BallRegion{}, radii);
    REQUIRE(curve.counts.size() == radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(curve.counts[i] == count_in_region(orbit, BallRegion{}, radii[i]));
    }
}

TEST_CASE("constant fit recovers a planted quadratic") {
    CountCurve curve;
    curve.label = "synthetic";
    for (int i = 0; i < 24; ++i) {
        const double r = 10.0 * std::pow(12.0, i / 23.0);
        curve.radii.push_back(r);
        curve.counts.push_back(static_cast<std::size_t>(1.7 * r * r));
    }
    const FitResult fit = fit_constant(curve);
    CHECK(std::abs(fit.constant - 1.7) < 0.01);
    CHECK(fit.samples == curve.radii.size());
}

TEST_CASE("constant fit rejects narrow or short grids") {
    CountCurve narrow;
    for (double r : {100.0, 110.0, 120.0, 130.0, 140.0, 150.0}) {
        narrow.radii.push_back(r);
        narrow.counts.push_back(static_cast<std::size_t>(r * r));
    }
    CHECK_THROWS_AS(fit_constant(narrow), std::invalid_argument);
    CountCurve tiny;
    tiny.radii = {1.0, 100.0};
    tiny.counts = {1, 10000};
    CHECK_THROWS_AS(fit_constant(tiny), std::invalid_argument);
}

TEST_CASE("error exponent of a planted power law") {
    CountCurve curve;
    for (int i = 0; i < 60; ++i) {
        const double r = 10.0 * std::pow(100.0, i / 59.0);
        curve.radii.push_back(r);
        curve.counts.push_back(static_cast<std::size_t>(2.0 * r * r + 3.0 * std::pow(r, 1.2)));
    }
    const ExponentFit fit = fit_error_exponent(curve, 2.0);
    REQUIRE(fit.exponent.has_value());
    CHECK(std::abs(*fit.exponent - 1.2) < 0.15);
    CHECK(fit.sup_normalized < 3.5);
}

TEST_CASE("sector profile sums to the ball count") {
    const OrbitSet orbit = primitive_points_oracle(80.0);
    const std::vector<std::size_t> bins = sector_profile(orbit, 80.0, 16);
    REQUIRE(bins.size() == 16);
    const std::size_t total = std::accumulate(bins.begin(), bins.end(), std::size_t{0});
    CHECK(total == count_at_radius(orbit, 80.0));
    // Four-fold symmetry of the primitive lattice points.
    for (int k = 0; k < 4; ++k) {
        CHECK(bins[k] == bins[k + 4]);
    }
}

TEST_CASE("smooth sandwich brackets the sharp count") {
    const OrbitSet orbit = enumerate_orbit(preset_sl2z(), {1.0, 0.0}, 150.0);
    for (double u : {4.0, 16.0}) {
        const SandwichResult result = sandwich_check(orbit, 100.0, u);
        CHECK(result.ok);
        CHECK(result.lower_sum <= static_cast<double>(result.count));
        CHECK(static_cast<double>(result.count) <=
              result.upper_sum + static_cast<double>(result.count_shrunk));
    }
}
