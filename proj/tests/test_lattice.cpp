#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "orbitcount/geometry.hpp"
#include "orbitcount/lattice.hpp"

using namespace orbitcount;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Hyperbolic area of the standard fundamental domain by rejection sampling:
// points drawn from |x| <= 1/2, y >= y0 under the dxdy/y^2 density, counted
// when |z| >= 1. Exact area above y0 of the strip is 1/y0 per unit width.
double sl2z_covolume_mc(std::uint64_t samples) {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return (z ^ (z >> 31)) >> 11;
    };
    auto uniform = [&next]() { return (next() + 0.5) * 0x1.0p-53; };
    const double y0 = 0.5;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double x = uniform() - 0.5;
        // Inverse transform for the 1/y^2 marginal truncated at y0.
        const double y = y0 / uniform();
        if (x * x + y * y >= 1.0) {
            ++hits;
        }
    }
    const double strip_area = 1.0 / y0;
    return strip_area * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace

TEST_CASE("modular group preset carries the classical invariants") {
    const LatticeSpec spec = preset_sl2z();
    CHECK(spec.id == "sl2z");
    CHECK(spec.covolume == doctest::Approx(kPi / 3.0));
    CHECK(spec.contains_minus_id);
    REQUIRE(spec.cusps.size() == 1);
    CHECK(spec.cusps[0].width == doctest::Approx(1.0));
    for (const Mat2& g : spec.generators) {
        CHECK(g.has_exact());
        CHECK(std::abs(g.det() - 1.0) < 1e-15);
    }
}

TEST_CASE("generator list is closed under inverses") {
    for (const LatticeSpec& spec : {preset_sl2z(), preset_hecke(5), preset_hecke(7)}) {
        for (const Mat2& g : spec.generators) {
            const Mat2 inv = g.inverse();
            bool found = false;
            for (const Mat2& h : spec.generators) {
                found = found || (std::abs(h.a - inv.a) < 1e-12 && std::abs(h.b - inv.b) < 1e-12 &&
                                  std::abs(h.c - inv.c) < 1e-12 && std::abs(h.d - inv.d) < 1e-12);
            }
            CHECK(found);
        }
    }
}

TEST_CASE("monte carlo area of the modular fundamental domain") {
    const double area = sl2z_covolume_mc(2000000);
    CHECK(std::abs(area / (kPi / 3.0) - 1.0) < 0.01);
}

TEST_CASE("hecke translation length follows the cosine rule") {
    CHECK(hecke_lambda(3) == doctest::Approx(1.0));
    CHECK(hecke_lambda(4) == doctest::Approx(std::sqrt(2.0)));
    CHECK(hecke_lambda(5) == doctest::Approx(1.6180339887498948));
    CHECK(hecke_lambda(6) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("hecke preset area grows toward the strip limit") {
    CHECK(preset_hecke(5).covolume == doctest::Approx(kPi * (1.0 - 2.0 / 5.0)));
    CHECK(preset_hecke(12).covolume == doctest::Approx(kPi * (1.0 - 2.0 / 12.0)));
    CHECK(preset_hecke(3).covolume == doctest::Approx(preset_sl2z().covolume));
}

TEST_CASE("hecke cusp width equals the translation length") {
    const LatticeSpec spec = preset_hecke(5);
    REQUIRE(spec.cusps.size() == 1);
    CHECK(spec.cusps[0].width == doctest::Approx(hecke_lambda(5)));
}

TEST_CASE("registry parses preset ids and rejects junk") {
    CHECK(lattice_by_id("sl2z").id == "sl2z");
    CHECK(lattice_by_id("hecke:7").covolume == doctest::Approx(kPi * (1.0 - 2.0 / 7.0)));
    CHECK_THROWS_AS(lattice_by_id("hecke:2"), std::invalid_argument);
    CHECK_THROWS_AS(lattice_by_id("so3"), std::invalid_argument);
}

TEST_CASE("minus identity extension is idempotent on the modular group") {
    const ExtendResult r = extend_with_minus_id(preset_sl2z());
    CHECK_FALSE(r.changed);
    CHECK(r.lattice.generators.size() == preset_sl2z().generators.size());
}

TEST_CASE("minus identity witness word multiplies out correctly") {
    const LatticeSpec spec = preset_sl2z();
    REQUIRE(spec.contains_minus_id);
    REQUIRE_FALSE(spec.minus_id_word.empty());
    Mat2 m = Mat2::identity();
    for (char label : spec.minus_id_word) {
        bool applied = false;
        for (std::size_t i = 0; i < spec.generator_labels.size(); ++i) {
            if (spec.generator_labels[i] == std::string(1, label)) {
                m = m * spec.generators[i];
                applied = true;
                break;
            }
        }
        REQUIRE(applied);
    }
    CHECK(m.a == doctest::Approx(-1.0));
    CHECK(m.d == doctest::Approx(-1.0));
    CHECK(std::abs(m.b) < 1e-12);
    CHECK(std::abs(m.c) < 1e-12);
}

TEST_CASE("cusp witness word fixes the cusp direction") {
    for (const LatticeSpec& spec : {preset_sl2z(), preset_hecke(5)}) {
        REQUIRE(spec.cusps.size() == 1);
        const CuspData& cusp = spec.cusps[0];
        REQUIRE_FALSE(cusp.witness_word.empty());
        Mat2 m = Mat2::identity();
        for (char label : cusp.witness_word) {
            for (std::size_t i = 0; i < spec.generator_labels.size(); ++i) {
                if (spec.generator_labels[i] == std::string(1, label)) {
                    m = m * spec.generators[i];
                    break;
                }
            }
        }
        const PlaneVector moved = m * cusp.direction;
        CHECK(moved.x == doctest::Approx(cusp.direction.x));
        CHECK(moved.y == doctest::Approx(cusp.direction.y));
        CHECK(std::abs(m.b - cusp.width) < 1e-12);
    }
}
