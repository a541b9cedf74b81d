#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "orbitcount/lattice.hpp"
#include "orbitcount/scattering.hpp"
#include "orbitcount/special.hpp"

using namespace orbitcount;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("euler phi sieve against known values") {
    const std::vector<std::uint64_t> phi = euler_phi_table(100);
    REQUIRE(phi.size() == 101);
    CHECK(phi[1] == 1);
    CHECK(phi[2] == 1);
    CHECK(phi[12] == 4);
    CHECK(phi[97] == 96);
    CHECK(phi[100] == 40);
    std::uint64_t sum = 0;
    for (std::uint64_t d : {1, 2, 4, 5, 10, 20, 25, 50, 100}) {
        sum += phi[d];
    }
    CHECK(sum == 100);
}

TEST_CASE("modular group multiplicities are the totients") {
    ScatteringOptions options;
    options.c_max = 150.0;
    const ScatteringResult result = scattering_series(preset_sl2z(), {1.5, 0.0}, options);
    REQUIRE(result.frontier_exhausted);
    const std::vector<std::uint64_t> phi = euler_phi_table(150);
    REQUIRE(result.c_values.size() >= 100);
    for (std::size_t i = 0; i < result.c_values.size(); ++i) {
        const auto c = static_cast<std::size_t>(std::llround(result.c_values[i]));
        CHECK(std::abs(result.c_values[i] - static_cast<double>(c)) < 1e-9);
        CHECK(result.multiplicities[i] == doctest::Approx(static_cast<double>(phi[c])));
    }
}

TEST_CASE("modular group series matches the closed form") {
    // Dirichlet part at s is zeta(2s-1)/zeta(2s); the gamma prefactor is
    // sqrt(pi) Gamma(s - 1/2) / Gamma(s).
    const double s = 1.5;
    const double zeta2 = kPi * kPi / 6.0;   // zeta(2s - 1) at s = 1.5
    const double zeta3 = 1.2020569031595943;
    const double prefactor = std::sqrt(kPi) * std::exp(std::lgamma(1.0) - std::lgamma(1.5));
    const double target = prefactor * zeta2 / zeta3;
    ScatteringOptions options;
    options.c_max = 2000.0;
    const ScatteringResult result = scattering_series(preset_sl2z(), {s, 0.0}, options);
    // The cut tail of zeta(2s-1)/zeta(2s) at this box is about 0.61/c_max.
    CHECK(std::abs(result.value.real() / target - 1.0) < 5e-4);
    CHECK(std::abs(result.value.imag()) < 1e-9);
}

TEST_CASE("series diverges at and below the unit line") {
    CHECK_THROWS_AS(scattering_series(preset_sl2z(), {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(scattering_series(preset_sl2z(), {0.75, 2.0}), std::domain_error);
}

TEST_CASE("hecke denominators are multiples of the translation length") {
    const double lambda = hecke_lambda(5);
    ScatteringOptions options;
    options.c_max = 60.0;
    const ScatteringResult result = scattering_series(preset_hecke(5), {1.5, 0.0}, options);
    REQUIRE(result.frontier_exhausted);
    REQUIRE(result.c_values.size() > 10);
    CHECK(result.c_values[0] == doctest::Approx(1.0));
    for (double c : result.c_values) {
        double best = 1e300;
        // Denominators live in Z[lambda] with golden ratio lambda; they
        // are at integer combinations a + b lambda.
        for (int a = -120; a <= 120; ++a) {
            for (int b = -120; b <= 120; ++b) {
                best = std::min(best, std::abs(c - (a + b * lambda)));
            }
        }
        CHECK(best < 1e-6);
    }
}

TEST_CASE("value is monotone in the cut for a positive series") {
    ScatteringOptions small;
    small.c_max = 50.0;
    ScatteringOptions large;
    large.c_max = 500.0;
    const ScatteringResult a = scattering_series(preset_sl2z(), {1.25, 0.0}, small);
    const ScatteringResult b = scattering_series(preset_sl2z(), {1.25, 0.0}, large);
    CHECK(a.value.real() < b.value.real());
    CHECK(b.states > a.states);
}

TEST_CASE("complex parameter keeps the gamma prefactor consistent") {
    const std::complex<double> s{1.5, 2.0};
    ScatteringOptions options;
    options.c_max = 200.0;
    const ScatteringResult result = scattering_series(preset_sl2z(), s, options);
    const std::complex<double> prefactor =
        std::sqrt(kPi) * std::exp(lgamma_complex(s - 0.5) - lgamma_complex(s));
    const std::complex<double> dirichlet = result.dirichlet_sum;
    CHECK(std::abs(result.value - prefactor * dirichlet) < 1e-12 * std::abs(result.value));
}
