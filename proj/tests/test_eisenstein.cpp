#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "orbitcount/eisenstein.hpp"
#include "orbitcount/lattice.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/selberg.hpp"

using namespace orbitcount;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("series rejects parameters at or below the convergence edge") {
    const OrbitSet orbit = primitive_points_oracle(50.0);
    CHECK_THROWS_AS(eisenstein_sum(orbit, {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(eisenstein_sum(orbit, {0.5, 3.0}), std::domain_error);
    CHECK_NOTHROW(eisenstein_sum(orbit, {1.0001, 0.0}));
}

TEST_CASE("tail bound covers the march from one cap to a larger one") {
    const OrbitSet small = primitive_points_oracle(200.0);
    const OrbitSet large = primitive_points_oracle(400.0);
    for (double sigma : {1.25, 1.5, 2.0}) {
        const SeriesValue a = eisenstein_sum(small, {sigma, 0.0});
        const SeriesValue b = eisenstein_sum(large, {sigma, 0.0});
        CHECK(std::abs(b.value.real() - a.value.real()) <= a.tail_bound);
        CHECK(b.tail_bound < a.tail_bound);
    }
}

TEST_CASE("sum against the zeta quotient at an even integer") {
    // Sum over coprime pairs of |p|^(-2s) at s = 2 is the lattice sum
    // divided by zeta(4); the lattice sum at exponent 4 is 4 zeta(2) L(2)
    // with L the alternating four-periodic series, so the target is
    // 4 zeta(2) beta(2) / zeta(4). beta(2) is Catalan's constant.
    const double catalan = 0.9159655941772190150546;
    const double zeta2 = kPi * kPi / 6.0;
    const double zeta4 = kPi * kPi * kPi * kPi / 90.0;
    const double target = 4.0 * zeta2 * catalan / zeta4;
    const OrbitSet orbit = primitive_points_oracle(2000.0);
    const SeriesValue got = eisenstein_sum(orbit, {2.0, 0.0});
    CHECK(std::abs(got.value.real() - target) <= got.tail_bound);
    CHECK(std::abs(got.value.real() / target - 1.0) < 1e-5);
}

TEST_CASE("growth constant window tracks the cap side envelope") {
    const OrbitSet orbit = primitive_points_oracle(400.0);
    const double full = orbit_growth_constant(orbit, 1.0, 400.0);
    const double window = orbit_growth_constant(orbit);
    CHECK(window <= full);
    // Near the cap the normalized count settles close to 6 / pi^2 per
    // unit disc area times pi, i.e. 6/pi.
    CHECK(window > 1.8);
    CHECK(window < 2.1);
    CHECK(full > 2.5);
}

TEST_CASE("transform is exactly linear in the test function") {
    const OrbitSet orbit = primitive_points_oracle(120.0);
    auto f = [](double x) { return x * x; };
    auto g = [](double x) { return std::cos(3.0 * x); };
    const double tf = theta_transform(orbit, f, 0.2, 0.9, 100.0);
    const double tg = theta_transform(orbit, g, 0.2, 0.9, 100.0);
    const double tfg = theta_transform(
        orbit, [&](double x) { return 2.5 * f(x) - 1.75 * g(x); }, 0.2, 0.9, 100.0);
    CHECK(tfg == doctest::Approx(2.5 * tf - 1.75 * tg).epsilon(1e-13));
}

TEST_CASE("transform refuses support beyond the enumeration cap") {
    const OrbitSet orbit = primitive_points_oracle(100.0);
    CHECK_THROWS_AS(theta_transform(orbit, [](double) { return 1.0; }, 0.5, 1.2, 90.0),
                    std::out_of_range);
    CHECK_NOTHROW(theta_transform(orbit, [](double) { return 1.0; }, 0.5, 1.1, 90.0));
}

TEST_CASE("twisted transform conjugates under sign flip of the frequency") {
    const OrbitSet orbit = primitive_points_oracle(150.0);
    auto f = [](double x) { return std::exp(-3.0 * x); };
    const std::complex<double> plus = theta_transform_twisted(orbit, 3, f, 0.1, 1.0, 140.0);
    const std::complex<double> minus = theta_transform_twisted(orbit, -3, f, 0.1, 1.0, 140.0);
    CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-12));
    CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-12));
}

TEST_CASE("twisted series vanishes on the four fold symmetric orbit") {
    const OrbitSet orbit = primitive_points_oracle(150.0);
    const double base = eisenstein_sum(orbit, {2.0, 0.0}).value.real();
    for (int n : {1, 2, 3, 6}) {
        if (n % 4 == 0) {
            continue;
        }
        const SeriesValue twisted = twisted_eisenstein_sum(orbit, n, {2.0, 0.0});
        CHECK(std::abs(twisted.value) / base < 1e-12);
    }
}

TEST_CASE("angular split reassembles a smooth sector weight") {
    // Decomposing the trig polynomial angularly and summing frequency by
    // frequency must reproduce the direct double sum.
    const OrbitSet orbit = primitive_points_oracle(140.0);
    const SelbergPair pair = make_selberg_pair(0.4, 1.7, 12);
    auto f = [](double x) { return std::exp(-2.0 * x * x); };
    const double scale = 120.0;
    double direct = 0.0;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        const double ratio = orbit.norms[i] / scale;
        if (ratio < 0.1 || ratio > 1.0) {
            continue;
        }
        const double theta = std::atan2(orbit.points[i].y, orbit.points[i].x);
        direct += f(ratio) * pair.upper(theta);
    }
    std::complex<double> split = 0.0;
    for (int k = -pair.degree; k <= pair.degree; ++k) {
        split += pair.upper_coefficient(k) * theta_transform_twisted(orbit, -k, f, 0.1, 1.0, scale);
    }
    CHECK(split.real() == doctest::Approx(direct).epsilon(1e-10));
    CHECK(std::abs(split.imag()) < 1e-10 * std::abs(direct));
}

TEST_CASE("evaluators from points and from the gcd sweep agree") {
    const OrbitSet orbit = primitive_points_oracle(500.0);
    OrbitEvaluator from_points(orbit);
    PrimitiveLatticeEvaluator from_sweep(500.0);
    const std::vector<double> sigmas = {1.3, 1.8};
    const std::vector<SeriesValue> a = from_points.eval(sigmas);
    const std::vector<SeriesValue> b = from_sweep.eval(sigmas);
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a[i].value.real() == doctest::Approx(b[i].value.real()).epsilon(1e-12));
    }
    CHECK(from_points.tail_model_constant() ==
          doctest::Approx(from_sweep.tail_model_constant()).epsilon(1e-12));
}

TEST_CASE("residue extrapolation recovers a planted quadratic count") {
    // Synthetic evaluator with N(r) = floor(r^2): one point at every
    // integer squared norm, so E(sigma) is the zeta sum truncated at cap^2
    // (evaluated by Euler-Maclaurin) and the extrapolation must land at 1.
    class Synthetic : public EisensteinEvaluator {
      public:
        double r_cap() const override { return 10000.0; }
        std::vector<SeriesValue> eval(const std::vector<double>& sigmas) override {
            const double k = r_cap() * r_cap();
            std::vector<SeriesValue> out;
            for (double sigma : sigmas) {
                const double beyond = std::pow(k, 1.0 - sigma) / (sigma - 1.0) +
                                      0.5 * std::pow(k, -sigma) +
                                      sigma / 12.0 * std::pow(k, -sigma - 1.0);
                SeriesValue v;
                v.value = std::riemann_zeta(sigma) - beyond;
                v.r_cap = r_cap();
                v.terms = static_cast<std::size_t>(k);
                v.tail_bound = std::pow(r_cap(), 2.0 - 2.0 * sigma) / (sigma - 1.0);
                out.push_back(v);
            }
            return out;
        }
        double tail_model_constant() override { return 1.0; }
    };
    Synthetic evaluator;
    const ResidueEstimate res = residue_extrapolate(evaluator, {1.5, 1.4, 1.3, 1.25});
    CHECK(res.extrapolated);
    CHECK(std::abs(res.estimate - 1.0) < 1e-3);
}

TEST_CASE("residue extrapolation refuses a cap too small for the schedule") {
    const OrbitSet orbit = primitive_points_oracle(100.0);
    CHECK_THROWS_AS(residue_extrapolate(orbit, {1.5, 1.4, 1.3, 1.05}), std::invalid_argument);
}

TEST_CASE("residue schedule must decrease strictly toward one") {
    PrimitiveLatticeEvaluator evaluator(2000.0);
    CHECK_THROWS_AS(residue_extrapolate(evaluator, {1.4, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(residue_extrapolate(evaluator, {1.5, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(residue_extrapolate(evaluator, {1.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(residue_extrapolate(evaluator, {}), std::invalid_argument);
}

TEST_CASE("line reconstruction matches direct smooth counts") {
    const OrbitSet orbit = primitive_points_oracle(210.0);
    const InversionCheck check = radial_inversion_check(orbit, 50.0, 8.0, 3.0);
    CHECK(std::abs(check.rel_err_lower) < 1e-6);
    CHECK(std::abs(check.rel_err_upper) < 1e-6);
    CHECK(check.tail_lower < 0.5);
    CHECK(check.tail_upper < 0.5);
    CHECK(check.direct_lower > 0.0);
    CHECK(check.direct_upper > check.direct_lower);
}

TEST_CASE("line reconstruction refuses support beyond the cap") {
    const OrbitSet orbit = primitive_points_oracle(54.0);
    CHECK_THROWS_AS(radial_inversion_check(orbit, 50.0, 8.0, 3.0), std::out_of_range);
}
