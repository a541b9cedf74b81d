#include <benchmark/benchmark.h>

#include <complex>

#include "orbitcount/eisenstein.hpp"
#include "orbitcount/lattice.hpp"
#include "orbitcount/lift.hpp"
#include "orbitcount/mellin.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/selberg.hpp"

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

void BM_OrbitWalk(benchmark::State& state) {
    const orbitcount::LatticeSpec lattice = orbitcount::preset_sl2z();
    const double cap = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const orbitcount::OrbitSet orbit = orbitcount::enumerate_orbit(lattice, {1.0, 0.0}, cap);
        benchmark::DoNotOptimize(orbit.points.data());
        state.counters["points"] = static_cast<double>(orbit.size());
    }
}
BENCHMARK(BM_OrbitWalk)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PrimitiveOracle(benchmark::State& state) {
    const double cap = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const orbitcount::OrbitSet orbit = orbitcount::primitive_points_oracle(cap);
        benchmark::DoNotOptimize(orbit.points.data());
    }
}
BENCHMARK(BM_PrimitiveOracle)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SeriesSum(benchmark::State& state) {
    const orbitcount::OrbitSet orbit = orbitcount::primitive_points_oracle(500.0);
    for (auto _ : state) {
        const orbitcount::SeriesValue v = orbitcount::eisenstein_sum(orbit, {1.25, 0.0});
        benchmark::DoNotOptimize(v.value);
    }
    state.counters["terms"] = static_cast<double>(orbit.size());
}
BENCHMARK(BM_SeriesSum)->Unit(benchmark::kMillisecond);

void BM_SelbergPair(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const orbitcount::SelbergPair pair = orbitcount::make_selberg_pair(0.0, kPi / 3.0, degree);
        benchmark::DoNotOptimize(pair.upper_coefficients.data());
    }
}
BENCHMARK(BM_SelbergPair)->Arg(16)->Arg(64)->Arg(256);

void BM_CutoffTransform(benchmark::State& state) {
    const orbitcount::CutoffPair pair(8.0);
    const std::complex<double> s{2.0, static_cast<double>(state.range(0))};
    for (auto _ : state) {
        const std::complex<double> v = orbitcount::cutoff_mellin(pair, false, s);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_CutoffTransform)->Arg(1)->Arg(100)->Arg(1000);

void BM_LiftBijection(benchmark::State& state) {
    const orbitcount::LatticeSpec lattice = orbitcount::preset_sl2z();
    orbitcount::StarDomainSpec spec;
    spec.theta_lo = 0.3;
    spec.theta_hi = 0.3 + kPi / 2.0;
    spec.radius = [](double) { return 1.0; };
    spec.inner_radius = 0.7;
    const double scale = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const orbitcount::BijectionReport report =
            orbitcount::verify_lift_bijection(lattice, {1.0, 0.0}, spec, scale);
        benchmark::DoNotOptimize(report.orbit_count);
    }
}
BENCHMARK(BM_LiftBijection)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
