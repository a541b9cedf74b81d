#include "orbitcount/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>

#include "orbitcount/eisenstein.hpp"
#include "orbitcount/lattice.hpp"
#include "orbitcount/lift.hpp"
#include "orbitcount/mellin.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/region.hpp"
#include "orbitcount/scattering.hpp"
#include "orbitcount/selberg.hpp"

namespace orbitcount {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kBallConstant = 1.909859317102744;  // 2 / covolume for the integer preset

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    }
    return out;
}

CriterionResult run_criterion(int id, const std::string& name,
                              const std::function<bool(std::string&)>& body) {
    CriterionResult result;
    result.id = id;
    result.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        result.pass = body(result.detail);
    } catch (const std::exception& e) {
        result.pass = false;
        result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

bool walk_matches_oracle(std::string& detail) {
    const LatticeSpec lattice = preset_sl2z();
    const OrbitSet walk = enumerate_orbit(lattice, {1.0, 0.0}, 500.0);
    if (!walk.stabilized) {
        detail = "walk did not stabilize";
        return false;
    }
    const OrbitSet oracle = primitive_points_oracle(500.0);
    bool ok = walk.size() == oracle.size();
    detail = "counts";
    for (double r : {50.0, 100.0, 250.0, 500.0}) {
        const std::size_t a = count_at_radius(walk, r);
        const std::size_t b = count_at_radius(oracle, r);
        ok = ok && a == b;
        detail += " N(" + fmt(r) + ")=" + std::to_string(a) + (a == b ? "=oracle" : "!=oracle");
    }
    return ok;
}

bool ball_count_constant(std::string& detail) {
    const std::vector<double> radii = log_grid(100.0, 3000.0, 60);
    const std::vector<std::size_t> counts = primitive_counts(radii);
    CountCurve curve{radii, counts, "ball"};
    const FitResult fit = fit_constant(curve);
    const double rel = std::abs(fit.constant / kBallConstant - 1.0);
    detail = "fitted " + fmt(fit.constant) + " expected " + fmt(kBallConstant) + " rel " +
             fmt(rel) + " (tol 0.01)";
    return rel <= 0.01;
}

bool ball_count_error_envelope(std::string& detail) {
    const std::vector<double> radii = log_grid(10.0, 3000.0, 100);
    const std::vector<std::size_t> counts = primitive_counts(radii);
    CountCurve curve{radii, counts, "ball"};
    const ExponentFit fit = fit_error_exponent(curve, kBallConstant);
    detail = "sup |N - c0 r^2| / r^(4/3) = " + fmt(fit.sup_normalized) + " (tol 10)";
    if (fit.exponent) {
        detail += ", fitted exponent " + fmt(*fit.exponent);
    }
    return fit.sup_normalized <= 10.0;
}

bool sector_count_share(std::string& detail) {
    const OrbitSet orbit = primitive_points_oracle(2000.0);
    const std::size_t ball = count_at_radius(orbit, 2000.0);
    const std::size_t sector =
        count_in_region(orbit, SectorRegion{0.0, kPi / 3.0}, 2000.0);
    const double share = static_cast<double>(sector) / static_cast<double>(ball);
    const double rel = std::abs(share * 6.0 - 1.0);
    detail = "sector share " + fmt(share) + " of " + std::to_string(ball) + " expected 1/6, rel " +
             fmt(rel) + " (tol 0.02)";
    return rel <= 0.02;
}

bool star_count_constant_ratio(std::string& detail) {
    const OrbitSet orbit = primitive_points_oracle(2600.0);
    const StarProfile profile =
        make_star_profile([](double theta) { return 1.0 + 0.3 * std::cos(2.0 * theta); });
    const std::vector<double> radii = log_grid(100.0, 2000.0, 50);
    const CountCurve star = count_curve(orbit, StarRegion{profile}, radii);
    const CountCurve ball = count_curve(orbit, BallRegion{}, radii);
    const double ratio = fit_constant(star).constant / fit_constant(ball).constant;
    const double expected = 1.045;  // mean of rho^2 over the circle
    const double rel = std::abs(ratio / expected - 1.0);
    detail = "constant ratio " + fmt(ratio) + " expected " + fmt(expected) + " rel " + fmt(rel) +
             " (tol 0.02)";
    return rel <= 0.02;
}

bool residue_recovers_constant(std::string& detail) {
    PrimitiveLatticeEvaluator evaluator(10000.0);
    const ResidueEstimate res = residue_extrapolate(evaluator, {1.5, 1.4, 1.3, 1.25});
    const double rel = std::abs(res.estimate / kBallConstant - 1.0);
    detail = "extrapolated " + fmt(res.estimate) + " expected " + fmt(kBallConstant) + " rel " +
             fmt(rel) + " (tol 0.05)";
    return rel <= 0.05;
}

bool transform_decay_uniformity(std::string& detail) {
    double ratios[2];
    for (int side = 0; side < 2; ++side) {
        double constants[2];
        int idx = 0;
        for (double u : {8.0, 32.0}) {
            const CutoffPair pair(u);
            double c = 0.0;
            for (int i = 0; i < 150; ++i) {
                const double t = std::pow(10.0, 3.0 * i / 149.0);
                const double mag = std::abs(cutoff_mellin(pair, side == 1, {2.0, t}));
                c = std::max(c, mag / std::min(1.0 / t, u / (t * t)));
            }
            constants[idx++] = c;
        }
        ratios[side] = constants[0] / constants[1];
    }
    detail = "decay constant ratios C(8)/C(32): lower " + fmt(ratios[0]) + ", upper " +
             fmt(ratios[1]) + " (window [0.5, 2])";
    return ratios[0] >= 0.5 && ratios[0] <= 2.0 && ratios[1] >= 0.5 && ratios[1] <= 2.0;
}

bool pole_weight_gap_slope(std::string& detail) {
    std::vector<double> log_u;
    std::vector<double> log_gap;
    detail = "max gaps";
    for (double u : {10.0, 100.0, 1000.0}) {
        const WeightGap gap = residue_weight_gap(u, 1.0);
        if (!(gap.max_gap > 0.0)) {
            detail = "vanishing gap at u = " + fmt(u);
            return false;
        }
        log_u.push_back(std::log(u));
        log_gap.push_back(std::log(gap.max_gap));
        detail += " " + fmt(gap.max_gap);
    }
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < log_u.size(); ++i) {
        mean_x += log_u[i];
        mean_y += log_gap[i];
    }
    mean_x /= static_cast<double>(log_u.size());
    mean_y /= static_cast<double>(log_u.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < log_u.size(); ++i) {
        sxx += (log_u[i] - mean_x) * (log_u[i] - mean_x);
        sxy += (log_u[i] - mean_x) * (log_gap[i] - mean_y);
    }
    const double slope = sxy / sxx;
    detail += ", slope " + fmt(slope) + " (required <= -0.9)";
    return slope <= -0.9;
}

bool angular_sandwich_polynomials(std::string& detail) {
    const double lo = 0.0;
    const double hi = kPi / 3.0;
    const double fraction = (hi - lo) / (2.0 * kPi);
    double scaled_min = 1e300;
    double scaled_max = 0.0;
    detail = "";
    for (int degree : {8, 16, 32, 64}) {
        const SelbergPair pair = make_selberg_pair(lo, hi, degree);
        double worst = 1e300;
        const int grid = 20000;
        for (int i = 0; i < grid; ++i) {
            const double theta = 2.0 * kPi * i / grid;
            const double indicator = (theta >= lo && theta <= hi) ? 1.0 : 0.0;
            worst = std::min(worst, pair.upper(theta) - indicator);
            worst = std::min(worst, indicator - pair.lower(theta));
        }
        if (worst < -1e-12) {
            detail = "sandwich violated at degree " + std::to_string(degree) + " by " + fmt(worst);
            return false;
        }
        const double defect_up = pair.upper_coefficient(0).real() - fraction;
        const double defect_lo = fraction - pair.lower_coefficient(0).real();
        if (std::abs(defect_up - pair.defect()) > 1e-14 ||
            std::abs(defect_lo - pair.defect()) > 1e-14) {
            detail = "zeroth defect mismatch at degree " + std::to_string(degree);
            return false;
        }
        for (int k = -degree; k <= degree; ++k) {
            const double bound = selberg_coefficient_bound(pair, k) + 1e-15;
            if (std::abs(pair.upper_coefficient(k)) > bound ||
                std::abs(pair.lower_coefficient(k)) > bound) {
                detail = "coefficient bound violated at degree " + std::to_string(degree) +
                         ", k = " + std::to_string(k);
                return false;
            }
        }
        const double scaled = pair.defect() * degree;
        scaled_min = std::min(scaled_min, scaled);
        scaled_max = std::max(scaled_max, scaled);
    }
    const double spread = scaled_max / scaled_min;
    detail = "sandwich, defects, and coefficient bounds hold; defect*degree spread " +
             fmt(spread) + " (required <= 2)";
    return spread <= 2.0;
}

bool cusp_series_arithmetic(std::string& detail) {
    const LatticeSpec lattice = preset_sl2z();
    ScatteringOptions options;
    options.c_max = 10000.0;
    const ScatteringResult big = scattering_series(lattice, {1.25, 0.0}, options);
    const double target = 4.6664506078212553;  // sqrt(pi) Gamma(3/4)/Gamma(5/4) zeta(3/2)/zeta(5/2)
    const double rel = std::abs(big.value.real() / target - 1.0);
    if (!big.frontier_exhausted) {
        detail = "search frontier not exhausted";
        return false;
    }
    ScatteringOptions small;
    small.c_max = 200.0;
    const ScatteringResult probe = scattering_series(lattice, {1.25, 0.0}, small);
    const std::vector<std::uint64_t> phi = euler_phi_table(200);
    for (std::size_t i = 0; i < probe.c_values.size(); ++i) {
        const auto c = static_cast<std::size_t>(probe.c_values[i]);
        if (probe.multiplicities[i] != static_cast<double>(phi[c])) {
            detail = "multiplicity at c = " + std::to_string(c) + " is " +
                     fmt(probe.multiplicities[i]) + ", totient says " + std::to_string(phi[c]);
            return false;
        }
    }
    detail = "value " + fmt(big.value.real()) + " target " + fmt(target) + " rel " + fmt(rel) +
             " (tol 0.01); multiplicities match totients to 200";
    return rel <= 0.01 && std::abs(big.value.imag()) < 1e-9;
}

StarDomainSpec lift_case_spec(int kind, bool hecke) {
    StarDomainSpec spec;
    spec.inner_radius = hecke ? 0.6 : 0.7;
    const double lo = hecke ? 0.1 : 0.3;
    if (kind == 0) {
        spec.theta_lo = lo;
        spec.theta_hi = lo + kPi / 2.0;
        spec.radius = [](double) { return 1.0; };
    } else if (kind == 1) {
        spec.theta_lo = lo;
        spec.theta_hi = lo + kPi;
        spec.radius = [](double) { return 1.0; };
    } else {
        spec.theta_lo = lo;
        spec.theta_hi = hecke ? 1.2 : 2.0;
        const double cut = hecke ? 0.7 : 1.1;
        spec.radius = [cut](double theta) { return theta < cut ? 0.8 : 1.2; };
        spec.jumps = {cut};
    }
    return spec;
}

bool lift_count_bijection(std::string& detail) {
    const LatticeSpec lattices[2] = {preset_sl2z(), preset_hecke(5)};
    std::size_t cases = 0;
    std::size_t total_points = 0;
    for (int lat = 0; lat < 2; ++lat) {
        for (int kind = 0; kind < 3; ++kind) {
            for (double scale : {5.0, 10.0, 30.0}) {
                const StarDomainSpec spec = lift_case_spec(kind, lat == 1);
                const BijectionReport report =
                    verify_lift_bijection(lattices[lat], {1.0, 0.0}, spec, scale);
                if (!report.counts_match || !report.points_match) {
                    detail = "mismatch: lattice " + lattices[lat].id + " kind " +
                             std::to_string(kind) + " scale " + fmt(scale) + " orbit " +
                             std::to_string(report.orbit_count) + " group " +
                             std::to_string(report.group_count);
                    return false;
                }
                ++cases;
                total_points += report.orbit_count;
            }
        }
    }
    detail = std::to_string(cases) + " cases, " + std::to_string(total_points) +
             " points, every group selection bijects onto its orbit selection";
    return true;
}

bool lift_wellroundedness_linearity(std::string& detail) {
    detail = "halving factors";
    for (double lipschitz : {0.3, 1.5}) {
        StarDomainSpec spec;
        spec.theta_lo = 0.2;
        spec.theta_hi = 1.4;
        spec.lipschitz = lipschitz;
        spec.inner_radius = 1.0;
        spec.regularity_scale = 1.0;
        spec.radius = [lipschitz](double theta) {
            return 1.0 + lipschitz * std::abs(std::sin(theta));
        };
        double previous_excess = 0.0;
        for (double eta : {0.02, 0.01, 0.005}) {
            const WellRoundResult result = wellroundedness_ratio(spec, 1.0, 20.0, eta);
            if (!std::isfinite(result.linear_constant) || !(result.ratio > 1.0)) {
                detail = "degenerate ratio at lipschitz " + fmt(lipschitz) + ", eta " + fmt(eta);
                return false;
            }
            if (previous_excess > 0.0) {
                const double factor = previous_excess / (result.ratio - 1.0);
                detail += " " + fmt(factor);
                if (factor < 1.6 || factor > 2.4) {
                    detail += " outside [1.6, 2.4]";
                    return false;
                }
            }
            previous_excess = result.ratio - 1.0;
        }
    }
    detail += " all within [1.6, 2.4]";
    return true;
}

bool smooth_sharp_sandwich(std::string& detail) {
    const OrbitSet orbit = enumerate_orbit(preset_sl2z(), {1.0, 0.0}, 250.0);
    std::size_t checks = 0;
    for (double r : {50.0, 100.0, 200.0}) {
        for (double u : {4.0, 8.0, 16.0}) {
            const SandwichResult result = sandwich_check(orbit, r, u);
            if (!result.ok) {
                detail = "sandwich failed at r " + fmt(r) + ", u " + fmt(u) + ": lower " +
                         fmt(result.lower_sum) + " count " + std::to_string(result.count) +
                         " upper " + fmt(result.upper_sum);
                return false;
            }
            ++checks;
        }
    }
    detail = std::to_string(checks) + " radius/sharpness combinations hold";
    return true;
}

bool twisted_symmetry_vanishing(std::string& detail) {
    const OrbitSet orbit = enumerate_orbit(preset_sl2z(), {1.0, 0.0}, 200.0);
    const double base = eisenstein_sum(orbit, {2.0, 0.0}).value.real();
    detail = "relative twisted sums";
    for (int n : {1, 3, 5}) {
        const double mag = std::abs(twisted_eisenstein_sum(orbit, n, {2.0, 0.0}).value);
        const double rel = mag / base;
        detail += " n=" + std::to_string(n) + ": " + fmt(rel);
        if (rel > 1e-12) {
            detail += " above 1e-12";
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria(
    const std::function<void(const CriterionResult&)>& on_done) {
    struct Entry {
        int id;
        const char* name;
        bool (*body)(std::string&);
    };
    const Entry entries[] = {
        {1, "walk-matches-arithmetic-oracle", walk_matches_oracle},
        {2, "ball-count-constant", ball_count_constant},
        {3, "ball-count-error-envelope", ball_count_error_envelope},
        {4, "sector-count-share", sector_count_share},
        {5, "star-count-constant-ratio", star_count_constant_ratio},
        {6, "residue-recovers-constant", residue_recovers_constant},
        {7, "transform-decay-uniformity", transform_decay_uniformity},
        {8, "pole-weight-gap-slope", pole_weight_gap_slope},
        {9, "angular-sandwich-polynomials", angular_sandwich_polynomials},
        {10, "cusp-series-arithmetic", cusp_series_arithmetic},
        {11, "lift-count-bijection", lift_count_bijection},
        {12, "lift-wellroundedness-linearity", lift_wellroundedness_linearity},
        {13, "smooth-sharp-sandwich", smooth_sharp_sandwich},
        {14, "twisted-symmetry-vanishing", twisted_symmetry_vanishing},
    };
    std::vector<CriterionResult> results;
    for (const Entry& entry : entries) {
        results.push_back(run_criterion(entry.id, entry.name, entry.body));
        if (on_done) {
            on_done(results.back());
        }
    }
    return results;
}

}  // namespace orbitcount
