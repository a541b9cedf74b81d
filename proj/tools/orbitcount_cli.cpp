// Command line front end. One invocation runs one experiment, described by a
// config file whose `kind` key picks the computation; --verify runs the
// built-in acceptance suite instead. Results go to stdout; with --out DIR a
// JSON report (and for counting kinds a CSV curve) is written there, named
// <kind>-<config digest>. Exit status: 0 on success, 1 on input or
// environment errors, 2 when a mathematical check fails. Failures also
// emit a single-line machine readable error JSON on stdout.
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "orbitcount/eisenstein.hpp"
#include "orbitcount/lattice.hpp"
#include "orbitcount/lift.hpp"
#include "orbitcount/orbit.hpp"
#include "orbitcount/orbit_cache.hpp"
#include "orbitcount/region.hpp"
#include "orbitcount/scattering.hpp"
#include "orbitcount/selberg.hpp"
#include "orbitcount/textio.hpp"
#include "orbitcount/verify.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr const char* kCsvHeader = "lattice,region,R,N,c_fit,residual,exponent";

using nlohmann::json;
using namespace orbitcount;

// First single-quoted token of an error message; config errors quote the
// offending key there.
std::string quoted_token(const std::string& message) {
    const auto open = message.find('\'');
    if (open == std::string::npos) {
        return "";
    }
    const auto close = message.find('\'', open + 1);
    if (close == std::string::npos) {
        return "";
    }
    return message.substr(open + 1, close - open - 1);
}

void emit_error_json(const std::string& type, const std::string& message) {
    json err;
    err["error"]["type"] = type;
    err["error"]["message"] = message;
    const std::string field = quoted_token(message);
    if (!field.empty()) {
        err["error"]["field"] = field;
    }
    std::printf("%s\n", err.dump().c_str());
    std::fflush(stdout);
}

using CsvRow = std::array<std::string, 7>;

void write_experiment_csv(const std::string& path, const std::string& digest,
                          const std::vector<CsvRow>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open csv path '" + path + "'");
    }
    out << "# config_digest=" << digest << "\n" << kCsvHeader << "\n";
    for (const CsvRow& row : rows) {
        out << row[0] << ',' << row[1] << ',' << row[2] << ',' << row[3] << ',' << row[4] << ','
            << row[5] << ',' << row[6] << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed for csv path '" + path + "'");
    }
}

struct RunContext {
    ConfigFile config;
    std::string cache_dir;
    std::string lattice_id = "sl2z";
    PlaneVector base{1.0, 0.0};
    json inputs;
    json outputs;
    std::vector<std::string> failures;
    std::string region_label;
    std::vector<CsvRow> csv_rows;
};

void fail_check(RunContext& ctx, const std::string& message) {
    ctx.failures.push_back(message);
}

OrbitSet load_orbit(RunContext& ctx, double default_cap) {
    ctx.lattice_id = ctx.config.get_or("lattice", "sl2z");
    const double cap = ctx.config.get_double_or("cap", default_cap);
    const std::vector<double> base = ctx.config.has("base")
                                         ? ctx.config.get_doubles("base")
                                         : std::vector<double>{1.0, 0.0};
    if (base.size() != 2) {
        throw ConfigError("config: key 'base' needs exactly two numbers");
    }
    ctx.inputs["lattice"] = ctx.lattice_id;
    ctx.inputs["base"] = base;
    ctx.inputs["cap"] = cap;
    const LatticeSpec lattice = lattice_by_id(ctx.lattice_id);
    const PlaneVector v{base[0], base[1]};
    ctx.base = v;
    EnumOptions options;
    if (ctx.config.has("max_depth")) {
        const long max_depth = ctx.config.get_long("max_depth");
        if (max_depth < 1) {
            throw ConfigError("config: key 'max_depth' must be at least 1");
        }
        options.max_depth = static_cast<std::size_t>(max_depth);
        ctx.inputs["max_depth"] = max_depth;
    }
    OrbitSet orbit;
    if (!ctx.cache_dir.empty()) {
        bool hit = false;
        orbit = cached_enumerate_orbit(ctx.cache_dir, lattice, v, cap, options, &hit);
        ctx.outputs["cache_hit"] = hit;
    } else {
        orbit = enumerate_orbit(lattice, v, cap, options);
    }
    ctx.outputs["stabilized"] = orbit.stabilized;
    ctx.outputs["orbit_points"] = orbit.size();
    if (!orbit.stabilized) {
        fail_check(ctx, "orbit enumeration did not stabilize within the word budget");
    }
    return orbit;
}

// Radius grid for an experiment: an explicit increasing `radii` list, a
// single `radius`, or a log spaced radius_lo/radius_hi/points block. With
// require_explicit the defaults are disabled and `radii` must be present.
std::vector<double> radius_grid(RunContext& ctx, bool require_explicit, double lo_default,
                                double hi_default, long points_default) {
    if (ctx.config.has("radii")) {
        const std::vector<double> radii = ctx.config.get_doubles("radii");
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (!(radii[i] > 0.0) || (i > 0 && radii[i] <= radii[i - 1])) {
                throw ConfigError("config: key 'radii' must be positive and strictly increasing");
            }
        }
        ctx.inputs["radii"] = radii;
        return radii;
    }
    if (ctx.config.has("radius")) {
        const double radius = ctx.config.get_double("radius");
        if (!(radius > 0.0)) {
            throw ConfigError("config: key 'radius' must be positive");
        }
        ctx.inputs["radius"] = radius;
        return {radius};
    }
    if (require_explicit) {
        throw ConfigError("config: missing key 'radii'");
    }
    const double lo = ctx.config.get_double_or("radius_lo", lo_default);
    const double hi = ctx.config.get_double_or("radius_hi", hi_default);
    const long points = ctx.config.get_long_or("points", points_default);
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw ConfigError("config: need 0 < 'radius_lo' < radius_hi and points >= 2");
    }
    ctx.inputs["radius_lo"] = lo;
    ctx.inputs["radius_hi"] = hi;
    ctx.inputs["points"] = points;
    std::vector<double> out;
    for (long i = 0; i < points; ++i) {
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    }
    return out;
}

bool fit_feasible(const std::vector<double>& radii) {
    return radii.size() >= 5 && radii.back() >= 10.0 * radii.front();
}

void fill_curve_rows(RunContext& ctx, const CountCurve& curve, const FitResult* fit,
                     const std::optional<double>& exponent) {
    const std::string c_fit = fit ? format_double(fit->constant) : "";
    const std::string exp_cell = exponent ? format_double(*exponent) : "";
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        const double r = curve.radii[i];
        const double n = static_cast<double>(curve.counts[i]);
        std::string residual;
        if (fit) {
            residual = format_double(n / (fit->constant * r * r) - 1.0);
        }
        ctx.csv_rows.push_back(CsvRow{ctx.lattice_id, ctx.region_label, format_double(r),
                                      std::to_string(curve.counts[i]), c_fit, residual, exp_cell});
    }
}

StarDomainSpec domain_from_config(RunContext& ctx) {
    StarDomainSpec spec;
    spec.theta_lo = ctx.config.get_double("theta_lo");
    spec.theta_hi = ctx.config.get_double("theta_hi");
    spec.inner_radius = ctx.config.get_double_or("inner_radius", 0.5);
    spec.lipschitz = ctx.config.get_double_or("lipschitz", 0.0);
    spec.regularity_scale = ctx.config.get_double_or("regularity_scale", 1.0);
    const double offset = ctx.config.get_double_or("profile_offset", 1.0);
    const double amplitude = ctx.config.get_double_or("profile_amplitude", 0.0);
    const long frequency = ctx.config.get_long_or("profile_frequency", 2);
    spec.radius = [offset, amplitude, frequency](double theta) {
        return offset + amplitude * std::cos(static_cast<double>(frequency) * theta);
    };
    if (spec.lipschitz == 0.0 && amplitude != 0.0) {
        spec.lipschitz = std::abs(amplitude) * static_cast<double>(frequency);
    }
    ctx.inputs["theta_lo"] = spec.theta_lo;
    ctx.inputs["theta_hi"] = spec.theta_hi;
    ctx.inputs["inner_radius"] = spec.inner_radius;
    ctx.inputs["profile_offset"] = offset;
    ctx.inputs["profile_amplitude"] = amplitude;
    ctx.inputs["profile_frequency"] = frequency;
    return spec;
}

void run_count(RunContext& ctx) {
    const std::vector<double> radii = radius_grid(ctx, true, 0.0, 0.0, 0);
    const OrbitSet orbit = load_orbit(ctx, radii.back());
    const CountCurve curve = count_curve(orbit, BallRegion{}, radii);
    ctx.region_label = "ball";
    json counts = json::array();
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        counts.push_back(curve.counts[i]);
        std::printf("count(%s) = %zu\n", format_double(curve.radii[i]).c_str(), curve.counts[i]);
    }
    ctx.outputs["counts"] = counts;
    fill_curve_rows(ctx, curve, nullptr, std::nullopt);
}

void run_fit(RunContext& ctx) {
    const std::vector<double> radii = radius_grid(ctx, false, 10.0, 300.0, 40);
    const OrbitSet orbit = load_orbit(ctx, radii.back());
    const CountCurve curve = count_curve(orbit, BallRegion{}, radii);
    const FitResult fit = fit_constant(curve);
    const LatticeSpec lattice = lattice_by_id(ctx.lattice_id);
    // The quadratic constant is 2 x₀ / covolume with x₀ the shear length of
    // the base point's stabilizer; without a parabolic stabilizer on the
    // base ray there is no closed form to compare against.
    std::optional<double> expected;
    try {
        expected = 2.0 * fundamental_width(lattice, ctx.base) / lattice.covolume;
    } catch (const std::invalid_argument&) {
    }
    ctx.outputs["constant"] = fit.constant;
    ctx.outputs["max_rel_residual"] = fit.max_rel_residual;
    std::optional<double> exponent;
    if (expected) {
        const ExponentFit exponent_fit = fit_error_exponent(curve, *expected);
        exponent = exponent_fit.exponent;
        ctx.outputs["expected_constant"] = *expected;
        ctx.outputs["rel_error"] = fit.constant / *expected - 1.0;
        if (exponent) {
            ctx.outputs["error_exponent"] = *exponent;
        }
        std::printf("fit: count ~ %.9f r^2   (2 width / covolume = %.9f, rel err %.3e)\n",
                    fit.constant, *expected, fit.constant / *expected - 1.0);
    } else {
        std::printf("fit: count ~ %.9f r^2\n", fit.constant);
    }
    ctx.region_label = "ball";
    fill_curve_rows(ctx, curve, &fit, exponent);
}

void run_sector(RunContext& ctx) {
    const double theta_lo = ctx.config.get_double("theta_lo");
    const double arc = ctx.config.get_double("arc");
    ctx.inputs["theta_lo"] = theta_lo;
    ctx.inputs["arc"] = arc;
    const std::vector<double> radii = radius_grid(ctx, false, 10.0, 300.0, 40);
    const OrbitSet orbit = load_orbit(ctx, radii.back());
    const SectorRegion sector{theta_lo, arc};
    const CountCurve curve = count_curve(orbit, sector, radii);
    const std::size_t in_sector = curve.counts.back();
    const std::size_t in_ball = count_at_radius(orbit, radii.back());
    const double share = in_ball ? static_cast<double>(in_sector) / in_ball : 0.0;
    ctx.outputs["sector_count"] = in_sector;
    ctx.outputs["ball_count"] = in_ball;
    ctx.outputs["share"] = share;
    ctx.outputs["arc_fraction"] = arc / (2.0 * kPi);
    std::printf("sector count %zu of %zu at r %s  (share %.6f, arc fraction %.6f)\n", in_sector,
                in_ball, format_double(radii.back()).c_str(), share, arc / (2.0 * kPi));
    ctx.region_label = "sector[" + format_double(theta_lo) + ".." + format_double(theta_lo + arc) +
                       "]";
    if (fit_feasible(radii)) {
        const FitResult fit = fit_constant(curve);
        const FitResult ball_fit = fit_constant(count_curve(orbit, BallRegion{}, radii));
        ctx.outputs["constant"] = fit.constant;
        ctx.outputs["constant_ratio"] = fit.constant / ball_fit.constant;
        std::printf("sector/ball constant ratio %.6f\n", fit.constant / ball_fit.constant);
        fill_curve_rows(ctx, curve, &fit, std::nullopt);
    } else {
        fill_curve_rows(ctx, curve, nullptr, std::nullopt);
    }
}

void run_star(RunContext& ctx) {
    const std::vector<double> radii = radius_grid(ctx, false, 10.0, 300.0, 40);
    const double offset = ctx.config.get_double_or("profile_offset", 1.0);
    const double amplitude = ctx.config.get_double_or("profile_amplitude", 0.3);
    const long frequency = ctx.config.get_long_or("profile_frequency", 2);
    ctx.inputs["profile_offset"] = offset;
    ctx.inputs["profile_amplitude"] = amplitude;
    ctx.inputs["profile_frequency"] = frequency;
    const StarProfile profile = make_star_profile([offset, amplitude, frequency](double theta) {
        return offset + amplitude * std::cos(static_cast<double>(frequency) * theta);
    });
    const OrbitSet orbit = load_orbit(ctx, radii.back() * profile.max_radius * 1.01);
    const CountCurve star = count_curve(orbit, StarRegion{profile}, radii);
    ctx.region_label = "star[" + format_double(offset) + "+" + format_double(amplitude) + "*cos(" +
                       std::to_string(frequency) + "t)]";
    ctx.outputs["mean_square_profile"] = offset * offset + amplitude * amplitude / 2.0;
    if (fit_feasible(radii)) {
        const FitResult fit = fit_constant(star);
        const FitResult ball_fit = fit_constant(count_curve(orbit, BallRegion{}, radii));
        const double ratio = fit.constant / ball_fit.constant;
        ctx.outputs["constant"] = fit.constant;
        ctx.outputs["constant_ratio"] = ratio;
        std::printf("star/ball constant ratio %.6f  (mean square of the profile %.6f)\n", ratio,
                    offset * offset + amplitude * amplitude / 2.0);
        fill_curve_rows(ctx, star, &fit, std::nullopt);
    } else {
        std::printf("star count %zu at r %s\n", star.counts.back(),
                    format_double(radii.back()).c_str());
        fill_curve_rows(ctx, star, nullptr, std::nullopt);
    }
}

void run_eisenstein(RunContext& ctx) {
    const double sigma = ctx.config.get_double("sigma");
    const double t = ctx.config.get_double_or("t", 0.0);
    const OrbitSet orbit = load_orbit(ctx, 500.0);
    ctx.inputs["sigma"] = sigma;
    ctx.inputs["t"] = t;
    const SeriesValue value = eisenstein_sum(orbit, {sigma, t});
    ctx.outputs["value_re"] = value.value.real();
    ctx.outputs["value_im"] = value.value.imag();
    ctx.outputs["tail_bound"] = value.tail_bound;
    ctx.outputs["terms"] = value.terms;
    std::printf("series(%.4f%+.4fi) = %.12f%+.12fi   tail bound %.3e over %zu terms\n", sigma, t,
                value.value.real(), value.value.imag(), value.tail_bound, value.terms);
}

void run_residue(RunContext& ctx) {
    const double cap = ctx.config.get_double_or("cap", 10000.0);
    const std::vector<double> schedule = ctx.config.has("schedule")
                                             ? ctx.config.get_doubles("schedule")
                                             : std::vector<double>{1.5, 1.4, 1.3, 1.25};
    ctx.inputs["cap"] = cap;
    ctx.inputs["schedule"] = schedule;
    PrimitiveLatticeEvaluator evaluator(cap);
    const ResidueEstimate res = residue_extrapolate(evaluator, schedule);
    const double expected = 2.0 / preset_sl2z().covolume;
    ctx.outputs["estimate"] = res.estimate;
    ctx.outputs["expected"] = expected;
    ctx.outputs["rel_error"] = res.estimate / expected - 1.0;
    ctx.outputs["corrected_points"] = res.corrected_points;
    std::printf("residue estimate %.9f   (2/covolume = %.9f, rel err %.3e)\n", res.estimate,
                expected, res.estimate / expected - 1.0);
}

void run_selberg(RunContext& ctx) {
    const double theta_lo = ctx.config.get_double("theta_lo");
    const double theta_hi = ctx.config.get_double("theta_hi");
    const long degree = ctx.config.get_long_or("degree", 32);
    ctx.inputs["theta_lo"] = theta_lo;
    ctx.inputs["theta_hi"] = theta_hi;
    ctx.inputs["degree"] = degree;
    const SelbergPair pair = make_selberg_pair(theta_lo, theta_hi, static_cast<int>(degree));
    double min_gap = 1e300;
    for (int i = 0; i < 20000; ++i) {
        const double theta = 2.0 * kPi * i / 20000.0;
        min_gap = std::min(min_gap, pair.upper(theta) - pair.lower(theta));
    }
    ctx.outputs["defect"] = pair.defect();
    ctx.outputs["upper_zero_mode"] = pair.upper_coefficient(0).real();
    ctx.outputs["lower_zero_mode"] = pair.lower_coefficient(0).real();
    ctx.outputs["min_gap"] = min_gap;
    std::printf("degree %ld sandwich of [%.4f, %.4f]: defect %.6f, zero modes %.6f / %.6f\n",
                degree, theta_lo, theta_hi, pair.defect(), pair.lower_coefficient(0).real(),
                pair.upper_coefficient(0).real());
    if (min_gap < -1e-12) {
        fail_check(ctx, "polynomial sandwich violated, min gap " + format_double(min_gap));
    }
}

void run_scattering(RunContext& ctx) {
    ctx.lattice_id = ctx.config.get_or("lattice", "sl2z");
    const double sigma = ctx.config.get_double_or("sigma", 1.25);
    const double t = ctx.config.get_double_or("t", 0.0);
    ScatteringOptions options;
    options.c_max = ctx.config.get_double_or("c_max", 10000.0);
    ctx.inputs["lattice"] = ctx.lattice_id;
    ctx.inputs["sigma"] = sigma;
    ctx.inputs["t"] = t;
    ctx.inputs["c_max"] = options.c_max;
    const ScatteringResult result =
        scattering_series(lattice_by_id(ctx.lattice_id), {sigma, t}, options);
    ctx.outputs["value_re"] = result.value.real();
    ctx.outputs["value_im"] = result.value.imag();
    ctx.outputs["denominators"] = result.c_values.size();
    ctx.outputs["states"] = result.states;
    ctx.outputs["frontier_exhausted"] = result.frontier_exhausted;
    std::printf("scattering(%.4f%+.4fi) = %.12f%+.12fi   (%zu denominators, %zu states, %s)\n",
                sigma, t, result.value.real(), result.value.imag(), result.c_values.size(),
                result.states, result.frontier_exhausted ? "exhausted" : "TRUNCATED EARLY");
    if (!result.frontier_exhausted) {
        fail_check(ctx, "denominator search truncated before reaching c_max");
    }
}

void run_lift(RunContext& ctx) {
    const StarDomainSpec spec = domain_from_config(ctx);
    const double scale = ctx.config.get_double_or("scale", 10.0);
    ctx.lattice_id = ctx.config.get_or("lattice", "sl2z");
    ctx.inputs["lattice"] = ctx.lattice_id;
    ctx.inputs["scale"] = scale;
    const BijectionReport report =
        verify_lift_bijection(lattice_by_id(ctx.lattice_id), {1.0, 0.0}, spec, scale);
    ctx.outputs["T"] = scale;
    ctx.outputs["bijection_pass"] = report.points_match;
    ctx.outputs["counts_both_sides"] = {{"orbit", report.orbit_count},
                                        {"group", report.group_count}};
    ctx.outputs["frobenius_bound"] = report.frobenius_bound;
    std::printf("lift: %zu orbit points, %zu group elements, bijection %s\n", report.orbit_count,
                report.group_count, report.points_match ? "holds" : "FAILS");
    if (!report.points_match) {
        fail_check(ctx, "orbit and group enumerations of the lifted domain disagree");
    }
}

void run_wellround(RunContext& ctx) {
    const StarDomainSpec spec = domain_from_config(ctx);
    const double scale = ctx.config.get_double_or("scale", 20.0);
    const double x0 = ctx.config.get_double_or("x0", 1.0);
    const double eta = ctx.config.get_double("eta");
    ctx.inputs["scale"] = scale;
    ctx.inputs["x0"] = x0;
    ctx.inputs["eta"] = eta;
    const WellRoundResult result = wellroundedness_ratio(spec, x0, scale, eta);
    ctx.outputs["T"] = scale;
    ctx.outputs["eta"] = eta;
    ctx.outputs["ratio"] = result.ratio;
    ctx.outputs["fitted_c"] = result.linear_constant;
    ctx.outputs["inner_volume"] = result.inner_volume;
    ctx.outputs["outer_volume"] = result.outer_volume;
    std::printf("wellroundedness at eta %.4f: outer/inner = %.9f  (excess %.3e, slope %.4f)\n",
                eta, result.ratio, result.ratio - 1.0, result.linear_constant);
}

void run_sandwich(RunContext& ctx) {
    const double radius = ctx.config.get_double("radius");
    const double u = ctx.config.get_double_or("u", 8.0);
    const OrbitSet orbit = load_orbit(ctx, radius * (1.0 + 0.9 / u) * 1.01);
    ctx.inputs["radius"] = radius;
    ctx.inputs["u"] = u;
    const SandwichResult result = sandwich_check(orbit, radius, u);
    ctx.outputs["lower_sum"] = result.lower_sum;
    ctx.outputs["count"] = result.count;
    ctx.outputs["upper_sum"] = result.upper_sum;
    ctx.outputs["count_shrunk"] = result.count_shrunk;
    ctx.outputs["ok"] = result.ok;
    std::printf("sandwich at r %.2f, u %.1f: %.3f <= %zu <= %.3f + %zu  %s\n", radius, u,
                result.lower_sum, result.count, result.upper_sum, result.count_shrunk,
                result.ok ? "holds" : "FAILS");
    if (!result.ok) {
        fail_check(ctx, "smooth sandwich bounds do not bracket the sharp count");
    }
}

void run_cache_gc(RunContext& ctx) {
    const std::string directory = ctx.config.has("directory") ? ctx.config.get("directory")
                                                              : ctx.cache_dir;
    if (directory.empty()) {
        throw ConfigError("config: missing key 'directory' (or pass --cache-dir)");
    }
    if (!std::filesystem::is_directory(directory)) {
        throw ConfigError("config: key 'directory' is not an existing directory: '" + directory +
                          "'");
    }
    const double max_bytes = ctx.config.get_double("max_bytes");
    if (max_bytes < 0.0) {
        throw ConfigError("config: key 'max_bytes' must be nonnegative");
    }
    ctx.inputs["directory"] = directory;
    ctx.inputs["max_bytes"] = max_bytes;
    const CacheGcResult result = cache_gc(directory, static_cast<std::uintmax_t>(max_bytes));
    ctx.outputs["files_before"] = result.files_before;
    ctx.outputs["files_after"] = result.files_after;
    ctx.outputs["bytes_before"] = result.bytes_before;
    ctx.outputs["bytes_after"] = result.bytes_after;
    ctx.outputs["removed"] = result.removed;
    ctx.outputs["removed_files"] = result.removed_files;
    std::printf("cache gc: %zu -> %zu files, %ju -> %ju bytes (%zu removed)\n",
                result.files_before, result.files_after,
                static_cast<std::uintmax_t>(result.bytes_before),
                static_cast<std::uintmax_t>(result.bytes_after), result.removed);
    for (const std::string& name : result.removed_files) {
        std::printf("removed %s\n", name.c_str());
    }
}

int run_experiment(const std::string& config_path, const std::string& out_flag,
                   const std::string& cache_dir, unsigned workers) {
    RunContext ctx;
    ctx.config = ConfigFile::parse_file(config_path);
    ctx.cache_dir = cache_dir;
    if (ctx.config.has("seed")) {
        ctx.inputs["seed"] = ctx.config.get_long("seed");
    }
    const std::string out_dir = !out_flag.empty() ? out_flag : ctx.config.get_or("out_dir", "");
    const std::string kind = ctx.config.get("kind");
    const auto start = std::chrono::steady_clock::now();
    if (kind == "count") {
        run_count(ctx);
    } else if (kind == "fit") {
        run_fit(ctx);
    } else if (kind == "sector") {
        run_sector(ctx);
    } else if (kind == "star") {
        run_star(ctx);
    } else if (kind == "eisenstein") {
        run_eisenstein(ctx);
    } else if (kind == "residue") {
        run_residue(ctx);
    } else if (kind == "selberg") {
        run_selberg(ctx);
    } else if (kind == "scattering") {
        run_scattering(ctx);
    } else if (kind == "lift") {
        run_lift(ctx);
    } else if (kind == "wellround") {
        run_wellround(ctx);
    } else if (kind == "sandwich") {
        run_sandwich(ctx);
    } else if (kind == "cache_gc") {
        run_cache_gc(ctx);
    } else {
        throw ConfigError("config: unknown kind '" + kind + "'");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::string digest = ctx.config.digest();
        const std::string stem = (std::filesystem::path(out_dir) / (kind + "-" + digest)).string();
        if (!ctx.csv_rows.empty()) {
            write_experiment_csv(stem + ".csv", digest, ctx.csv_rows);
            std::printf("curve written to %s.csv\n", stem.c_str());
        }
        json report;
        report["tool_version"] = kToolVersion;
        report["config_digest"] = digest;
        report["kind"] = kind;
        report["workers"] = workers;
        report["inputs"] = ctx.inputs;
        report["outputs"] = ctx.outputs;
        report["math_check_passed"] = ctx.failures.empty();
        if (!ctx.failures.empty()) {
            report["failures"] = ctx.failures;
        }
        report["timing_seconds"] = seconds;
        std::ofstream out(stem + ".json");
        if (!out) {
            throw std::runtime_error("cannot open report path '" + stem + ".json'");
        }
        out << report.dump(2) << "\n";
        std::printf("report written to %s.json\n", stem.c_str());
    }
    if (!ctx.failures.empty()) {
        std::string joined;
        for (const std::string& f : ctx.failures) {
            joined += (joined.empty() ? "" : "; ") + f;
        }
        emit_error_json("math_check", joined);
        return 2;
    }
    return 0;
}

int run_verify(const std::string& out_dir, unsigned workers) {
    bool all_pass = true;
    std::size_t failed = 0;
    json lines = json::array();
    double total = 0.0;
    const auto results = run_acceptance_criteria([&](const CriterionResult& r) {
        std::printf("[%s] %2d %-34s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
        failed += r.pass ? 0 : 1;
        total += r.seconds;
        json entry;
        entry["id"] = r.id;
        entry["name"] = r.name;
        entry["pass"] = r.pass;
        entry["detail"] = r.detail;
        entry["seconds"] = r.seconds;
        lines.push_back(entry);
    });
    std::printf("%zu criteria in %.1fs, %s\n", results.size(), total,
                all_pass ? "all passed" : "FAILURES PRESENT");
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::string digest = hex64(fnv1a64(""));
        const std::string path =
            (std::filesystem::path(out_dir) / ("verify-" + digest + ".json")).string();
        json report;
        report["tool_version"] = kToolVersion;
        report["config_digest"] = digest;
        report["kind"] = "verify";
        report["workers"] = workers;
        report["criteria"] = lines;
        report["all_pass"] = all_pass;
        report["timing_seconds"] = total;
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot open report path '" + path + "'");
        }
        out << report.dump(2) << "\n";
        std::printf("report written to %s\n", path.c_str());
    }
    if (!all_pass) {
        emit_error_json("math_check", std::to_string(failed) + " acceptance criteria failed");
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orbit counting workbench for planar lattice orbits"};

    std::string config_path;
    std::string cache_dir;
    std::string out_dir;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    bool verify = false;
    app.add_option("--config", config_path,
                   "Config file (key = value, kind selects the experiment)");
    app.add_option("--workers", workers, "Worker pool size (default: machine parallelism)");
    app.add_option("--cache-dir", cache_dir, "Orbit cache directory, reused across runs");
    app.add_option("--out", out_dir, "Directory for the JSON report and CSV artifacts");
    app.add_flag("--verify", verify, "Run the built-in acceptance suite and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        emit_error_json("input", std::string("usage: ") + e.what());
        return 1;
    }
    if (workers == 0) {
        std::fprintf(stderr, "usage error: --workers must be at least 1\n");
        emit_error_json("input", "usage: flag '--workers' must be at least 1");
        return 1;
    }

    try {
        if (verify) {
            return run_verify(out_dir, workers);
        }
        if (config_path.empty()) {
            throw ConfigError("config: flag '--config' is required unless --verify is given");
        }
        return run_experiment(config_path, out_dir, cache_dir, workers);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        emit_error_json("input", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        emit_error_json("input", e.what());
        return 1;
    }
}
