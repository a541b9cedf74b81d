#include "orbitcount/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbitcount/textio.hpp"

namespace orbitcount {

double StarProfile::eval_series(double theta) const {
    std::complex<double> acc(0.0, 0.0);
    for (int n = -order; n <= order; ++n) {
        acc += fourier[static_cast<std::size_t>(n + order)] *
               std::polar(1.0, static_cast<double>(n) * theta);
    }
    return acc.real();
}

StarProfile make_star_profile(const std::function<double(double)>& radius, int order, int grid) {
    if (order < 0 || grid < 4 * (order + 1)) {
        throw std::invalid_argument("make_star_profile: grid must oversample the order");
    }
    StarProfile profile;
    profile.radius = radius;
    profile.order = order;
    profile.fourier.assign(static_cast<std::size_t>(2 * order + 1), {0.0, 0.0});

    std::vector<double> samples(static_cast<std::size_t>(grid));
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid);
        const double v = radius(theta);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("make_star_profile: profile must stay positive");
        }
        samples[static_cast<std::size_t>(j)] = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    profile.min_radius = lo;
    profile.max_radius = hi;
    for (int n = -order; n <= order; ++n) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < grid; ++j) {
            const double phase =
                -2.0 * M_PI * static_cast<double>(n) * static_cast<double>(j) /
                static_cast<double>(grid);
            acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, phase);
        }
        profile.fourier[static_cast<std::size_t>(n + order)] = acc / static_cast<double>(grid);
    }
    return profile;
}

double star_profile_series_error(const StarProfile& profile, int probe_grid) {
    double worst = 0.0;
    for (int j = 0; j < probe_grid; ++j) {
        // Offset keeps probe points off the construction grid.
        const double theta =
            2.0 * M_PI * (static_cast<double>(j) + 0.37) / static_cast<double>(probe_grid);
        worst = std::max(worst, std::abs(profile.radius(theta) - profile.eval_series(theta)));
    }
    return worst;
}

namespace {

bool angle_in_window(double theta, double theta_lo, double arc) {
    const double tol = tolerances().angle;
    const double rel = wrap_angle(theta - theta_lo);
    return rel <= arc + tol || rel >= 2.0 * M_PI - tol;
}

double max_entry_scale(const Region& region, double r) {
    // Largest point norm the region at scale r can reach, used to validate
    // the enumeration cap.
    struct Visitor {
        double r;
        double operator()(const BallRegion&) const { return r; }
        double operator()(const EllipseRegion& e) const {
            // Operator norm bound via the Frobenius norm.
            return r * e.shape.frobenius_norm();
        }
        double operator()(const SectorRegion&) const { return r; }
        double operator()(const EllipticSectorRegion& e) const {
            return r * e.shape.frobenius_norm();
        }
        double operator()(const StarRegion& s) const { return r * s.profile.max_radius; }
    };
    return std::visit(Visitor{r}, region);
}

}  // namespace

double region_entry_scale(const Region& region, const PlaneVector& p) {
    struct Visitor {
        const PlaneVector& p;
        double operator()(const BallRegion&) const { return p.norm(); }
        double operator()(const EllipseRegion& e) const { return (e.shape.inverse() * p).norm(); }
        double operator()(const SectorRegion& s) const {
            const PolarCoords pc = to_polar(p);
            if (!angle_in_window(pc.theta, s.theta_lo, s.arc)) {
                return std::numeric_limits<double>::infinity();
            }
            return pc.r;
        }
        double operator()(const EllipticSectorRegion& e) const {
            const PlaneVector q = e.shape.inverse() * p;
            const PolarCoords pc = to_polar(q);
            if (!angle_in_window(pc.theta, e.theta_lo, e.arc)) {
                return std::numeric_limits<double>::infinity();
            }
            return pc.r;
        }
        double operator()(const StarRegion& s) const {
            const PolarCoords pc = to_polar(p);
            return pc.r / s.profile.radius(pc.theta);
        }
    };
    return std::visit(Visitor{p}, region);
}

namespace {

void validate_region(const Region& region) {
    if (const auto* s = std::get_if<SectorRegion>(&region)) {
        if (!(s->arc > 0.0) || s->arc > 2.0 * M_PI + tolerances().angle) {
            throw std::invalid_argument("sector arc must lie in (0, 2*pi]");
        }
    }
    if (const auto* e = std::get_if<EllipticSectorRegion>(&region)) {
        if (!(e->arc > 0.0) || e->arc > 2.0 * M_PI + tolerances().angle) {
            throw std::invalid_argument("sector arc must lie in (0, 2*pi]");
        }
    }
}

}  // namespace

std::size_t count_in_region(const OrbitSet& orbit, const Region& region, double r) {
    validate_region(region);
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    if (max_entry_scale(region, r) > orbit.r_cap + quantum) {
        throw std::out_of_range("count_in_region: region exceeds the enumeration cap");
    }
    std::size_t count = 0;
    for (const PlaneVector& p : orbit.points) {
        if (region_entry_scale(region, p) <= r + quantum) {
            ++count;
        }
    }
    return count;
}

CountCurve count_curve(const OrbitSet& orbit, const Region& region,
                       const std::vector<double>& radii) {
    validate_region(region);
    if (radii.empty() || !std::is_sorted(radii.begin(), radii.end())) {
        throw std::invalid_argument("count_curve: radii must be sorted and nonempty");
    }
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    if (max_entry_scale(region, radii.back()) > orbit.r_cap + quantum) {
        throw std::out_of_range("count_curve: region exceeds the enumeration cap");
    }
    CountCurve curve;
    curve.radii = radii;
    curve.counts.assign(radii.size(), 0);
    for (const PlaneVector& p : orbit.points) {
        const double scale = region_entry_scale(region, p);
        if (!std::isfinite(scale)) {
            continue;
        }
        // First grid scale that admits the point, boundary quantum included.
        auto it = std::lower_bound(radii.begin(), radii.end(), scale - quantum);
        if (it != radii.end()) {
            ++curve.counts[static_cast<std::size_t>(it - radii.begin())];
        }
    }
    std::size_t running = 0;
    for (std::size_t i = 0; i < curve.counts.size(); ++i) {
        running += curve.counts[i];
        curve.counts[i] = running;
    }
    return curve;
}

FitResult fit_constant(const CountCurve& curve) {
    if (curve.radii.size() < 5) {
        throw std::invalid_argument("fit_constant: need at least 5 samples");
    }
    if (!std::is_sorted(curve.radii.begin(), curve.radii.end())) {
        throw std::invalid_argument("fit_constant: radii must be sorted");
    }
    if (!(curve.radii.back() >= 10.0 * curve.radii.front())) {
        throw std::invalid_argument("fit_constant: radii must span a factor of 10");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        const double r2 = curve.radii[i] * curve.radii[i];
        num += static_cast<double>(curve.counts[i]) * r2;
        den += r2 * r2;
    }
    FitResult fit;
    fit.constant = num / den;
    fit.samples = curve.radii.size();
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        const double expect = fit.constant * curve.radii[i] * curve.radii[i];
        if (expect > 0.0) {
            fit.max_rel_residual = std::max(
                fit.max_rel_residual,
                std::abs(static_cast<double>(curve.counts[i]) - expect) / expect);
        }
    }
    return fit;
}

ExponentFit fit_error_exponent(const CountCurve& curve, double c0) {
    if (curve.radii.size() < 5) {
        throw std::invalid_argument("fit_error_exponent: need at least 5 samples");
    }
    ExponentFit out;
    const double cutoff = curve.radii.front() * 10.0;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < curve.radii.size(); ++i) {
        const double r = curve.radii[i];
        const double resid = std::abs(static_cast<double>(curve.counts[i]) - c0 * r * r);
        out.sup_normalized = std::max(out.sup_normalized, resid / std::pow(r, 4.0 / 3.0));
        if (r < cutoff || resid == 0.0) {
            continue;
        }
        lx.push_back(std::log(r));
        ly.push_back(std::log(resid));
    }
    out.samples_used = lx.size();
    if (lx.size() < 3) {
        return out;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double n = static_cast<double>(lx.size());
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) {
        return out;
    }
    out.exponent = (n * sxy - sx * sy) / denom;
    return out;
}

std::vector<std::size_t> sector_profile(const OrbitSet& orbit, double r, int bins) {
    if (bins < 1) {
        throw std::invalid_argument("sector_profile: need at least one bin");
    }
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    if (r > orbit.r_cap + quantum) {
        throw std::out_of_range("sector_profile: radius exceeds the enumeration cap");
    }
    std::vector<std::size_t> hist(static_cast<std::size_t>(bins), 0);
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        if (orbit.norms[i] > r + quantum) {
            continue;
        }
        const double theta = wrap_angle(std::atan2(orbit.points[i].y, orbit.points[i].x));
        auto idx = static_cast<std::size_t>(theta / (2.0 * M_PI) * static_cast<double>(bins));
        if (idx >= hist.size()) {
            idx = hist.size() - 1;
        }
        ++hist[idx];
    }
    return hist;
}

SandwichResult sandwich_check(const OrbitSet& orbit, double r, double u) {
    const CutoffPair pair(u);
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    SandwichResult out;
    if (pair.upper_support_hi() * r > orbit.r_cap + quantum) {
        throw std::out_of_range("sandwich_check: upper cutoff support exceeds the cap");
    }
    for (double norm : orbit.norms) {
        const double x = norm / r;
        out.lower_sum += pair.lower(x);
        out.upper_sum += pair.upper(x);
    }
    out.count = count_at_radius(orbit, r);
    out.count_shrunk = count_at_radius(orbit, r / u);
    out.ok = out.lower_sum <= static_cast<double>(out.count) + 1e-9 &&
             static_cast<double>(out.count) <=
                 out.upper_sum + static_cast<double>(out.count_shrunk) + 1e-9;
    return out;
}

void write_count_curve_csv(const std::string& path, const CountCurve& curve,
                           const std::string& config_digest) {
    std::vector<double> counts(curve.counts.size());
    for (std::size_t i = 0; i < curve.counts.size(); ++i) {
        counts[i] = static_cast<double>(curve.counts[i]);
    }
    write_csv(path, config_digest, {"radius", "count"}, {curve.radii, counts});
}

}  // namespace orbitcount
