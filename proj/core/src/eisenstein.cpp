#include "orbitcount/eisenstein.hpp"

#include <algorithm>
#include <cmath>

#include "gauss_internal.hpp"

namespace orbitcount {

namespace {

// Distinct norms with multiplicities, from the sorted norm list.
struct RadiusTable {
    std::vector<double> radius;
    std::vector<double> multiplicity;
};

RadiusTable compress_radii(const OrbitSet& orbit) {
    RadiusTable table;
    const auto& norms = orbit.norms;
    std::size_t i = 0;
    while (i < norms.size()) {
        std::size_t j = i;
        while (j < norms.size() && norms[j] == norms[i]) {
            ++j;
        }
        table.radius.push_back(norms[i]);
        table.multiplicity.push_back(static_cast<double>(j - i));
        i = j;
    }
    return table;
}

double tail_bound_from_growth(double growth, double sigma, double cap) {
    return growth * (2.0 * sigma / (2.0 * sigma - 2.0)) * std::pow(cap, 2.0 - 2.0 * sigma);
}

void require_convergent(std::complex<double> s, const char* who) {
    if (!(s.real() > 1.0)) {
        throw std::domain_error(std::string(who) +
                                ": series diverges for Re s <= 1 (got Re s = " +
                                std::to_string(s.real()) + ")");
    }
}

}  // namespace

double orbit_growth_constant(const OrbitSet& orbit, double lo, double hi) {
    if (orbit.norms.empty()) {
        throw std::invalid_argument("orbit_growth_constant: empty orbit");
    }
    double best = 0.0;
    // N jumps at each distinct norm; N(r)/r^2 is maximal right at a jump,
    // so scanning jump radii gives the exact supremum over the window.
    std::size_t i = 0;
    while (i < orbit.norms.size()) {
        std::size_t j = i;
        while (j < orbit.norms.size() && orbit.norms[j] == orbit.norms[i]) {
            ++j;
        }
        const double r = orbit.norms[i];
        if (r >= lo && r <= hi && r > 0.0) {
            best = std::max(best, static_cast<double>(j) / (r * r));
        }
        i = j;
    }
    if (best == 0.0) {
        // Window saw no jumps; fall back to the count at the cap.
        best = static_cast<double>(orbit.norms.size()) / (orbit.r_cap * orbit.r_cap);
    }
    return best;
}

double orbit_growth_constant(const OrbitSet& orbit) {
    return orbit_growth_constant(orbit, orbit.r_cap / 16.0, orbit.r_cap);
}

SeriesValue eisenstein_sum(const OrbitSet& orbit, std::complex<double> s) {
    require_convergent(s, "eisenstein_sum");
    const RadiusTable table = compress_radii(orbit);
    std::complex<long double> acc(0.0L, 0.0L);
    const std::complex<double> expo = -2.0 * s;
    for (std::size_t i = 0; i < table.radius.size(); ++i) {
        const std::complex<double> term =
            table.multiplicity[i] * std::exp(expo * std::log(table.radius[i]));
        acc += std::complex<long double>(term.real(), term.imag());
    }
    SeriesValue out;
    out.value = std::complex<double>(static_cast<double>(acc.real()),
                                     static_cast<double>(acc.imag()));
    out.tail_bound = tail_bound_from_growth(orbit_growth_constant(orbit), s.real(), orbit.r_cap);
    out.r_cap = orbit.r_cap;
    out.terms = orbit.norms.size();
    return out;
}

SeriesValue twisted_eisenstein_sum(const OrbitSet& orbit, int n, std::complex<double> s) {
    require_convergent(s, "twisted_eisenstein_sum");
    std::complex<long double> acc(0.0L, 0.0L);
    const std::complex<double> expo = -2.0 * s;
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        const double theta = std::atan2(orbit.points[i].y, orbit.points[i].x);
        const std::complex<double> term = std::exp(expo * std::log(orbit.norms[i])) *
                                          std::polar(1.0, -static_cast<double>(n) * theta);
        acc += std::complex<long double>(term.real(), term.imag());
    }
    SeriesValue out;
    out.value = std::complex<double>(static_cast<double>(acc.real()),
                                     static_cast<double>(acc.imag()));
    out.tail_bound = tail_bound_from_growth(orbit_growth_constant(orbit), s.real(), orbit.r_cap);
    out.r_cap = orbit.r_cap;
    out.terms = orbit.points.size();
    return out;
}

double theta_transform(const OrbitSet& orbit, const std::function<double(double)>& f,
                       double support_lo, double support_hi, double scale) {
    if (!(scale > 0.0) || !(support_hi > support_lo)) {
        throw std::invalid_argument("theta_transform: bad support or scale");
    }
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    if (support_hi * scale > orbit.r_cap + quantum) {
        throw std::out_of_range("theta_transform: support exceeds the enumeration cap");
    }
    const auto lo_it =
        std::lower_bound(orbit.norms.begin(), orbit.norms.end(), support_lo * scale);
    const auto hi_it =
        std::upper_bound(orbit.norms.begin(), orbit.norms.end(), support_hi * scale);
    long double acc = 0.0L;
    for (auto it = lo_it; it != hi_it; ++it) {
        acc += f(*it / scale);
    }
    return static_cast<double>(acc);
}

std::complex<double> theta_transform_twisted(const OrbitSet& orbit, int n,
                                             const std::function<double(double)>& f,
                                             double support_lo, double support_hi, double scale) {
    if (!(scale > 0.0) || !(support_hi > support_lo)) {
        throw std::invalid_argument("theta_transform_twisted: bad support or scale");
    }
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    if (support_hi * scale > orbit.r_cap + quantum) {
        throw std::out_of_range("theta_transform_twisted: support exceeds the enumeration cap");
    }
    const auto begin = static_cast<std::size_t>(
        std::lower_bound(orbit.norms.begin(), orbit.norms.end(), support_lo * scale) -
        orbit.norms.begin());
    const auto end = static_cast<std::size_t>(
        std::upper_bound(orbit.norms.begin(), orbit.norms.end(), support_hi * scale) -
        orbit.norms.begin());
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::size_t i = begin; i < end; ++i) {
        const double w = f(orbit.norms[i] / scale);
        if (w == 0.0) {
            continue;
        }
        const double theta = std::atan2(orbit.points[i].y, orbit.points[i].x);
        const std::complex<double> term = w * std::polar(1.0, -static_cast<double>(n) * theta);
        acc += std::complex<long double>(term.real(), term.imag());
    }
    return std::complex<double>(static_cast<double>(acc.real()),
                                static_cast<double>(acc.imag()));
}

double OrbitEvaluator::r_cap() const {
    return orbit_->r_cap;
}

std::vector<SeriesValue> OrbitEvaluator::eval(const std::vector<double>& sigmas) {
    std::vector<SeriesValue> out;
    out.reserve(sigmas.size());
    for (double sigma : sigmas) {
        out.push_back(eisenstein_sum(*orbit_, std::complex<double>(sigma, 0.0)));
    }
    return out;
}

double OrbitEvaluator::tail_model_constant() {
    return static_cast<double>(orbit_->norms.size()) / (orbit_->r_cap * orbit_->r_cap);
}

PrimitiveLatticeEvaluator::PrimitiveLatticeEvaluator(double r_cap) : r_cap_(r_cap) {
    if (!(r_cap >= 16.0)) {
        throw std::invalid_argument("PrimitiveLatticeEvaluator: cap must be at least 16");
    }
}

double PrimitiveLatticeEvaluator::r_cap() const {
    return r_cap_;
}

void PrimitiveLatticeEvaluator::sweep(const std::vector<double>& sigmas) {
    const std::size_t m = sigmas.size();
    std::vector<long double> sums(m, 0.0L);
    std::vector<double> expo(m);
    for (std::size_t k = 0; k < m; ++k) {
        expo[k] = -sigmas[k];
    }
    double count = 0.0;
    // Growth envelope sampled at the dyadic radii of the tail window.
    std::vector<double> dyadic;
    for (double r = r_cap_; r >= r_cap_ / 16.0; r /= 2.0) {
        dyadic.push_back(r);
    }
    std::sort(dyadic.begin(), dyadic.end());
    std::vector<double> dyadic_counts(dyadic.size(), 0.0);
    const double lowest_sq = dyadic.front() * dyadic.front();

    scan_primitive_norms(r_cap_, [&](double norm_sq, int mult) {
        const double dm = static_cast<double>(mult);
        count += dm;
        const double log_nsq = std::log(norm_sq);
        for (std::size_t k = 0; k < m; ++k) {
            sums[k] += static_cast<long double>(dm * std::exp(expo[k] * log_nsq));
        }
        if (norm_sq >= lowest_sq) {
            auto it = std::lower_bound(dyadic.begin(), dyadic.end(), std::sqrt(norm_sq) *
                                                                         (1.0 - 1e-12));
            if (it != dyadic.end()) {
                dyadic_counts[static_cast<std::size_t>(it - dyadic.begin())] += dm;
            }
        }
    });
    // Counts below the window arrive via a second cheap pass formula: the
    // histogram above only covers the window, so accumulate the base count.
    double below = 0.0;
    scan_primitive_norms(dyadic.front(), [&](double norm_sq, int mult) {
        if (norm_sq < lowest_sq) {
            below += static_cast<double>(mult);
        }
    });
    double running = below;
    double growth = 0.0;
    for (std::size_t i = 0; i < dyadic.size(); ++i) {
        running += dyadic_counts[i];
        growth = std::max(growth, running / (dyadic[i] * dyadic[i]));
    }
    count_at_cap_ = count;
    growth_constant_ = growth;
    cached_sigmas_ = sigmas;
    cached_sums_.assign(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        cached_sums_[k] = static_cast<double>(sums[k]);
    }
}

std::vector<SeriesValue> PrimitiveLatticeEvaluator::eval(const std::vector<double>& sigmas) {
    for (double sigma : sigmas) {
        if (!(sigma > 1.0)) {
            throw std::domain_error("PrimitiveLatticeEvaluator: series diverges for sigma <= 1");
        }
    }
    if (sigmas != cached_sigmas_) {
        sweep(sigmas);
    }
    std::vector<SeriesValue> out(sigmas.size());
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        out[k].value = std::complex<double>(cached_sums_[k], 0.0);
        out[k].tail_bound = tail_bound_from_growth(growth_constant_, sigmas[k], r_cap_);
        out[k].r_cap = r_cap_;
        out[k].terms = static_cast<std::size_t>(count_at_cap_);
    }
    return out;
}

double PrimitiveLatticeEvaluator::tail_model_constant() {
    if (cached_sigmas_.empty()) {
        sweep({2.0});
    }
    return count_at_cap_ / (r_cap_ * r_cap_);
}

namespace {

double neville_to_zero(const std::vector<double>& xs, std::vector<double> f) {
    const std::size_t n = xs.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            f[i] = ((0.0 - xs[i + m]) * f[i] + xs[i] * f[i + 1]) / (xs[i] - xs[i + m]);
        }
    }
    return f[0];
}

}  // namespace

ResidueEstimate residue_extrapolate(EisensteinEvaluator& evaluator,
                                    const std::vector<double>& schedule) {
    if (schedule.empty()) {
        throw std::invalid_argument("residue_extrapolate: empty schedule");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 1.0)) {
            throw std::invalid_argument("residue_extrapolate: schedule must stay above 1");
        }
        if (i > 0 && !(schedule[i] < schedule[i - 1])) {
            throw std::invalid_argument(
                "residue_extrapolate: schedule must decrease strictly toward 1");
        }
    }
    const std::vector<SeriesValue> values = evaluator.eval(schedule);
    const double cap = evaluator.r_cap();
    ResidueEstimate out;
    out.schedule = schedule;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double v = values[i].value.real();
        const double bound = values[i].tail_bound;
        if (bound > 0.01 * std::abs(v)) {
            // Solve the bound formula for the cap that would be needed.
            const double sigma = schedule[i];
            const double factor = 2.0 * sigma / (2.0 * sigma - 2.0);
            const double growth = bound / (factor * std::pow(cap, 2.0 - 2.0 * sigma));
            const double needed =
                std::pow(0.01 * std::abs(v) / (growth * factor), 1.0 / (2.0 - 2.0 * sigma));
            throw std::invalid_argument(
                "residue_extrapolate: tail bound " + std::to_string(bound) +
                " exceeds 1 percent of the sum at sigma = " + std::to_string(sigma) +
                "; enumerate to cap >= " + std::to_string(needed));
        }
        out.raw_values.push_back(v);
        out.tail_bounds.push_back(bound);
    }
    const double c_hat = evaluator.tail_model_constant();
    std::vector<double> xs;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double sigma = schedule[i];
        xs.push_back(sigma - 1.0);
        out.corrected_points.push_back((sigma - 1.0) * out.raw_values[i] +
                                       c_hat * std::pow(cap, 2.0 - 2.0 * sigma));
    }
    out.extrapolated = schedule.size() >= 2;
    out.estimate = neville_to_zero(xs, out.corrected_points);
    return out;
}

ResidueEstimate residue_extrapolate(const OrbitSet& orbit, const std::vector<double>& schedule) {
    OrbitEvaluator evaluator(orbit);
    return residue_extrapolate(evaluator, schedule);
}

namespace {

using internal::log_axis_panels;
using internal::panels_for;
using internal::power_difference;

// Both cutoff sides along the vertical line Re s = sigma. The rising edge
// is common to the two sides and is integrated once; the plateaus are
// closed forms.
struct CutoffLinePair {
    const CutoffPair& pair;
    double sigma;

    std::pair<std::complex<double>, std::complex<double>> eval(double t) const {
        const double u = pair.u();
        const std::complex<double> s(sigma, t);
        const auto rise_fn = [this](double y) { return pair.lower(y); };
        const auto fall_lower = [this](double y) { return pair.lower(y); };
        const auto fall_upper = [this](double y) { return pair.upper(y); };
        const double r0 = 0.1 / u;
        const double r1 = 1.0 / u;
        const std::complex<double> rise =
            log_axis_panels(rise_fn, r0, r1, s, panels_for(t, std::log(r1 / r0)));
        const double lo_hi = 1.0 - 1.0 / u;
        const double lo_end = 1.0 - 0.1 / u;
        const std::complex<double> lower_val =
            rise + power_difference(r1, lo_hi, s) +
            log_axis_panels(fall_lower, lo_hi, lo_end, s,
                            panels_for(t, std::log(lo_end / lo_hi)));
        const double up_end = 1.0 + 0.9 / u;
        const std::complex<double> upper_val =
            rise + power_difference(r1, 1.0, s) +
            log_axis_panels(fall_upper, 1.0, up_end, s, panels_for(t, std::log(up_end)));
        return {lower_val, upper_val};
    }
};

}  // namespace

InversionCheck radial_inversion_check(const OrbitSet& orbit, double scale, double u, double sigma,
                                      double t_cut, double t_max) {
    const CutoffPair pair(u);
    if (pair.upper_support_hi() * scale > orbit.r_cap) {
        throw std::out_of_range("radial_inversion_check: cutoff support exceeds the cap");
    }
    if (!(sigma > 2.0)) {
        throw std::invalid_argument("radial_inversion_check: need sigma > 2 for the norm series");
    }
    if (!(t_max > t_cut) || !(t_cut > 0.0)) {
        throw std::invalid_argument("radial_inversion_check: need 0 < t_cut < t_max");
    }
    const RadiusTable table = compress_radii(orbit);

    InversionCheck out;
    out.direct_lower = theta_transform(
        orbit, [&pair](double x) { return pair.lower(x); }, pair.support_lo() * 0.99,
        pair.lower_support_hi() * 1.01, scale);
    out.direct_upper = theta_transform(
        orbit, [&pair](double x) { return pair.upper(x); }, pair.support_lo() * 0.99,
        pair.upper_support_hi() * 1.01, scale);

    // Dirichlet series over norms: D(s) = sum m r^-s along the line.
    std::vector<double> amp(table.radius.size());
    std::vector<double> logr(table.radius.size());
    for (std::size_t i = 0; i < table.radius.size(); ++i) {
        amp[i] = table.multiplicity[i] * std::pow(table.radius[i], -sigma);
        logr[i] = std::log(table.radius[i]);
    }

    const CutoffLinePair line{pair, sigma};
    const internal::GaussRule& rule = internal::gauss_rule();
    const double log_scale = std::log(scale);
    const int t_panels =
        std::max(8, static_cast<int>(std::ceil(t_cut * std::max(log_scale, 0.5) / 18.0)));
    const double panel_width = t_cut / static_cast<double>(t_panels);
    const double pow_scale = std::pow(scale, sigma);

    long double integral_lower = 0.0L;
    long double integral_upper = 0.0L;
    for (int p = 0; p < t_panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * panel_width;
        const double half = 0.5 * panel_width;
        for (int k = 0; k < internal::kGaussOrder; ++k) {
            const double t = mid + half * rule.node[static_cast<std::size_t>(k)];
            const double w = half * rule.weight[static_cast<std::size_t>(k)];
            const auto [psi_lower, psi_upper] = line.eval(t);
            std::complex<long double> dval(0.0L, 0.0L);
            for (std::size_t i = 0; i < amp.size(); ++i) {
                const double phase = -t * logr[i];
                const std::complex<double> term(amp[i] * std::cos(phase),
                                                amp[i] * std::sin(phase));
                dval += std::complex<long double>(term.real(), term.imag());
            }
            const std::complex<double> d(static_cast<double>(dval.real()),
                                         static_cast<double>(dval.imag()));
            const std::complex<double> line_factor =
                pow_scale * std::polar(1.0, t * log_scale);
            integral_lower += static_cast<long double>(w * (psi_lower * d * line_factor).real());
            integral_upper += static_cast<long double>(w * (psi_upper * d * line_factor).real());
        }
    }
    out.recon_lower = static_cast<double>(integral_lower) / M_PI;
    out.recon_upper = static_cast<double>(integral_upper) / M_PI;
    out.rel_err_lower = (out.recon_lower - out.direct_lower) /
                        std::max(std::abs(out.direct_lower), 1e-300);
    out.rel_err_upper = (out.recon_upper - out.direct_upper) /
                        std::max(std::abs(out.direct_upper), 1e-300);

    // Mass formally discarded at |t| > t_cut: trapezoid of |Psi| on
    // [t_cut, t_max] plus a cubic envelope bound beyond t_max, both scaled
    // by |D| <= D(sigma) and the line factor.
    double d_sigma = 0.0;
    for (double a : amp) {
        d_sigma += a;
    }
    const int tail_samples = 33;
    std::vector<double> tg(tail_samples);
    std::vector<double> abs_lower(tail_samples);
    std::vector<double> abs_upper(tail_samples);
    for (int i = 0; i < tail_samples; ++i) {
        tg[static_cast<std::size_t>(i)] =
            t_cut + (t_max - t_cut) * static_cast<double>(i) / (tail_samples - 1);
        const auto [pl, pu] = line.eval(tg[static_cast<std::size_t>(i)]);
        abs_lower[static_cast<std::size_t>(i)] = std::abs(pl);
        abs_upper[static_cast<std::size_t>(i)] = std::abs(pu);
    }
    auto trapezoid = [&tg](const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i) {
            acc += 0.5 * (v[i] + v[i - 1]) * (tg[i] - tg[i - 1]);
        }
        return acc;
    };
    auto envelope_beyond = [&tg, t_max](const std::vector<double>& v) {
        // Fit |Psi| <= c / t^3 on the sampled window, integrate past t_max.
        double c = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            c = std::max(c, v[i] * tg[i] * tg[i] * tg[i]);
        }
        return 2.0 * c / (2.0 * t_max * t_max);
    };
    const double common = d_sigma * pow_scale / M_PI;
    out.tail_lower = (trapezoid(abs_lower) + envelope_beyond(abs_lower)) * common;
    out.tail_upper = (trapezoid(abs_upper) + envelope_beyond(abs_upper)) * common;
    return out;
}

}  // namespace orbitcount
