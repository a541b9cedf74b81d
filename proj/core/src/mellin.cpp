#include "orbitcount/mellin.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gauss_internal.hpp"

#ifdef ORBITCOUNT_HAVE_BOOST_QUADRATURE
#include <boost/math/quadrature/gauss_kronrod.hpp>
#endif

namespace orbitcount {

namespace internal {

namespace {

GaussRule build_gauss_rule() {
    GaussRule rule{};
    const int n = kGaussOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and its derivative.
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 =
                    ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        rule.node[static_cast<std::size_t>(i)] = -x;
        rule.node[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weight[static_cast<std::size_t>(i)] = w;
        rule.weight[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule() {
    static const GaussRule rule = build_gauss_rule();
    return rule;
}

std::complex<double> log_axis_panels(const std::function<double(double)>& f, double lo, double hi,
                                     std::complex<double> s, int panels) {
    const GaussRule& rule = gauss_rule();
    const double a = std::log(lo);
    const double b = std::log(hi);
    const double width = (b - a) / static_cast<double>(panels);
    std::complex<double> acc(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * width;
        const double half = 0.5 * width;
        std::complex<double> panel(0.0, 0.0);
        for (int k = 0; k < kGaussOrder; ++k) {
            const double u = mid + half * rule.node[static_cast<std::size_t>(k)];
            panel += rule.weight[static_cast<std::size_t>(k)] * f(std::exp(u)) * std::exp(s * u);
        }
        acc += half * panel;
    }
    return acc;
}

int panels_for(double im_s, double log_span) {
    const double need = std::abs(im_s) * log_span / 3.0;
    return std::max(12, static_cast<int>(std::ceil(need)));
}

std::complex<double> power_difference(double lo, double hi, std::complex<double> s) {
    if (std::abs(s) < 1e-12) {
        return std::complex<double>(std::log(hi / lo), 0.0);
    }
    return (std::exp(s * std::log(hi)) - std::exp(s * std::log(lo))) / s;
}

}  // namespace internal

std::complex<double> mellin_numeric(const std::function<double(double)>& f, double lo, double hi,
                                    std::complex<double> s, double rel_tol) {
    if (!(lo > 0.0) || !(hi > lo)) {
        throw std::invalid_argument("mellin_numeric: need 0 < lo < hi");
    }
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("mellin_numeric: rel_tol must be positive");
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
#ifdef ORBITCOUNT_HAVE_BOOST_QUADRATURE
    using boost::math::quadrature::gauss_kronrod;
    double err_re = 0.0;
    double err_im = 0.0;
    const double re = gauss_kronrod<double, 31>::integrate(
        [&](double u) {
            return f(std::exp(u)) * std::exp(s.real() * u) * std::cos(s.imag() * u);
        },
        a, b, 12, rel_tol, &err_re);
    const double im = gauss_kronrod<double, 31>::integrate(
        [&](double u) {
            return f(std::exp(u)) * std::exp(s.real() * u) * std::sin(s.imag() * u);
        },
        a, b, 12, rel_tol, &err_im);
    const std::complex<double> value(re, im);
    const double scale = std::max(std::abs(value), 1e-300);
    if (err_re + err_im > 100.0 * rel_tol * scale) {
        throw QuadratureError("mellin_numeric: adaptive rule stalled, error estimate " +
                              std::to_string(err_re + err_im) + " against value scale " +
                              std::to_string(scale));
    }
    return value;
#else
    std::complex<double> prev =
        internal::log_axis_panels(f, lo, hi, s, internal::panels_for(s.imag(), b - a));
    for (int doublings = 1; doublings <= 12; ++doublings) {
        const int panels = internal::panels_for(s.imag(), b - a) << doublings;
        const std::complex<double> cur = internal::log_axis_panels(f, lo, hi, s, panels);
        const double scale = std::max(std::abs(cur), 1e-300);
        if (std::abs(cur - prev) <= rel_tol * scale) {
            return cur;
        }
        prev = cur;
    }
    throw QuadratureError("mellin_numeric: panel doubling did not converge");
#endif
}

std::complex<double> cutoff_mellin(const CutoffPair& pair, bool upper_side,
                                   std::complex<double> s) {
    const std::vector<double> knots = pair.knots(upper_side);
    const auto f = [&pair, upper_side](double y) {
        return upper_side ? pair.upper(y) : pair.lower(y);
    };
    std::complex<double> acc(0.0, 0.0);
    acc += internal::log_axis_panels(
        f, knots[0], knots[1], s,
        internal::panels_for(s.imag(), std::log(knots[1] / knots[0])));
    acc += internal::power_difference(knots[1], knots[2], s);
    acc += internal::log_axis_panels(
        f, knots[2], knots[3], s,
        internal::panels_for(s.imag(), std::log(knots[3] / knots[2])));
    return acc;
}

WeightGap residue_weight_gap(double u, double s_pole) {
    if (!(s_pole > 0.5) || s_pole > 1.0) {
        throw std::invalid_argument("residue_weight_gap: pole must lie in (1/2, 1]");
    }
    const CutoffPair pair(u);
    const double ideal = 1.0 / (2.0 * s_pole);
    const std::complex<double> s(2.0 * s_pole, 0.0);
    WeightGap gap;
    gap.lower_gap = std::abs(ideal - cutoff_mellin(pair, false, s).real());
    gap.upper_gap = std::abs(ideal - cutoff_mellin(pair, true, s).real());
    gap.max_gap = std::max(gap.lower_gap, gap.upper_gap);
    return gap;
}

}  // namespace orbitcount
