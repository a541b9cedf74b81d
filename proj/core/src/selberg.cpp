#include "orbitcount/selberg.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitcount {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

// Vaaler's interpolation weight: J(t) = pi t (1 - t) cot(pi t) + t on
// (0, 1), extended by J(0) = 1. Damps the sawtooth coefficients so the
// truncation stays within the Fejer envelope.
double vaaler_weight(double t) {
    if (t == 0.0) {
        return 1.0;
    }
    return kPi * t * (1.0 - t) / std::tan(kPi * t) + t;
}

}  // namespace

std::complex<double> SelbergPair::upper_coefficient(int k) const {
    if (k < -degree || k > degree) {
        return {0.0, 0.0};
    }
    return upper_coefficients[static_cast<std::size_t>(k + degree)];
}

std::complex<double> SelbergPair::lower_coefficient(int k) const {
    if (k < -degree || k > degree) {
        return {0.0, 0.0};
    }
    return lower_coefficients[static_cast<std::size_t>(k + degree)];
}

double SelbergPair::upper(double theta) const {
    std::complex<double> acc(0.0, 0.0);
    for (int k = -degree; k <= degree; ++k) {
        acc += upper_coefficients[static_cast<std::size_t>(k + degree)] *
               std::polar(1.0, k * theta);
    }
    return acc.real();
}

double SelbergPair::lower(double theta) const {
    std::complex<double> acc(0.0, 0.0);
    for (int k = -degree; k <= degree; ++k) {
        acc += lower_coefficients[static_cast<std::size_t>(k + degree)] *
               std::polar(1.0, k * theta);
    }
    return acc.real();
}

SelbergPair make_selberg_pair(double theta_lo, double theta_hi, int degree) {
    if (degree < 1) {
        throw std::invalid_argument("make_selberg_pair: degree must be at least 1");
    }
    const double arc = theta_hi - theta_lo;
    if (!(arc > 0.0) || !(arc < kTwoPi)) {
        throw std::invalid_argument("make_selberg_pair: arc length must lie in (0, 2 pi)");
    }
    const int n = degree;
    const double fraction = arc / kTwoPi;
    const double a = theta_lo / kTwoPi;
    const double b = theta_hi / kTwoPi;

    // One-sided sawtooth approximations: majorant = V + F, minorant = V - F
    // with V the weighted sawtooth polynomial and F the scaled Fejer kernel.
    std::vector<std::complex<double>> saw_plus(2 * static_cast<std::size_t>(n) + 1);
    std::vector<std::complex<double>> saw_minus(2 * static_cast<std::size_t>(n) + 1);
    for (int k = -n; k <= n; ++k) {
        const double fejer = (1.0 - std::abs(k) / static_cast<double>(n + 1)) /
                             static_cast<double>(2 * n + 2);
        std::complex<double> sawtooth(0.0, 0.0);
        if (k != 0) {
            const double vc =
                vaaler_weight(std::abs(k) / static_cast<double>(n + 1)) / (kPi * std::abs(k));
            // The sawtooth has coefficient -1/(2 pi i k); the weight tapers it.
            sawtooth = std::complex<double>(0.0, k > 0 ? 0.5 * vc : -0.5 * vc);
        }
        const auto idx = static_cast<std::size_t>(k + n);
        saw_plus[idx] = sawtooth + fejer;
        saw_minus[idx] = sawtooth - fejer;
    }

    // Indicator identity on the circle: 1_[a,b](x) = (b - a) + saw(x - b)
    // - saw(x - a). Majorizing the first sawtooth and minorizing the second
    // majorizes the indicator, and conversely.
    SelbergPair pair;
    pair.degree = n;
    pair.theta_lo = theta_lo;
    pair.theta_hi = theta_hi;
    pair.upper_coefficients.resize(2 * static_cast<std::size_t>(n) + 1);
    pair.lower_coefficients.resize(2 * static_cast<std::size_t>(n) + 1);
    for (int k = -n; k <= n; ++k) {
        const auto idx = static_cast<std::size_t>(k + n);
        const std::complex<double> shift_b = std::polar(1.0, -kTwoPi * k * b);
        const std::complex<double> shift_a = std::polar(1.0, -kTwoPi * k * a);
        pair.upper_coefficients[idx] = saw_plus[idx] * shift_b - saw_minus[idx] * shift_a;
        pair.lower_coefficients[idx] = saw_minus[idx] * shift_b - saw_plus[idx] * shift_a;
        if (k == 0) {
            pair.upper_coefficients[idx] += fraction;
            pair.lower_coefficients[idx] += fraction;
        }
    }
    return pair;
}

double selberg_coefficient_bound(const SelbergPair& pair, int k) {
    const double fraction = (pair.theta_hi - pair.theta_lo) / kTwoPi;
    if (k == 0) {
        return fraction + pair.defect();
    }
    return pair.defect() + std::min(fraction, 1.0 / (kPi * std::abs(k)));
}

}  // namespace orbitcount
