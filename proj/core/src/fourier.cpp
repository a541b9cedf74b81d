#include "orbitcount/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "orbitcount/mellin.hpp"

namespace orbitcount {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int round_up_pow2(int n) {
    int p = 1;
    while (p < n) {
        p *= 2;
    }
    return p;
}

std::vector<std::complex<double>> coefficients_on_grid(const std::vector<std::complex<double>>& g,
                                                       int order) {
    const std::size_t n_points = g.size();
    std::vector<std::complex<double>> out(2 * static_cast<std::size_t>(order) + 1);
    for (int n = -order; n <= order; ++n) {
        std::complex<double> acc(0.0, 0.0);
        const double step = -kTwoPi * static_cast<double>(n) / static_cast<double>(n_points);
        for (std::size_t j = 0; j < n_points; ++j) {
            acc += g[j] * std::polar(1.0, step * static_cast<double>(j));
        }
        out[static_cast<std::size_t>(n + order)] = acc / static_cast<double>(n_points);
    }
    return out;
}

}  // namespace

std::vector<std::complex<double>> fourier_rho_power_batch(
    const std::function<double(double)>& rho, std::complex<double> s, int order,
    const FourierOptions& options) {
    if (order < 0) {
        throw std::invalid_argument("fourier_rho_power_batch: order must be nonnegative");
    }
    if (!(options.rel_tol > 0.0)) {
        throw std::invalid_argument("fourier_rho_power_batch: rel_tol must be positive");
    }
    // Grids below 4(order+1) alias the high coefficients onto low ones and
    // the doubling comparison can be fooled; start above that.
    int n_points = round_up_pow2(std::max({options.min_points, 4 * (order + 1), 8}));

    auto powered = [&](double theta) -> std::complex<double> {
        const double value = rho(theta);
        if (!(value > 0.0)) {
            throw std::invalid_argument(
                "fourier_rho_power_batch: rho must be positive, got rho(" +
                std::to_string(theta) + ") = " + std::to_string(value));
        }
        return std::exp(s * std::log(value));
    };

    std::vector<std::complex<double>> g(static_cast<std::size_t>(n_points));
    for (int j = 0; j < n_points; ++j) {
        g[static_cast<std::size_t>(j)] = powered(kTwoPi * j / n_points);
    }
    std::vector<std::complex<double>> prev = coefficients_on_grid(g, order);

    while (n_points < options.max_points) {
        // Interleave the midpoints of the current grid.
        std::vector<std::complex<double>> doubled(g.size() * 2);
        for (std::size_t j = 0; j < g.size(); ++j) {
            doubled[2 * j] = g[j];
            doubled[2 * j + 1] = powered(kTwoPi * (2.0 * static_cast<double>(j) + 1.0) /
                                         (2.0 * static_cast<double>(n_points)));
        }
        g.swap(doubled);
        n_points *= 2;
        std::vector<std::complex<double>> next = coefficients_on_grid(g, order);

        double scale = 0.0;
        for (const auto& c : next) {
            scale = std::max(scale, std::abs(c));
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            worst = std::max(worst, std::abs(next[i] - prev[i]));
        }
        if (worst <= options.rel_tol * std::max(scale, 1e-300)) {
            return next;
        }
        prev.swap(next);
    }
    throw QuadratureError("fourier_rho_power_batch: trapezoid doubling stalled at " +
                          std::to_string(n_points) + " points");
}

std::complex<double> fourier_rho_power(const std::function<double(double)>& rho,
                                       std::complex<double> s, int n,
                                       const FourierOptions& options) {
    const int order = std::abs(n);
    const auto batch = fourier_rho_power_batch(rho, s, order, options);
    return batch[static_cast<std::size_t>(n + order)];
}

}  // namespace orbitcount
