#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>

namespace orbitcount::internal {

constexpr int kGaussOrder = 24;

struct GaussRule {
    std::array<double, kGaussOrder> node;
    std::array<double, kGaussOrder> weight;
};

const GaussRule& gauss_rule();

// Composite Gauss panels of Int f(e^u) exp(s u) du over [log lo, log hi],
// which is the Mellin integrand of f on [lo, hi].
std::complex<double> log_axis_panels(const std::function<double(double)>& f, double lo, double hi,
                                     std::complex<double> s, int panels);

// Panels needed so each one sees about 3 radians of exp(i Im(s) u).
int panels_for(double im_s, double log_span);

// (hi^s - lo^s) / s, stable near s = 0. Mellin transform of the plateau.
std::complex<double> power_difference(double lo, double hi, std::complex<double> s);

}  // namespace orbitcount::internal
