#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace orbitcount {

struct FourierOptions {
    double rel_tol = 1e-12;
    int min_points = 32;           // starting grid, rounded up to a power of two
    int max_points = 1 << 22;
};

// Normalized angular coefficient (1/2pi) Int rho(theta)^s e^(-i n theta)
// dtheta over one period, by trapezoid doubling. The rule is spectrally
// accurate on smooth periodic integrands, so doubling stalls only on rough
// input; that raises QuadratureError with the last two estimates.
std::complex<double> fourier_rho_power(const std::function<double(double)>& rho,
                                       std::complex<double> s, int n,
                                       const FourierOptions& options = {});

// Coefficients for n = -order..order from one shared set of evaluations,
// returned at index n + order. Convergence is judged against the largest
// coefficient magnitude so trailing rounding-level entries do not stall
// the doubling.
std::vector<std::complex<double>> fourier_rho_power_batch(
    const std::function<double(double)>& rho, std::complex<double> s, int order,
    const FourierOptions& options = {});

}  // namespace orbitcount
