#include "orbitcount/special.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitcount {

namespace {

// Lanczos g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

std::complex<double> lgamma_core(std::complex<double> z) {
    // Valid for Re z >= 0.5; z shifted so the series sees z-1.
    z -= 1.0;
    std::complex<double> acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (z + static_cast<double>(i));
    }
    const std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
    if (z.real() >= 0.5) {
        return lgamma_core(z);
    }
    // Reflection. Poles at nonpositive integers are rejected.
    if (z.imag() == 0.0 && z.real() == std::floor(z.real())) {
        throw std::domain_error("lgamma_complex: pole at nonpositive integer");
    }
    const std::complex<double> pi_z = M_PI * z;
    // log sin via the half plane stable form.
    std::complex<double> log_sin;
    if (z.imag() >= 0.0) {
        // sin(pi z) = (exp(i pi z) - exp(-i pi z)) / 2i, factor the growing term.
        const std::complex<double> iz(-pi_z.imag(), pi_z.real());
        log_sin = -iz + std::log((std::exp(2.0 * iz) - 1.0) /
                                 std::complex<double>(0.0, 2.0));
    } else {
        const std::complex<double> iz(-pi_z.imag(), pi_z.real());
        log_sin = iz + std::log((1.0 - std::exp(-2.0 * iz)) /
                                std::complex<double>(0.0, 2.0));
    }
    return std::log(M_PI) - log_sin - lgamma_core(1.0 - z);
}

std::complex<double> gamma_complex(std::complex<double> z) {
    return std::exp(lgamma_complex(z));
}

}  // namespace orbitcount
