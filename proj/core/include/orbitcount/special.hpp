#pragma once

#include <complex>

namespace orbitcount {

// Principal branch log gamma, Lanczos approximation with reflection for
// Re z < 0.5. Accurate to ~1e-13 relative over the desk range.
std::complex<double> lgamma_complex(std::complex<double> z);

std::complex<double> gamma_complex(std::complex<double> z);

}  // namespace orbitcount
