#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "orbitcount/lattice.hpp"

namespace orbitcount {

struct ScatteringOptions {
    double c_max = 10000.0;        // box bound on max(|c|, |d|)
    double dedup_quantum = 1e-9;   // key quantum for non-integer lattices
    std::size_t max_states = 200000000;
};

// Truncated scattering series sqrt(pi) Gamma(s - 1/2) / Gamma(s) *
// sum_c m(c) c^(-2s), with m(c) the number of cusp double cosets whose
// lower left entry is c, counted by a search over bottom rows.
struct ScatteringResult {
    std::complex<double> value{0.0, 0.0};
    std::complex<double> dirichlet_sum{0.0, 0.0};
    std::vector<double> c_values;        // distinct denominators, ascending
    std::vector<double> multiplicities;  // m(c) aligned with c_values
    double c_max = 0.0;
    // True when the search drained its frontier inside the box, which
    // certifies that every double coset with entries in the box was seen.
    bool frontier_exhausted = false;
    std::size_t states = 0;
};

// Bottom rows (c, d) of group elements, left-quotiented by the cusp
// stabilizer (sign and d mod width*c) and explored by applying the
// non-translation generators to every representative inside the box.
// Integer lattices run on an exact triangular bitmap; others on quantized
// keys. Requires Re s > 1.
ScatteringResult scattering_series(const LatticeSpec& lattice, std::complex<double> s,
                                   const ScatteringOptions& options = {});

// Euler totients 1..n by sieve, the arithmetic cross-check for the
// modular group where m(c) = phi(c).
std::vector<std::uint64_t> euler_phi_table(std::uint64_t n);

}  // namespace orbitcount
