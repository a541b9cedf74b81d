#pragma once

#include <complex>
#include <vector>

namespace orbitcount {

// Trigonometric polynomial sandwich of the arc indicator 1_[theta_lo,
// theta_hi]: upper >= indicator >= lower pointwise on the circle, both of
// degree at most `degree`, with zeroth coefficients off the arc length by
// exactly defect() = 1/(degree + 1) on each side. Coefficients are stored
// for k = -degree..degree at index k + degree.
struct SelbergPair {
    int degree = 0;
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    std::vector<std::complex<double>> upper_coefficients;
    std::vector<std::complex<double>> lower_coefficients;

    double defect() const { return 1.0 / (degree + 1); }
    std::complex<double> upper_coefficient(int k) const;
    std::complex<double> lower_coefficient(int k) const;
    double upper(double theta) const;
    double lower(double theta) const;
};

// Sawtooth-extremal construction: the degree-N one-sided approximations of
// the periodic sawtooth, shifted to the two arc endpoints, plus the Fejer
// kernel correction that makes the bounds one-sided. Requires degree >= 1
// and arc length in (0, 2 pi).
SelbergPair make_selberg_pair(double theta_lo, double theta_hi, int degree);

// Proven envelope for either side's coefficients:
// |c_k| <= 1/(degree+1) + min(arc/2pi, 1/(pi |k|)) for k != 0.
double selberg_coefficient_bound(const SelbergPair& pair, int k);

}  // namespace orbitcount
