#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "orbitcount/cutoff.hpp"

namespace orbitcount {

// Raised when an adaptive quadrature cannot reach its target; the message
// carries the achieved error estimate and node count.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integral of f(y) y^(s-1) dy over [lo, hi], 0 < lo < hi, computed on the
// logarithmic axis. General purpose adaptive route.
std::complex<double> mellin_numeric(const std::function<double(double)>& f, double lo, double hi,
                                    std::complex<double> s, double rel_tol = 1e-10);

// Transform of one side of the cutoff pair. Quadrature panels are aligned
// with the cutoff's piece boundaries and sized against |Im s|; the plateau
// piece integrates in closed form. Without the alignment the narrow edge
// pieces are invisible to the rule at large u.
std::complex<double> cutoff_mellin(const CutoffPair& pair, bool upper_side,
                                   std::complex<double> s);

// Distance between the ideal pole weight 1/(2 s_pole) and the cutoff
// transform at 2 s_pole, for both sides. Shrinks like 1/u.
struct WeightGap {
    double lower_gap = 0.0;
    double upper_gap = 0.0;
    double max_gap = 0.0;
};
// s_pole must lie in (1/2, 1].
WeightGap residue_weight_gap(double u, double s_pole);

}  // namespace orbitcount
