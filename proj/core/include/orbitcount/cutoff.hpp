#pragma once

#include <vector>

namespace orbitcount {

// Smooth sandwich pair for the sharp cutoff at 1: lower(x) <= indicator
// of [0, 1] at x <= upper(x), both smooth, agreeing with the indicator
// outside bands of width O(1/u) around 0 and 1.
//
//   lower: 0 below 0.1/u, rises to 1 on [0.1/u, 1/u], plateau to 1 - 1/u,
//          falls back to 0 at 1 - 0.1/u.
//   upper: same rise, plateau to 1, falls to 0 at 1 + 0.9/u.
class CutoffPair {
  public:
    explicit CutoffPair(double u);

    double u() const { return u_; }
    double lower(double x) const;
    double upper(double x) const;

    // Piece boundaries of the chosen side, in increasing order. Quadrature
    // panels must align with these or the narrow edge mass is lost.
    std::vector<double> knots(bool upper_side) const;

    // Support interval endpoints.
    double support_lo() const { return 0.1 / u_; }
    double lower_support_hi() const { return 1.0 - 0.1 / u_; }
    double upper_support_hi() const { return 1.0 + 0.9 / u_; }

    // Smooth step: 0 for x <= 0.1, 1 for x >= 1.
    static double ramp(double x);

  private:
    double u_;
};

}  // namespace orbitcount
