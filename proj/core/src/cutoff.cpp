#include "orbitcount/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitcount {

CutoffPair::CutoffPair(double u) : u_(u) {
    if (!(u > 2.0)) {
        throw std::invalid_argument("CutoffPair: u must exceed 2");
    }
}

double CutoffPair::ramp(double x) {
    if (x <= 0.1) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    // Classic exp(-1/t) glue on the rescaled coordinate.
    const double t = (x - 0.1) / 0.9;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double CutoffPair::lower(double x) const {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x <= 0.5) {
        return ramp(u_ * x);
    }
    return ramp(u_ * (1.0 - x));
}

double CutoffPair::upper(double x) const {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x <= 0.5) {
        return ramp(u_ * x);
    }
    return ramp(1.0 + u_ * (1.0 - x));
}

std::vector<double> CutoffPair::knots(bool upper_side) const {
    if (upper_side) {
        return {0.1 / u_, 1.0 / u_, 1.0, 1.0 + 0.9 / u_};
    }
    return {0.1 / u_, 1.0 / u_, 1.0 - 1.0 / u_, 1.0 - 0.1 / u_};
}

}  // namespace orbitcount
