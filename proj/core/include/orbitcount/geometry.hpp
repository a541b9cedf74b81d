#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace orbitcount {

// Central numeric tolerances. Every approximate comparison in the library
// routes through one of these so a tolerance change is a one-line edit.
struct Tolerances {
    double unimodular = 1e-12;    // |det - 1| allowed for group elements
    double angle = 1e-12;         // angle comparisons, radians
    double coordinate = 1e-12;    // generic coordinate comparisons
    double quadrature_rel = 1e-10;  // relative target for adaptive quadrature
};

const Tolerances& tolerances();

// 2x2 real matrix. Entries are stored row-major as a, b, c, d for
// [[a, b], [c, d]]. When all entries are integers (as for sl2z words) an
// exact int64 payload travels along so membership and dedup tests can be
// performed without rounding.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    std::optional<std::array<std::int64_t, 4>> exact;

    static Mat2 identity();
    static Mat2 from_entries(double a, double b, double c, double d);
    static Mat2 from_exact(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    double det() const;
    Mat2 inverse() const;
    double frobenius_norm() const;
    bool has_exact() const { return exact.has_value(); }
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
Mat2 operator-(const Mat2& m);

// Raised when an exact-integer product would overflow int64. The library
// never promotes silently; callers that hit this at desk scale are holding
// matrices far outside any supported workload.
struct ExactOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Asserts |det(m) - 1| <= tolerances().unimodular, throws std::invalid_argument otherwise.
void require_unimodular(const Mat2& m, const std::string& context);

struct PlaneVector {
    double x = 0.0;
    double y = 0.0;

    double norm() const;
    double norm_sq() const;
};

PlaneVector operator*(const Mat2& m, const PlaneVector& v);
PlaneVector operator*(double s, const PlaneVector& v);
bool operator==(const PlaneVector& p, const PlaneVector& q);

struct PolarCoords {
    double r = 0.0;
    double theta = 0.0;  // in [0, 2*pi)
};

// Throws std::domain_error on the zero vector.
PolarCoords to_polar(const PlaneVector& v);
PlaneVector from_polar(const PolarCoords& p);

// Reduce an angle to [0, 2*pi).
double wrap_angle(double theta);

// Upper half plane point with the standard fractional linear action.
struct UpperHalfPoint {
    double x = 0.0;
    double y = 1.0;  // must stay positive
};

UpperHalfPoint mobius(const Mat2& m, const UpperHalfPoint& z);

// Decomposition g = rotation(theta) * diag(yscale, 1/yscale) * shear(x)
// where rotation(theta) e1 = (cos theta, sin theta), diag acts first on e1,
// and shear(x) = [[1, x], [0, 1]]. yscale = |g e1| > 0, theta in [0, 2*pi).
struct IwasawaCoords {
    double theta = 0.0;
    double yscale = 1.0;
    double x = 0.0;
};

IwasawaCoords iwasawa(const Mat2& g);
Mat2 compose_iwasawa(const IwasawaCoords& c);

// Elementary factors.
Mat2 rotation(double theta);
Mat2 diag_scale(double yscale);          // diag(yscale, 1/yscale)
Mat2 shear(double x);                    // [[1, x], [0, 1]]
Mat2 geodesic_flow(double t);            // diag(e^{t/2}, e^{-t/2})

}  // namespace orbitcount
