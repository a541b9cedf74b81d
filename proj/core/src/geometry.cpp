#include "orbitcount/geometry.hpp"

#include <cmath>

namespace orbitcount {

const Tolerances& tolerances() {
    static const Tolerances tol{};
    return tol;
}

Mat2 Mat2::identity() {
    return from_exact(1, 0, 0, 1);
}

Mat2 Mat2::from_entries(double a, double b, double c, double d) {
    Mat2 m;
    m.a = a;
    m.b = b;
    m.c = c;
    m.d = d;
    return m;
}

Mat2 Mat2::from_exact(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    Mat2 m;
    m.a = static_cast<double>(a);
    m.b = static_cast<double>(b);
    m.c = static_cast<double>(c);
    m.d = static_cast<double>(d);
    m.exact = std::array<std::int64_t, 4>{a, b, c, d};
    return m;
}

double Mat2::det() const {
    return a * d - b * c;
}

Mat2 Mat2::inverse() const {
    Mat2 inv;
    const double dt = det();
    if (std::abs(dt) < 1e-300) {
        throw std::invalid_argument("Mat2::inverse: matrix is singular");
    }
    inv.a = d / dt;
    inv.b = -b / dt;
    inv.c = -c / dt;
    inv.d = a / dt;
    if (exact) {
        // Only determinant +-1 matrices keep an integer inverse.
        const auto& e = *exact;
        const std::int64_t idet = e[0] * e[3] - e[1] * e[2];
        if (idet == 1) {
            inv.exact = std::array<std::int64_t, 4>{e[3], -e[1], -e[2], e[0]};
        } else if (idet == -1) {
            inv.exact = std::array<std::int64_t, 4>{-e[3], e[1], e[2], -e[0]};
        }
    }
    return inv;
}

double Mat2::frobenius_norm() const {
    return std::sqrt(a * a + b * b + c * c + d * d);
}

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(x, y, &out)) {
        throw ExactOverflowError("exact integer matrix product overflows int64");
    }
    return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(x, y, &out)) {
        throw ExactOverflowError("exact integer matrix product overflows int64");
    }
    return out;
}

}  // namespace

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
    Mat2 out;
    out.a = lhs.a * rhs.a + lhs.b * rhs.c;
    out.b = lhs.a * rhs.b + lhs.b * rhs.d;
    out.c = lhs.c * rhs.a + lhs.d * rhs.c;
    out.d = lhs.c * rhs.b + lhs.d * rhs.d;
    if (lhs.exact && rhs.exact) {
        const auto& p = *lhs.exact;
        const auto& q = *rhs.exact;
        std::array<std::int64_t, 4> e{
            checked_add(checked_mul(p[0], q[0]), checked_mul(p[1], q[2])),
            checked_add(checked_mul(p[0], q[1]), checked_mul(p[1], q[3])),
            checked_add(checked_mul(p[2], q[0]), checked_mul(p[3], q[2])),
            checked_add(checked_mul(p[2], q[1]), checked_mul(p[3], q[3])),
        };
        out.exact = e;
        out.a = static_cast<double>(e[0]);
        out.b = static_cast<double>(e[1]);
        out.c = static_cast<double>(e[2]);
        out.d = static_cast<double>(e[3]);
    }
    return out;
}

Mat2 operator-(const Mat2& m) {
    Mat2 out;
    out.a = -m.a;
    out.b = -m.b;
    out.c = -m.c;
    out.d = -m.d;
    if (m.exact) {
        const auto& e = *m.exact;
        out.exact = std::array<std::int64_t, 4>{-e[0], -e[1], -e[2], -e[3]};
    }
    return out;
}

void require_unimodular(const Mat2& m, const std::string& context) {
    // The determinant of a numerically composed word drifts in proportion
    // to the squared entry scale, so the tolerance must scale the same way
    // or long words of large norm are rejected for rounding alone.
    const double scale = std::max(1.0, m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d);
    if (std::abs(m.det() - 1.0) > tolerances().unimodular * scale) {
        throw std::invalid_argument(context + ": determinant " + std::to_string(m.det()) +
                                    " is not 1 within tolerance");
    }
}

double PlaneVector::norm() const {
    return std::hypot(x, y);
}

double PlaneVector::norm_sq() const {
    return x * x + y * y;
}

PlaneVector operator*(const Mat2& m, const PlaneVector& v) {
    return PlaneVector{m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
}

PlaneVector operator*(double s, const PlaneVector& v) {
    return PlaneVector{s * v.x, s * v.y};
}

bool operator==(const PlaneVector& p, const PlaneVector& q) {
    return p.x == q.x && p.y == q.y;
}

double wrap_angle(double theta) {
    const double two_pi = 2.0 * M_PI;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) {
        t += two_pi;
    }
    if (t >= two_pi) {
        t = 0.0;
    }
    return t;
}

PolarCoords to_polar(const PlaneVector& v) {
    const double r = v.norm();
    if (r == 0.0) {
        throw std::domain_error("to_polar: zero vector has no angle");
    }
    return PolarCoords{r, wrap_angle(std::atan2(v.y, v.x))};
}

PlaneVector from_polar(const PolarCoords& p) {
    return PlaneVector{p.r * std::cos(p.theta), p.r * std::sin(p.theta)};
}

UpperHalfPoint mobius(const Mat2& m, const UpperHalfPoint& z) {
    if (z.y <= 0.0) {
        throw std::domain_error("mobius: point is not in the upper half plane");
    }
    // (az + b) / (cz + d) with z = x + iy.
    const double cx = m.c * z.x + m.d;
    const double cy = m.c * z.y;
    const double denom = cx * cx + cy * cy;
    if (denom < 1e-300) {
        throw std::domain_error("mobius: image is the point at infinity");
    }
    const double ax = m.a * z.x + m.b;
    const double ay = m.a * z.y;
    UpperHalfPoint out;
    out.x = (ax * cx + ay * cy) / denom;
    out.y = (m.a * m.d - m.b * m.c) * z.y / denom;
    if (out.y <= 0.0) {
        throw std::domain_error("mobius: orientation reversing matrix");
    }
    return out;
}

IwasawaCoords iwasawa(const Mat2& g) {
    require_unimodular(g, "iwasawa");
    IwasawaCoords out;
    // First column is g e1 = yscale * (cos theta, sin theta).
    out.yscale = std::hypot(g.a, g.c);
    if (out.yscale == 0.0) {
        throw std::domain_error("iwasawa: singular first column");
    }
    out.theta = wrap_angle(std::atan2(g.c, g.a));
    // Shear parameter from the upper triangular remainder.
    out.x = (g.a * g.b + g.c * g.d) / (out.yscale * out.yscale);
    return out;
}

Mat2 compose_iwasawa(const IwasawaCoords& c) {
    return rotation(c.theta) * diag_scale(c.yscale) * shear(c.x);
}

Mat2 rotation(double theta) {
    const double co = std::cos(theta);
    const double si = std::sin(theta);
    return Mat2::from_entries(co, -si, si, co);
}

Mat2 diag_scale(double yscale) {
    if (yscale <= 0.0) {
        throw std::invalid_argument("diag_scale: scale must be positive");
    }
    return Mat2::from_entries(yscale, 0.0, 0.0, 1.0 / yscale);
}

Mat2 shear(double x) {
    return Mat2::from_entries(1.0, x, 0.0, 1.0);
}

Mat2 geodesic_flow(double t) {
    return diag_scale(std::exp(t / 2.0));
}

}  // namespace orbitcount
