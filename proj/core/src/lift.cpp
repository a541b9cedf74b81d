#include "orbitcount/lift.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace orbitcount {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

Mat2 word_to_matrix(const LatticeSpec& lattice, const std::string& word) {
    Mat2 out = Mat2::identity();
    std::size_t pos = 0;
    while (pos < word.size()) {
        std::size_t matched = 0;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < lattice.generator_labels.size(); ++i) {
            const std::string& label = lattice.generator_labels[i];
            if (label.size() > best_len && word.compare(pos, label.size(), label) == 0) {
                matched = i;
                best_len = label.size();
            }
        }
        if (best_len == 0) {
            throw std::invalid_argument("word_to_matrix: unreadable word '" + word +
                                        "' at position " + std::to_string(pos));
        }
        out = out * lattice.generators[matched];
        pos += best_len;
    }
    return out;
}

// Recursive Simpson refinement; whole carries f(a), f(m), f(b).
double simpson_kernel(const std::function<double(double)>& f, double a, double fa, double b,
                      double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson_kernel(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_kernel(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) {
        return 0.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_kernel(f, a, fa, b, fb, m, fm, whole, std::max(tol, 1e-15), 48);
}

// Integral over [lo, hi] split at the interior breakpoints, each piece
// nudged inward so one-sided values are used at jumps.
double piecewise_integral(const std::function<double(double)>& f, double lo, double hi,
                          const std::vector<double>& breaks, double tol) {
    std::vector<double> cuts{lo, hi};
    for (double b : breaks) {
        if (b > lo && b < hi) {
            cuts.push_back(b);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    const double nudge = 1e-12;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        acc += adaptive_simpson(f, cuts[i] + nudge, cuts[i + 1] - nudge, tol);
    }
    return acc;
}

double profile_max(const StarDomainSpec& spec) {
    double best = 0.0;
    const int grid = 2048;
    const double arc = spec.theta_hi - spec.theta_lo;
    for (int i = 0; i <= grid; ++i) {
        const double theta = spec.theta_lo + arc * i / grid;
        best = std::max(best, spec.radius(theta));
    }
    for (double j : spec.jumps) {
        if (j > spec.theta_lo && j < spec.theta_hi) {
            best = std::max({best, spec.radius(j - 1e-9), spec.radius(j + 1e-9)});
        }
    }
    return best;
}

double uniform_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0);
}

// splitmix64, the stream used for all Monte Carlo draws here.
struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

}  // namespace

double fundamental_width(const LatticeSpec& lattice, const PlaneVector& v) {
    if (lattice.cusps.empty()) {
        throw std::invalid_argument("fundamental_width: lattice carries no cusp data");
    }
    const CuspData& cusp = lattice.cusps.front();
    const double vn = v.norm();
    if (!(vn > 0.0)) {
        throw std::invalid_argument("fundamental_width: base point must be nonzero");
    }
    const double cross = v.x * cusp.direction.y - v.y * cusp.direction.x;
    const double dot = v.x * cusp.direction.x + v.y * cusp.direction.y;
    if (std::abs(cross) > tolerances().coordinate * vn * cusp.direction.norm() || !(dot > 0.0)) {
        throw std::invalid_argument("fundamental_width: base point must lie on the cusp ray");
    }
    const double x0 = cusp.width / v.norm_sq();
    if (!cusp.witness_word.empty()) {
        const Mat2 witness = word_to_matrix(lattice, cusp.witness_word);
        const Mat2 frame = rotation(std::atan2(v.y, v.x)) * geodesic_flow(2.0 * std::log(vn));
        const IwasawaCoords iw = iwasawa(frame.inverse() * witness * frame);
        const double angle = std::min({std::abs(iw.theta), std::abs(iw.theta - kPi),
                                       std::abs(iw.theta - kTwoPi)});
        const bool shear_like = std::abs(iw.yscale - 1.0) <= 1e-9 && angle <= 1e-9;
        if (!shear_like || std::abs(std::abs(iw.x) - x0) > 1e-9 * std::max(1.0, x0)) {
            throw std::invalid_argument(
                "fundamental_width: cusp witness does not act as a shear of the declared "
                "width in the base point frame");
        }
    }
    return x0;
}

double LiftedDomain::t2(double theta) const {
    return 2.0 * std::log(scale * spec.radius(theta)) - t_v;
}

LiftedDomain build_lifted_domain(const LatticeSpec& lattice, const PlaneVector& v,
                                 const StarDomainSpec& spec, double scale) {
    const double arc = spec.theta_hi - spec.theta_lo;
    if (!(arc > 0.0) || arc > kTwoPi + 1e-15) {
        throw std::invalid_argument("build_lifted_domain: angular window must span (0, 2 pi]");
    }
    if (!(spec.inner_radius > 0.0) || !(scale > 0.0)) {
        throw std::invalid_argument("build_lifted_domain: inner radius and scale must be positive");
    }
    LiftedDomain dom;
    dom.spec = spec;
    dom.scale = scale;
    dom.base = v;
    dom.x0 = fundamental_width(lattice, v);
    dom.theta_v = std::atan2(v.y, v.x);
    dom.t_v = 2.0 * std::log(v.norm());
    dom.t1 = 2.0 * std::log(spec.inner_radius / v.norm());
    dom.frame = rotation(dom.theta_v) * geodesic_flow(dom.t_v);
    const int grid = 512;
    for (int i = 0; i <= grid; ++i) {
        const double theta = spec.theta_lo + arc * i / grid;
        const double rho = spec.radius(theta);
        if (!(rho > 0.0)) {
            throw std::invalid_argument("build_lifted_domain: profile must be positive");
        }
        if (!(scale * rho > spec.inner_radius)) {
            throw std::invalid_argument(
                "build_lifted_domain: radial slab is empty at angle " + std::to_string(theta));
        }
    }
    return dom;
}

bool domain_contains_point(const LiftedDomain& dom, const PlaneVector& p) {
    const PolarCoords polar = to_polar(p);
    if (polar.r < dom.spec.inner_radius - 1e-12) {
        return false;
    }
    const double arc = dom.spec.theta_hi - dom.spec.theta_lo;
    const double rel = wrap_angle(polar.theta - dom.spec.theta_lo);
    if (rel > arc + 1e-15) {
        return false;
    }
    const double theta_in = dom.spec.theta_lo + std::min(rel, arc);
    return polar.r <= dom.scale * dom.spec.radius(theta_in) + 1e-12;
}

bool lift_contains(const LiftedDomain& dom, const Mat2& gamma) {
    const IwasawaCoords iw = iwasawa(gamma * dom.frame);
    const double t = 2.0 * std::log(iw.yscale) - dom.t_v;
    if (t < dom.t1 - 1e-12) {
        return false;
    }
    const double arc = dom.spec.theta_hi - dom.spec.theta_lo;
    const double rel = wrap_angle(iw.theta - dom.spec.theta_lo);
    if (rel > arc + 1e-15) {
        return false;
    }
    const double theta_in = dom.spec.theta_lo + std::min(rel, arc);
    if (t > dom.t2(theta_in) + 1e-12) {
        return false;
    }
    // Half open shear window, no tolerance: this is what makes the count
    // per stabilizer coset exactly one.
    return iw.x >= 0.0 && iw.x < dom.x0;
}

std::vector<Mat2> enumerate_group_ball(const LatticeSpec& lattice, double bound,
                                       double dedup_quantum) {
    if (!(bound >= 1.5)) {
        throw std::invalid_argument("enumerate_group_ball: bound excludes the identity");
    }
    if (!(dedup_quantum > 0.0)) {
        throw std::invalid_argument("enumerate_group_ball: quantum must be positive");
    }
    bool exact_path = true;
    for (const auto& g : lattice.generators) {
        exact_path = exact_path && g.has_exact();
    }
    auto key_of = [&](const Mat2& m) -> std::array<std::int64_t, 4> {
        if (exact_path) {
            return *m.exact;
        }
        return {std::llround(m.a / dedup_quantum), std::llround(m.b / dedup_quantum),
                std::llround(m.c / dedup_quantum), std::llround(m.d / dedup_quantum)};
    };
    std::set<std::array<std::int64_t, 4>> seen;
    std::vector<Mat2> out;
    std::vector<std::size_t> stack;
    const Mat2 id = Mat2::identity();
    seen.insert(key_of(id));
    out.push_back(id);
    stack.push_back(0);
    while (!stack.empty()) {
        const Mat2 current = out[stack.back()];
        stack.pop_back();
        for (const auto& g : lattice.generators) {
            const Mat2 child = current * g;
            if (child.frobenius_norm() > bound) {
                continue;
            }
            if (!seen.insert(key_of(child)).second) {
                continue;
            }
            out.push_back(child);
            stack.push_back(out.size() - 1);
            if (out.size() > 50000000) {
                throw std::length_error("enumerate_group_ball: ball exceeds 5e7 elements");
            }
        }
    }
    return out;
}

BijectionReport verify_lift_bijection(const LatticeSpec& lattice, const PlaneVector& v,
                                      const StarDomainSpec& spec, double scale) {
    const LiftedDomain dom = build_lifted_domain(lattice, v, spec, scale);
    const double rho_max = profile_max(spec);
    const double r_cap = scale * rho_max * 1.0000001 + 1e-9;

    EnumOptions options;
    const OrbitSet orbit = enumerate_orbit(lattice, v, r_cap, options);
    if (!orbit.stabilized) {
        throw std::runtime_error("verify_lift_bijection: orbit walk did not stabilize");
    }
    const double quantum = options.effective_quantum(r_cap);
    auto point_key = [&](const PlaneVector& p) {
        return std::pair<std::int64_t, std::int64_t>(std::llround(p.x / quantum),
                                                     std::llround(p.y / quantum));
    };
    std::map<std::pair<std::int64_t, std::int64_t>, long> budget;
    std::size_t orbit_count = 0;
    for (const auto& p : orbit.points) {
        if (domain_contains_point(dom, p)) {
            ++orbit_count;
            ++budget[point_key(p)];
        }
    }

    const double y_max = scale * rho_max;
    const double y_min = spec.inner_radius;
    const double vn = v.norm();
    const double frame_op = std::max(vn, 1.0 / vn);
    const double bound =
        1.6 * frame_op *
        std::sqrt(y_max * y_max * (1.0 + (dom.x0 + 1.0) * (dom.x0 + 1.0)) +
                  1.0 / (y_min * y_min) + 4.0);
    const std::vector<Mat2> ball = enumerate_group_ball(lattice, bound);

    BijectionReport report;
    report.frobenius_bound = bound;
    report.group_states = ball.size();
    report.orbit_count = orbit_count;
    bool points_ok = true;
    for (const auto& gamma : ball) {
        if (!lift_contains(dom, gamma)) {
            continue;
        }
        ++report.group_count;
        const auto it = budget.find(point_key(gamma * v));
        if (it == budget.end() || it->second == 0) {
            points_ok = false;
        } else {
            --it->second;
        }
    }
    for (const auto& [key, remaining] : budget) {
        if (remaining != 0) {
            points_ok = false;
        }
    }
    report.counts_match = report.orbit_count == report.group_count;
    report.points_match = points_ok && report.counts_match;
    return report;
}

double haar_box_volume(double theta_width, double t_lo, double t_hi, double x_width) {
    if (!(theta_width >= 0.0) || !(x_width >= 0.0) || !(t_hi >= t_lo)) {
        throw std::invalid_argument("haar_box_volume: degenerate box");
    }
    return theta_width * x_width * (std::exp(t_hi) - std::exp(t_lo));
}

double haar_volume(const LiftedDomain& dom) {
    const double floor_level = std::exp(dom.t1);
    auto slab = [&](double theta) {
        return std::max(0.0, std::exp(dom.t2(theta)) - floor_level);
    };
    return dom.x0 *
           piecewise_integral(slab, dom.spec.theta_lo, dom.spec.theta_hi, dom.spec.jumps, 1e-11);
}

WellRoundResult wellroundedness_ratio(const StarDomainSpec& spec, double x0, double scale,
                                      double eta) {
    const double arc = spec.theta_hi - spec.theta_lo;
    const double c = std::max(1.0, spec.lipschitz);
    const double limit = std::min({spec.regularity_scale, arc, x0}) / (4.0 * c);
    if (!(eta > 0.0) || eta > limit + 1e-15) {
        throw std::invalid_argument("wellroundedness_ratio: eta must lie in (0, " +
                                    std::to_string(limit) + "]");
    }
    const double d = c * eta;
    const double t1 = 2.0 * std::log(spec.inner_radius);
    auto t2 = [&](double theta) { return 2.0 * std::log(scale * spec.radius(theta)); };

    const double inner_floor = std::exp(t1 + d);
    auto shrunk = [&](double theta) {
        return std::max(0.0, std::exp(t2(theta) - d) - inner_floor);
    };
    const double inner =
        (x0 - 2.0 * d) *
        piecewise_integral(shrunk, spec.theta_lo + d, spec.theta_hi - d, spec.jumps, 1e-11);

    // Outside the window the radial ceiling continues at the larger of the
    // two endpoint levels.
    const double edge_level = std::max(t2(spec.theta_lo + 1e-12), t2(spec.theta_hi - 1e-12));
    const double outer_floor = std::exp(t1 - d);
    auto fattened = [&](double theta) {
        const double ceiling =
            (theta < spec.theta_lo || theta > spec.theta_hi) ? edge_level : t2(theta);
        return std::max(0.0, std::exp(ceiling + d) - outer_floor);
    };
    std::vector<double> outer_breaks = spec.jumps;
    outer_breaks.push_back(spec.theta_lo);
    outer_breaks.push_back(spec.theta_hi);
    const double outer =
        (x0 + 2.0 * d) *
        piecewise_integral(fattened, spec.theta_lo - d, spec.theta_hi + d, outer_breaks, 1e-11);

    WellRoundResult out;
    out.eta = eta;
    out.margin = d;
    out.inner_volume = inner;
    out.outer_volume = outer;
    out.ratio = inner > 0.0 ? outer / inner : std::numeric_limits<double>::infinity();
    out.linear_constant = (out.ratio - 1.0) / eta;
    return out;
}

HaarInvarianceReport haar_invariance_check(const Mat2& h, std::uint64_t seed,
                                           std::size_t samples) {
    require_unimodular(h, "haar_invariance_check");
    const double t_lo = -2.5;
    const double t_hi = 2.5;
    const double x_half = 3.5;
    const double box_volume = haar_box_volume(kTwoPi, t_lo, t_hi, 2.0 * x_half);

    struct Probe {
        double theta_c, t_c, x_c, theta_h, t_h, x_h;
    };
    // One fat probe keeps the pooled expectation large enough for the 1%
    // deviation budget; the small ones exercise localized occupancy.
    const std::vector<Probe> probes = {
        {kPi, 0.0, 0.0, kPi, 0.9, 1.2},      {0.9, -0.3, -0.8, 0.4, 0.25, 0.4},
        {2.5, 0.4, 0.7, 0.4, 0.25, 0.4},     {4.2, 0.0, 0.0, 0.4, 0.25, 0.4},
        {5.5, -0.5, 0.8, 0.4, 0.25, 0.4},    {1.8, 0.6, -0.8, 0.4, 0.25, 0.4},
    };

    // Every probe pulled back by h^-1 must stay inside the sample box, or
    // the occupancy expectations are wrong. Checked on a corner grid.
    const Mat2 h_inv = h.inverse();
    for (const auto& probe : probes) {
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                for (int k = 0; k < 5; ++k) {
                    const double theta = probe.theta_c + probe.theta_h * (i / 2.0 - 1.0);
                    const double t = probe.t_c + probe.t_h * (j / 2.0 - 1.0);
                    const double x = probe.x_c + probe.x_h * (k / 2.0 - 1.0);
                    const Mat2 g = rotation(theta) * geodesic_flow(t) * shear(x) * h_inv;
                    const IwasawaCoords iw = iwasawa(g);
                    const double tb = 2.0 * std::log(iw.yscale);
                    if (tb < t_lo || tb > t_hi || std::abs(iw.x) > x_half) {
                        throw std::invalid_argument(
                            "haar_invariance_check: probe escapes the sample box under "
                            "h^-1; use a milder h");
                    }
                }
            }
        }
    }

    std::vector<std::size_t> hits(probes.size(), 0);
    SplitMix rng{seed};
    const double e_lo = std::exp(t_lo);
    const double e_hi = std::exp(t_hi);
    for (std::size_t n = 0; n < samples; ++n) {
        const double theta = kTwoPi * uniform_from_bits(rng.next());
        const double t = std::log(e_lo + uniform_from_bits(rng.next()) * (e_hi - e_lo));
        const double x = x_half * (2.0 * uniform_from_bits(rng.next()) - 1.0);
        const Mat2 g = rotation(theta) * geodesic_flow(t) * shear(x) * h;
        const IwasawaCoords iw = iwasawa(g);
        const double tb = 2.0 * std::log(iw.yscale);
        for (std::size_t j = 0; j < probes.size(); ++j) {
            const Probe& probe = probes[j];
            const double dtheta = wrap_angle(iw.theta - probe.theta_c);
            if (std::min(dtheta, kTwoPi - dtheta) > probe.theta_h) {
                continue;
            }
            if (std::abs(tb - probe.t_c) > probe.t_h || std::abs(iw.x - probe.x_c) > probe.x_h) {
                continue;
            }
            ++hits[j];
        }
    }

    HaarInvarianceReport report;
    report.samples = samples;
    report.probes = probes.size();
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < probes.size(); ++j) {
        const Probe& probe = probes[j];
        const double volume = haar_box_volume(2.0 * probe.theta_h, probe.t_c - probe.t_h,
                                              probe.t_c + probe.t_h, 2.0 * probe.x_h);
        const double p = volume / box_volume;
        const double expected = static_cast<double>(samples) * p;
        const double sigma = std::sqrt(expected * (1.0 - p));
        const double z = (static_cast<double>(hits[j]) - expected) / sigma;
        sum_sq += z * z;
        pooled_obs += static_cast<double>(hits[j]);
        pooled_exp += expected;
    }
    report.mean_square_z = sum_sq / static_cast<double>(probes.size());
    report.total_rel_deviation = std::abs(pooled_obs - pooled_exp) / pooled_exp;
    report.ok = report.mean_square_z <= 2.0 && report.total_rel_deviation <= 0.01;
    return report;
}

}  // namespace orbitcount
