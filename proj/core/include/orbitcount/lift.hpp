#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "orbitcount/lattice.hpp"
#include "orbitcount/orbit.hpp"

namespace orbitcount {

// Star shaped angular sector with radial profile rho, truncated below at
// inner_radius. The profile may jump at the listed angles; away from them
// it is Lipschitz with the stated constant. regularity_scale caps the
// perturbation size the well-roundedness comparison accepts.
struct StarDomainSpec {
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    std::function<double(double)> radius;  // rho > 0 on [theta_lo, theta_hi]
    double lipschitz = 0.0;
    std::vector<double> jumps;
    double inner_radius = 0.0;  // lower radial cut, > 0
    double regularity_scale = 1.0;
};

// Shear length of the base point's unipotent stabilizer in the frame that
// carries v to the unit horizontal vector: cusp width / |v|^2. The cusp
// witness word, conjugated into that frame, must come out as a pure shear
// of exactly this length or the lattice data is inconsistent with v.
double fundamental_width(const LatticeSpec& lattice, const PlaneVector& v);

// Pullback data for the domain scaled by `scale`: group elements gamma land
// inside iff iwasawa(gamma * frame) has its angle in the window, its
// log-radial coordinate t = 2 log(yscale) - t_v in [t1, t2(theta)], and its
// shear in [0, x0).
struct LiftedDomain {
    StarDomainSpec spec;
    double scale = 0.0;  // T
    PlaneVector base;
    double theta_v = 0.0;
    double t_v = 0.0;  // 2 log |v|
    double x0 = 0.0;
    double t1 = 0.0;  // 2 log(inner_radius / |v|)
    Mat2 frame = Mat2::identity();

    double t2(double theta) const;  // 2 log(scale * rho(theta) / |v|)
};

LiftedDomain build_lifted_domain(const LatticeSpec& lattice, const PlaneVector& v,
                                 const StarDomainSpec& spec, double scale);

// Planar side: |p| in [inner_radius, scale * rho(theta)], angle in window.
bool domain_contains_point(const LiftedDomain& dom, const PlaneVector& p);

// Group side. The half open shear window picks exactly one representative
// per coset of the base point's stabilizer, so the selected elements
// biject onto the selected orbit points.
bool lift_contains(const LiftedDomain& dom, const Mat2& gamma);

// Closure of the generators inside the Frobenius ball, breadth first from
// the identity. Integer lattices dedup on exact entries, others on an
// absolute quantum grid.
std::vector<Mat2> enumerate_group_ball(const LatticeSpec& lattice, double bound,
                                       double dedup_quantum = 1e-9);

struct BijectionReport {
    std::size_t orbit_count = 0;
    std::size_t group_count = 0;
    bool counts_match = false;
    bool points_match = false;  // each selected point hit by exactly one gamma
    double frobenius_bound = 0.0;
    std::size_t group_states = 0;
};

// Enumerates both sides independently (orbit walk vs group ball) and
// verifies that gamma -> gamma v is a bijection between the selected group
// elements and the selected orbit points.
BijectionReport verify_lift_bijection(const LatticeSpec& lattice, const PlaneVector& v,
                                      const StarDomainSpec& spec, double scale);

// Haar volume in rotation/flow/shear coordinates, density e^t dtheta dt dx.
double haar_box_volume(double theta_width, double t_lo, double t_hi, double x_width);
double haar_volume(const LiftedDomain& dom);

struct WellRoundResult {
    double eta = 0.0;
    double margin = 0.0;           // d = max(1, lipschitz) * eta
    double inner_volume = 0.0;     // shrunk lift
    double outer_volume = 0.0;     // fattened lift
    double ratio = 0.0;            // outer / inner
    double linear_constant = 0.0;  // (ratio - 1) / eta
};

// Haar volumes of the eta-shrunk and eta-fattened lifted domains, taken in
// the frame of a unit base point (t1 = 2 log inner_radius). The fattened
// radial ceiling continues past the angular window at the larger of the
// endpoint values. Requires eta <= min(regularity_scale, arc, x0) /
// (4 max(1, lipschitz)) so the shrunk domain stays nonempty.
WellRoundResult wellroundedness_ratio(const StarDomainSpec& spec, double x0, double scale,
                                      double eta);

struct HaarInvarianceReport {
    std::size_t samples = 0;
    std::size_t probes = 0;
    double mean_square_z = 0.0;       // average squared z-score over probes
    double total_rel_deviation = 0.0; // pooled counts vs pooled expectation
    bool ok = false;                  // mean_square_z <= 2 and deviation <= 1%
};

// Draws Haar samples from a fixed box (full circle in angle), pushes them
// through right multiplication by h, and scores probe box occupancy
// against the Haar volumes. Right invariance of e^t dtheta dt dx is what
// makes the scores mean zero; h must be moderate enough that every probe
// pulled back by h^-1 stays inside the sample box (checked, throws).
HaarInvarianceReport haar_invariance_check(const Mat2& h, std::uint64_t seed = 20240901,
                                           std::size_t samples = 1000000);

}  // namespace orbitcount
