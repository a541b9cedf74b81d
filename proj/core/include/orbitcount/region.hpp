#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orbitcount/cutoff.hpp"
#include "orbitcount/orbit.hpp"

namespace orbitcount {

// Angular radius function of a star shaped region, with its trigonometric
// series computed at construction. Series index n runs -order..order,
// stored at fourier[n + order].
struct StarProfile {
    std::function<double(double)> radius;
    int order = 0;
    std::vector<std::complex<double>> fourier;
    double min_radius = 0.0;
    double max_radius = 0.0;

    double eval_series(double theta) const;
};

// Samples the profile on a uniform grid and takes the discrete transform.
// Throws when the profile dips to 0 or below.
StarProfile make_star_profile(const std::function<double(double)>& radius, int order = 64,
                              int grid = 4096);

// Largest deviation between the profile and its truncated series on a probe
// grid; smooth profiles of modest order come back at rounding level.
double star_profile_series_error(const StarProfile& profile, int probe_grid = 2048);

struct BallRegion {};
struct EllipseRegion {
    Mat2 shape;  // region at scale R is shape * (ball of radius R)
};
struct SectorRegion {
    double theta_lo = 0.0;
    double arc = 0.0;  // angular width, in (0, 2*pi]
};
struct EllipticSectorRegion {
    Mat2 shape;
    double theta_lo = 0.0;
    double arc = 0.0;  // sector taken in the preimage of shape
};
struct StarRegion {
    StarProfile profile;  // region at scale R: r <= R * rho(theta)
};

using Region = std::variant<BallRegion, EllipseRegion, SectorRegion, EllipticSectorRegion,
                            StarRegion>;

// Smallest scale R at which the point falls inside the region; +infinity
// for points outside a sector's angular window.
double region_entry_scale(const Region& region, const PlaneVector& p);

// Number of orbit points inside the region at scale r. Boundary points
// within the orbit's dedup quantum are counted in. Throws when the region
// at this scale is not covered by the enumeration cap.
std::size_t count_in_region(const OrbitSet& orbit, const Region& region, double r);

struct CountCurve {
    std::vector<double> radii;
    std::vector<std::size_t> counts;
    std::string label;
};

// Counts at every scale of the grid in one pass over the orbit.
CountCurve count_curve(const OrbitSet& orbit, const Region& region,
                       const std::vector<double>& radii);

// Least squares fit of counts ~ c * r^2.
struct FitResult {
    double constant = 0.0;
    double max_rel_residual = 0.0;
    std::size_t samples = 0;
};
// Requires at least 5 samples spanning a factor of 10 in radius.
FitResult fit_constant(const CountCurve& curve);

// Regression of log |N(r) - c0 r^2| against log r, dropping the smallest
// decade of radii. exponent is absent when every usable residual vanishes.
struct ExponentFit {
    std::optional<double> exponent;
    double sup_normalized = 0.0;  // max |N - c0 r^2| / r^(4/3) over the grid
    std::size_t samples_used = 0;
};
ExponentFit fit_error_exponent(const CountCurve& curve, double c0);

// Histogram of orbit directions at scale r: bins[k] counts points with
// angle in [2 pi k / bins, 2 pi (k+1) / bins).
std::vector<std::size_t> sector_profile(const OrbitSet& orbit, double r, int bins);

// Smooth sandwich of the sharp count: lower_sum <= N(r) and
// N(r) <= upper_sum + N(r / u) for the cutoff pair at u.
struct SandwichResult {
    double lower_sum = 0.0;
    double upper_sum = 0.0;
    std::size_t count = 0;
    std::size_t count_shrunk = 0;
    bool ok = false;
};
SandwichResult sandwich_check(const OrbitSet& orbit, double r, double u);

// CSV projection of a curve, "# config_digest=<digest>" first.
void write_count_curve_csv(const std::string& path, const CountCurve& curve,
                           const std::string& config_digest);

}  // namespace orbitcount
