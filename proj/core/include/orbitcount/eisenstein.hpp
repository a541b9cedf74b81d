#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "orbitcount/cutoff.hpp"
#include "orbitcount/orbit.hpp"

namespace orbitcount {

// Truncated series value together with an explicit bound on the discarded
// tail, derived from the quadratic growth envelope of the orbit counting
// function near the cap.
struct SeriesValue {
    std::complex<double> value{0.0, 0.0};
    double tail_bound = 0.0;
    double r_cap = 0.0;
    std::size_t terms = 0;
};

// Exact supremum of N(r) / r^2 over the jump radii of the orbit inside
// [lo, hi]. The tail bounds use the window [cap/16, cap]: the envelope near
// the cap is what governs growth beyond it, while small radii spikes say
// nothing about the tail.
double orbit_growth_constant(const OrbitSet& orbit, double lo, double hi);
double orbit_growth_constant(const OrbitSet& orbit);  // window [cap/16, cap]

// Sum of |p|^(-2s) over the enumerated points. Requires Re s > 1; the
// boundary of convergence raises a domain error.
SeriesValue eisenstein_sum(const OrbitSet& orbit, std::complex<double> s);

// Same sum with the angular twist e^(-i n theta_p).
SeriesValue twisted_eisenstein_sum(const OrbitSet& orbit, int n, std::complex<double> s);

// Sum of f(|p| / scale) over orbit points with |p| / scale in
// [support_lo, support_hi]. The support at this scale must stay within the
// enumeration cap; linearity in f is exact.
double theta_transform(const OrbitSet& orbit, const std::function<double(double)>& f,
                       double support_lo, double support_hi, double scale);

// Angular twisted variant, weight f(|p|/scale) e^(-i n theta_p).
std::complex<double> theta_transform_twisted(const OrbitSet& orbit, int n,
                                             const std::function<double(double)>& f,
                                             double support_lo, double support_hi, double scale);

// Source of truncated sums for the residue extrapolation. Decouples the
// extrapolation from how the sums are produced: materialized orbits answer
// from their points, the primitive integer evaluator streams a gcd sweep
// and never stores points.
class EisensteinEvaluator {
  public:
    virtual ~EisensteinEvaluator() = default;
    virtual double r_cap() const = 0;
    // Truncated sums at the given real parameters, one call for the batch.
    virtual std::vector<SeriesValue> eval(const std::vector<double>& sigmas) = 0;
    // N(cap) / cap^2, the first order tail model constant.
    virtual double tail_model_constant() = 0;
};

class OrbitEvaluator : public EisensteinEvaluator {
  public:
    explicit OrbitEvaluator(const OrbitSet& orbit) : orbit_(&orbit) {}
    double r_cap() const override;
    std::vector<SeriesValue> eval(const std::vector<double>& sigmas) override;
    double tail_model_constant() override;

  private:
    const OrbitSet* orbit_;
};

// Streams the primitive integer vectors up to the cap. One sweep serves all
// requested parameters, so caps of 1e4 stay cheap on memory.
class PrimitiveLatticeEvaluator : public EisensteinEvaluator {
  public:
    explicit PrimitiveLatticeEvaluator(double r_cap);
    double r_cap() const override;
    std::vector<SeriesValue> eval(const std::vector<double>& sigmas) override;
    double tail_model_constant() override;

  private:
    void sweep(const std::vector<double>& sigmas);
    double r_cap_;
    double count_at_cap_ = 0.0;
    double growth_constant_ = 0.0;
    std::vector<double> cached_sigmas_;
    std::vector<double> cached_sums_;
};

// Polynomial extrapolation of (sigma - 1) * E(sigma) to sigma = 1 along a
// decreasing schedule. The truncated sums are first completed by the first
// order tail model C_hat * cap^(2 - 2 sigma) / (sigma - 1); extrapolation
// amplifies truncation bias by one to two orders of magnitude, so the raw
// sums alone land far off even when each is within its tail bound.
struct ResidueEstimate {
    double estimate = 0.0;
    std::vector<double> schedule;
    std::vector<double> raw_values;        // Re E_cap(sigma)
    std::vector<double> tail_bounds;
    std::vector<double> corrected_points;  // (sigma-1) E + C_hat cap^(2-2 sigma)
    bool extrapolated = false;
};

// Preconditions: schedule strictly decreasing toward 1, every sigma > 1,
// and every tail bound at most 1 percent of its sum. A cap too small for
// the schedule raises an error naming the required cap.
ResidueEstimate residue_extrapolate(EisensteinEvaluator& evaluator,
                                    const std::vector<double>& schedule);
ResidueEstimate residue_extrapolate(const OrbitSet& orbit, const std::vector<double>& schedule);

// Consistency test between direct smooth counts and their reconstruction
// from the transform on the vertical line Re s = sigma. direct uses the
// orbit sums, recon integrates Psi(s) D(s) scale^s with D the Dirichlet
// series over point norms. tail_* report the mass formally discarded by
// stopping the contour at t_cut (measured on [t_cut, t_max], envelope
// bound beyond t_max).
struct InversionCheck {
    double direct_lower = 0.0;
    double recon_lower = 0.0;
    double direct_upper = 0.0;
    double recon_upper = 0.0;
    double rel_err_lower = 0.0;
    double rel_err_upper = 0.0;
    double tail_lower = 0.0;
    double tail_upper = 0.0;
};
InversionCheck radial_inversion_check(const OrbitSet& orbit, double scale, double u, double sigma,
                                      double t_cut = 1300.0, double t_max = 4500.0);

}  // namespace orbitcount
