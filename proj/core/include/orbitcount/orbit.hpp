#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "orbitcount/lattice.hpp"

namespace orbitcount {

struct EnumOptions {
    // Grid cell size for floating point dedup. 0 selects 1e-9 * max(1, r_cap).
    double dedup_quantum = 0.0;
    // Children beyond norm_slack * r_cap are discarded. 4 leaves ample room
    // for the reduction paths that connect any two points of the ball.
    double norm_slack = 4.0;
    std::size_t max_depth = 1u << 20;
    int stabilization_window = 2;

    double effective_quantum(double r_cap) const;
};

struct OrbitSet {
    std::string lattice_id;
    PlaneVector base;
    double r_cap = 0.0;
    EnumOptions options;
    // Sorted by (norm, angle); norms[i] caches points[i].norm().
    std::vector<PlaneVector> points;
    std::vector<double> norms;
    bool stabilized = false;
    std::size_t depth_used = 0;
    std::size_t states_explored = 0;
    std::string provenance;

    std::size_t size() const { return points.size(); }
};

// Breadth first closure of {generators} * v inside the ball of radius
// norm_slack * r_cap, collecting points with norm <= r_cap + quantum.
// The frontier drains exactly when every reachable point of the slack ball
// has been visited, which is the stabilization certificate; hitting
// max_depth first leaves stabilized = false.
OrbitSet enumerate_orbit(const LatticeSpec& lattice, const PlaneVector& v, double r_cap,
                         const EnumOptions& options = {});

// Number of orbit points with norm <= r + quantum. Throws std::out_of_range
// when r exceeds the enumeration cap.
std::size_t count_at_radius(const OrbitSet& orbit, double r);

// Independent construction of the primitive integer vectors of norm <= r_cap
// (both coordinates integers, gcd 1, all four sign quadrants plus the axes).
// This is the e1 orbit of the integer preset, built without any group walk.
OrbitSet primitive_points_oracle(double r_cap);

// Streamed variant of the oracle: calls visit(norm_sq, multiplicity) for
// every primitive norm value without materializing points. Quadrant pairs
// carry multiplicity 4, the axis points arrive as one call with norm_sq 1
// and multiplicity 4.
void scan_primitive_norms(double r_cap, const std::function<void(double, int)>& visit);

// Counts of primitive integer vectors with norm <= r for each entry of
// radii (which must be sorted ascending). Single pass, no materialization.
std::vector<std::size_t> primitive_counts(const std::vector<double>& radii);

}  // namespace orbitcount
