#include "orbitcount/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace orbitcount {

double EnumOptions::effective_quantum(double r_cap) const {
    if (dedup_quantum > 0.0) {
        return dedup_quantum;
    }
    return 1e-9 * std::max(1.0, r_cap);
}

namespace {

// Open addressing set of nonzero uint64 keys. The BFS over integer points
// stores millions of entries, so the per node overhead of unordered_set is
// worth avoiding.
class FlatSet64 {
  public:
    explicit FlatSet64(std::size_t expected) {
        std::size_t cap = 64;
        while (cap < expected * 2) {
            cap <<= 1;
        }
        slots_.assign(cap, 0);
        mask_ = cap - 1;
    }

    // Returns true when the key was absent and has been inserted.
    bool insert(std::uint64_t key) {
        if ((size_ + 1) * 2 > slots_.size()) {
            grow();
        }
        std::size_t i = index_of(key);
        while (slots_[i] != 0) {
            if (slots_[i] == key) {
                return false;
            }
            i = (i + 1) & mask_;
        }
        slots_[i] = key;
        ++size_;
        return true;
    }

    std::size_t size() const { return size_; }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::size_t index_of(std::uint64_t key) const { return mix(key) & mask_; }

    void grow() {
        std::vector<std::uint64_t> old;
        old.swap(slots_);
        slots_.assign(old.size() * 2, 0);
        mask_ = slots_.size() - 1;
        size_ = 0;
        for (std::uint64_t k : old) {
            if (k != 0) {
                insert(k);
            }
        }
    }

    std::vector<std::uint64_t> slots_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

struct IntPoint {
    std::int64_t x, y;
};

std::uint64_t pack_int_point(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(x)))
            << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(y)));
}

bool integer_valued(double v) {
    return std::abs(v - std::llround(v)) < 1e-12;
}

bool lattice_is_integral(const LatticeSpec& lattice) {
    for (const Mat2& g : lattice.generators) {
        if (!g.has_exact()) {
            return false;
        }
    }
    return true;
}

void finalize_orbit(OrbitSet& orbit) {
    std::vector<std::size_t> order(orbit.points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> norm(orbit.points.size());
    std::vector<double> angle(orbit.points.size());
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        norm[i] = orbit.points[i].norm();
        angle[i] = std::atan2(orbit.points[i].y, orbit.points[i].x);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (norm[i] != norm[j]) {
            return norm[i] < norm[j];
        }
        if (angle[i] != angle[j]) {
            return angle[i] < angle[j];
        }
        return orbit.points[i].x < orbit.points[j].x;
    });
    std::vector<PlaneVector> pts(orbit.points.size());
    std::vector<double> norms(orbit.points.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        pts[k] = orbit.points[order[k]];
        norms[k] = norm[order[k]];
    }
    orbit.points = std::move(pts);
    orbit.norms = std::move(norms);
}

OrbitSet enumerate_integer_orbit(const LatticeSpec& lattice, std::int64_t vx, std::int64_t vy,
                                 double r_cap, const EnumOptions& options) {
    OrbitSet orbit;
    orbit.lattice_id = lattice.id;
    orbit.base = PlaneVector{static_cast<double>(vx), static_cast<double>(vy)};
    orbit.r_cap = r_cap;
    orbit.options = options;
    orbit.provenance = "walk-exact";

    const double quantum = options.effective_quantum(r_cap);
    const double slack_r = options.norm_slack * r_cap;
    const double slack_sq = slack_r * slack_r;
    const double keep_r = r_cap + quantum;
    const double keep_sq = keep_r * keep_r;

    if (static_cast<double>(vx) * vx + static_cast<double>(vy) * vy > slack_sq) {
        throw std::invalid_argument("enumerate_orbit: base vector lies outside the slack ball");
    }
    if (slack_r >= 2147483646.0) {
        throw std::invalid_argument("enumerate_orbit: cap too large for packed integer keys");
    }

    std::vector<std::array<std::int64_t, 4>> gens;
    gens.reserve(lattice.generators.size());
    for (const Mat2& g : lattice.generators) {
        gens.push_back(*g.exact);
    }

    FlatSet64 visited(1 << 16);
    std::vector<IntPoint> frontier, next;
    visited.insert(pack_int_point(vx, vy));
    frontier.push_back(IntPoint{vx, vy});
    if (static_cast<double>(vx) * vx + static_cast<double>(vy) * vy <= keep_sq) {
        orbit.points.push_back(orbit.base);
    }

    std::size_t depth = 0;
    while (!frontier.empty() && depth < options.max_depth) {
        ++depth;
        next.clear();
        for (const IntPoint& p : frontier) {
            for (const auto& g : gens) {
                const std::int64_t nx = g[0] * p.x + g[1] * p.y;
                const std::int64_t ny = g[2] * p.x + g[3] * p.y;
                const double nsq =
                    static_cast<double>(nx) * nx + static_cast<double>(ny) * ny;
                if (nsq > slack_sq) {
                    continue;
                }
                if (!visited.insert(pack_int_point(nx, ny))) {
                    continue;
                }
                next.push_back(IntPoint{nx, ny});
                if (nsq <= keep_sq) {
                    orbit.points.push_back(
                        PlaneVector{static_cast<double>(nx), static_cast<double>(ny)});
                }
            }
        }
        frontier.swap(next);
    }

    orbit.depth_used = depth;
    orbit.stabilized = frontier.empty();
    orbit.states_explored = visited.size();
    finalize_orbit(orbit);
    return orbit;
}

struct CellKey {
    std::int64_t qx, qy;
    bool operator==(const CellKey& o) const { return qx == o.qx && qy == o.qy; }
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        auto mixin = [&h](std::uint64_t v) {
            h ^= v;
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        };
        mixin(static_cast<std::uint64_t>(k.qx));
        mixin(static_cast<std::uint64_t>(k.qy));
        return static_cast<std::size_t>(h);
    }
};

OrbitSet enumerate_real_orbit(const LatticeSpec& lattice, const PlaneVector& v, double r_cap,
                              const EnumOptions& options) {
    OrbitSet orbit;
    orbit.lattice_id = lattice.id;
    orbit.base = v;
    orbit.r_cap = r_cap;
    orbit.options = options;
    orbit.provenance = "walk-grid";

    const double quantum = options.effective_quantum(r_cap);
    const double slack_r = options.norm_slack * r_cap;
    const double slack_sq = slack_r * slack_r;
    const double keep_r = r_cap + quantum;
    const double keep_sq = keep_r * keep_r;
    const double merge_sq = quantum * quantum;

    if (v.norm_sq() > slack_sq) {
        throw std::invalid_argument("enumerate_orbit: base vector lies outside the slack ball");
    }

    std::unordered_map<CellKey, PlaneVector, CellKeyHash> visited;
    auto cell_of = [quantum](const PlaneVector& p) {
        return CellKey{std::llround(p.x / quantum), std::llround(p.y / quantum)};
    };
    // A point is new when no visited representative in the nine surrounding
    // cells lies within the quantum.
    auto try_insert = [&](const PlaneVector& p) {
        const CellKey c = cell_of(p);
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = visited.find(CellKey{c.qx + dx, c.qy + dy});
                if (it != visited.end()) {
                    const double ddx = it->second.x - p.x;
                    const double ddy = it->second.y - p.y;
                    if (ddx * ddx + ddy * ddy <= merge_sq) {
                        return false;
                    }
                }
            }
        }
        visited.emplace(c, p);
        return true;
    };

    std::vector<PlaneVector> frontier, next;
    try_insert(v);
    frontier.push_back(v);
    if (v.norm_sq() <= keep_sq) {
        orbit.points.push_back(v);
    }

    std::size_t depth = 0;
    while (!frontier.empty() && depth < options.max_depth) {
        ++depth;
        next.clear();
        for (const PlaneVector& p : frontier) {
            for (const Mat2& g : lattice.generators) {
                const PlaneVector q = g * p;
                if (q.norm_sq() > slack_sq) {
                    continue;
                }
                if (!try_insert(q)) {
                    continue;
                }
                next.push_back(q);
                if (q.norm_sq() <= keep_sq) {
                    orbit.points.push_back(q);
                }
            }
        }
        frontier.swap(next);
    }

    orbit.depth_used = depth;
    orbit.stabilized = frontier.empty();
    orbit.states_explored = visited.size();
    finalize_orbit(orbit);
    return orbit;
}

}  // namespace

OrbitSet enumerate_orbit(const LatticeSpec& lattice, const PlaneVector& v, double r_cap,
                         const EnumOptions& options) {
    if (!(r_cap > 0.0)) {
        throw std::invalid_argument("enumerate_orbit: r_cap must be positive");
    }
    if (v.norm_sq() == 0.0) {
        throw std::invalid_argument("enumerate_orbit: base vector must be nonzero");
    }
    if (lattice.generators.empty()) {
        throw std::invalid_argument("enumerate_orbit: lattice has no generators");
    }
    if (options.norm_slack < 1.0) {
        throw std::invalid_argument("enumerate_orbit: norm_slack must be at least 1");
    }
    if (lattice_is_integral(lattice) && integer_valued(v.x) && integer_valued(v.y)) {
        return enumerate_integer_orbit(lattice, std::llround(v.x), std::llround(v.y), r_cap,
                                       options);
    }
    return enumerate_real_orbit(lattice, v, r_cap, options);
}

std::size_t count_at_radius(const OrbitSet& orbit, double r) {
    const double quantum = orbit.options.effective_quantum(orbit.r_cap);
    if (r > orbit.r_cap + quantum) {
        throw std::out_of_range("count_at_radius: radius exceeds the enumeration cap");
    }
    auto it = std::upper_bound(orbit.norms.begin(), orbit.norms.end(), r + quantum);
    return static_cast<std::size_t>(it - orbit.norms.begin());
}

OrbitSet primitive_points_oracle(double r_cap) {
    if (!(r_cap >= 1.0)) {
        throw std::invalid_argument("primitive_points_oracle: r_cap must be at least 1");
    }
    OrbitSet orbit;
    orbit.lattice_id = "sl2z";
    orbit.base = PlaneVector{1.0, 0.0};
    orbit.r_cap = r_cap;
    orbit.provenance = "primitive-oracle";

    const double cap_sq = r_cap * r_cap;
    const std::int64_t xmax = static_cast<std::int64_t>(std::floor(r_cap));
    orbit.points.push_back(PlaneVector{1.0, 0.0});
    orbit.points.push_back(PlaneVector{-1.0, 0.0});
    orbit.points.push_back(PlaneVector{0.0, 1.0});
    orbit.points.push_back(PlaneVector{0.0, -1.0});
    for (std::int64_t x = 1; x <= xmax; ++x) {
        const double rem = cap_sq - static_cast<double>(x) * static_cast<double>(x);
        if (rem < 1.0) {
            continue;
        }
        const std::int64_t ymax = static_cast<std::int64_t>(std::floor(std::sqrt(rem)));
        for (std::int64_t y = 1; y <= ymax; ++y) {
            if (std::gcd(x, y) != 1) {
                continue;
            }
            const double dx = static_cast<double>(x);
            const double dy = static_cast<double>(y);
            orbit.points.push_back(PlaneVector{dx, dy});
            orbit.points.push_back(PlaneVector{-dx, dy});
            orbit.points.push_back(PlaneVector{dx, -dy});
            orbit.points.push_back(PlaneVector{-dx, -dy});
        }
    }
    orbit.stabilized = true;
    orbit.depth_used = 0;
    orbit.states_explored = orbit.points.size();
    finalize_orbit(orbit);
    return orbit;
}

void scan_primitive_norms(double r_cap, const std::function<void(double, int)>& visit) {
    if (!(r_cap >= 1.0)) {
        throw std::invalid_argument("scan_primitive_norms: r_cap must be at least 1");
    }
    visit(1.0, 4);
    const double cap_sq = r_cap * r_cap;
    const std::int64_t xmax = static_cast<std::int64_t>(std::floor(r_cap));
    for (std::int64_t x = 1; x <= xmax; ++x) {
        const double xsq = static_cast<double>(x) * static_cast<double>(x);
        const double rem = cap_sq - xsq;
        if (rem < 1.0) {
            continue;
        }
        const std::int64_t ymax = static_cast<std::int64_t>(std::floor(std::sqrt(rem)));
        for (std::int64_t y = 1; y <= ymax; ++y) {
            if (std::gcd(x, y) != 1) {
                continue;
            }
            visit(xsq + static_cast<double>(y) * static_cast<double>(y), 4);
        }
    }
}

std::vector<std::size_t> primitive_counts(const std::vector<double>& radii) {
    if (radii.empty()) {
        return {};
    }
    if (!std::is_sorted(radii.begin(), radii.end())) {
        throw std::invalid_argument("primitive_counts: radii must be sorted ascending");
    }
    std::vector<double> caps_sq(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        caps_sq[i] = radii[i] * radii[i];
    }
    std::vector<std::size_t> counts(radii.size(), 0);
    scan_primitive_norms(radii.back(), [&](double norm_sq, int mult) {
        auto it = std::lower_bound(caps_sq.begin(), caps_sq.end(), norm_sq);
        if (it != caps_sq.end()) {
            counts[static_cast<std::size_t>(it - caps_sq.begin())] +=
                static_cast<std::size_t>(mult);
        }
    });
    std::size_t running = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        running += counts[i];
        counts[i] = running;
    }
    return counts;
}

}  // namespace orbitcount
