#include "orbitcount/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "orbitcount/special.hpp"

namespace orbitcount {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411;

bool is_translation(const Mat2& g, double tol) {
    return std::abs(g.c) <= tol && std::abs(std::abs(g.a) - 1.0) <= tol &&
           std::abs(std::abs(g.d) - 1.0) <= tol;
}

bool integer_entries(const LatticeSpec& lattice) {
    for (const auto& g : lattice.generators) {
        if (!g.has_exact()) {
            return false;
        }
    }
    return true;
}

std::complex<double> prefactor(std::complex<double> s) {
    return kSqrtPi * std::exp(lgamma_complex(s - 0.5) - lgamma_complex(s));
}

// Exact search over classes (c, d mod c), 1 <= c <= m, 0 <= d < c, on a
// triangular bitmap. Transitions send a representative (c, d + kc) through
// the inversion to the class of (|d + kc|, -+c).
ScatteringResult integer_search(std::complex<double> s, const ScatteringOptions& options) {
    const auto m = static_cast<std::uint64_t>(std::llround(options.c_max));
    if (m < 1) {
        throw std::invalid_argument("scattering_series: c_max must be at least 1");
    }
    const std::uint64_t n_states = m * (m + 1) / 2;
    if (n_states > options.max_states) {
        throw std::invalid_argument("scattering_series: box needs " + std::to_string(n_states) +
                                    " states, above the configured limit");
    }
    auto state_index = [](std::uint64_t c, std::uint64_t d) { return c * (c - 1) / 2 + d; };
    std::vector<std::uint64_t> seen((n_states + 63) / 64, 0);
    std::vector<std::uint32_t> multiplicity(m + 1, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    std::size_t inserted = 0;

    auto visit = [&](std::uint64_t c, std::uint64_t d) {
        const std::uint64_t idx = state_index(c, d);
        std::uint64_t& word = seen[idx / 64];
        const std::uint64_t bit = 1ull << (idx % 64);
        if (word & bit) {
            return;
        }
        word |= bit;
        ++multiplicity[c];
        ++inserted;
        stack.emplace_back(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(d));
    };

    // Seed with the bottom row of the inversion itself: class (1, 0).
    visit(1, 0);
    while (!stack.empty()) {
        const auto [c32, d32] = stack.back();
        stack.pop_back();
        const auto c = static_cast<std::int64_t>(c32);
        const auto d = static_cast<std::int64_t>(d32);
        // Representatives d' = d + k c with |d'| <= m, skipping d' = 0
        // whose image is the cusp class itself.
        for (std::int64_t dp = d; dp <= static_cast<std::int64_t>(m); dp += c) {
            if (dp == 0) {
                continue;
            }
            const std::uint64_t c2 = static_cast<std::uint64_t>(dp);
            const std::int64_t d2 = ((-c) % dp + dp) % dp;
            visit(c2, static_cast<std::uint64_t>(d2));
        }
        for (std::int64_t dp = d - c; dp >= -static_cast<std::int64_t>(m); dp -= c) {
            if (dp == 0) {
                continue;
            }
            const std::uint64_t c2 = static_cast<std::uint64_t>(-dp);
            const std::int64_t mod = static_cast<std::int64_t>(c2);
            const std::int64_t d2 = (c % mod + mod) % mod;
            visit(c2, static_cast<std::uint64_t>(d2));
        }
    }

    ScatteringResult out;
    out.c_max = static_cast<double>(m);
    out.frontier_exhausted = true;
    out.states = inserted;
    out.c_values.reserve(m);
    out.multiplicities.reserve(m);
    std::complex<long double> acc(0.0L, 0.0L);
    const std::complex<double> expo = -2.0 * s;
    for (std::uint64_t c = 1; c <= m; ++c) {
        out.c_values.push_back(static_cast<double>(c));
        out.multiplicities.push_back(static_cast<double>(multiplicity[c]));
        if (multiplicity[c] == 0) {
            continue;
        }
        const std::complex<double> term =
            static_cast<double>(multiplicity[c]) * std::exp(expo * std::log(static_cast<double>(c)));
        acc += std::complex<long double>(term.real(), term.imag());
    }
    out.dirichlet_sum = std::complex<double>(static_cast<double>(acc.real()),
                                             static_cast<double>(acc.imag()));
    out.value = prefactor(s) * out.dirichlet_sum;
    return out;
}

// Quantized-key variant for lattices with irrational entries. Same class
// structure, with d taken modulo width * c.
ScatteringResult real_search(const LatticeSpec& lattice, std::complex<double> s,
                             const ScatteringOptions& options) {
    if (lattice.cusps.empty()) {
        throw std::invalid_argument("scattering_series: lattice carries no cusp data");
    }
    const double width = lattice.cusps.front().width;
    const double m = options.c_max;
    const double q = options.dedup_quantum;
    if (!(q > 0.0) || !(m >= 1.0)) {
        throw std::invalid_argument("scattering_series: need positive quantum and c_max >= 1");
    }
    std::vector<const Mat2*> movers;
    for (const auto& g : lattice.generators) {
        if (!is_translation(g, q)) {
            movers.push_back(&g);
        }
    }
    if (movers.empty()) {
        throw std::invalid_argument("scattering_series: no non-translation generators");
    }

    auto canonical = [&](double c, double d) {
        if (c < 0.0) {
            c = -c;
            d = -d;
        }
        const double period = width * c;
        double dm = d - period * std::floor(d / period);
        if (period - dm < 0.5 * q || dm < 0.5 * q) {
            dm = 0.0;
        }
        return std::pair<double, double>(c, dm);
    };
    auto key_of = [&](double c, double dm) {
        return std::pair<long long, long long>(std::llround(c / q), std::llround(dm / q));
    };

    std::set<std::pair<long long, long long>> seen;
    std::map<long long, std::pair<double, double>> counts;  // c key -> (c, m(c))
    std::vector<std::pair<double, double>> stack;
    std::size_t inserted = 0;
    bool exhausted = true;

    auto visit = [&](double c, double d) {
        const auto [cc, dm] = canonical(c, d);
        if (cc < 0.5 * q || cc > m + 0.5 * q) {
            return;
        }
        if (!seen.insert(key_of(cc, dm)).second) {
            return;
        }
        ++inserted;
        auto [it, fresh] = counts.try_emplace(std::llround(cc / q), cc, 0.0);
        it->second.second += 1.0;
        stack.emplace_back(cc, dm);
    };

    for (const Mat2* g : movers) {
        if (std::abs(g->c) > 0.5 * q) {
            visit(g->c, g->d);
        }
    }
    while (!stack.empty()) {
        if (inserted > options.max_states) {
            exhausted = false;
            break;
        }
        const auto [c, dm] = stack.back();
        stack.pop_back();
        const double period = width * c;
        for (double dp = dm; dp <= m + 0.5 * q; dp += period) {
            if (std::abs(dp) < 0.5 * q) {
                continue;
            }
            for (const Mat2* g : movers) {
                visit(c * g->a + dp * g->c, c * g->b + dp * g->d);
            }
        }
        for (double dp = dm - period; dp >= -m - 0.5 * q; dp -= period) {
            if (std::abs(dp) < 0.5 * q) {
                continue;
            }
            for (const Mat2* g : movers) {
                visit(c * g->a + dp * g->c, c * g->b + dp * g->d);
            }
        }
    }

    ScatteringResult out;
    out.c_max = m;
    out.frontier_exhausted = exhausted;
    out.states = inserted;
    std::complex<long double> acc(0.0L, 0.0L);
    const std::complex<double> expo = -2.0 * s;
    for (const auto& [key, entry] : counts) {
        out.c_values.push_back(entry.first);
        out.multiplicities.push_back(entry.second);
        const std::complex<double> term = entry.second * std::exp(expo * std::log(entry.first));
        acc += std::complex<long double>(term.real(), term.imag());
    }
    out.dirichlet_sum = std::complex<double>(static_cast<double>(acc.real()),
                                             static_cast<double>(acc.imag()));
    out.value = prefactor(s) * out.dirichlet_sum;
    return out;
}

}  // namespace

ScatteringResult scattering_series(const LatticeSpec& lattice, std::complex<double> s,
                                   const ScatteringOptions& options) {
    if (!(s.real() > 1.0)) {
        throw std::domain_error("scattering_series: series diverges for Re s <= 1");
    }
    const bool unit_width =
        !lattice.cusps.empty() && std::abs(lattice.cusps.front().width - 1.0) < 1e-12;
    if (integer_entries(lattice) && unit_width) {
        return integer_search(s, options);
    }
    return real_search(lattice, s, options);
}

std::vector<std::uint64_t> euler_phi_table(std::uint64_t n) {
    std::vector<std::uint64_t> phi(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i) {
        phi[i] = i;
    }
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (phi[p] == p) {
            for (std::uint64_t k = p; k <= n; k += p) {
                phi[k] -= phi[k] / p;
            }
        }
    }
    return phi;
}

}  // namespace orbitcount
