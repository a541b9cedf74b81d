#include "orbitcount/lattice.hpp"

#include <cmath>

namespace orbitcount {

double hecke_lambda(int q) {
    if (q < 3) {
        throw std::invalid_argument("hecke_lambda: q must be at least 3");
    }
    return 2.0 * std::cos(M_PI / static_cast<double>(q));
}

namespace {

Mat2 inversion_generator() {
    return Mat2::from_exact(0, -1, 1, 0);
}

}  // namespace

LatticeSpec preset_sl2z() {
    LatticeSpec spec;
    spec.id = "sl2z";
    spec.display_name = "modular group";
    const Mat2 s = inversion_generator();
    const Mat2 t = Mat2::from_exact(1, 1, 0, 1);
    spec.generators = {s, s.inverse(), t, t.inverse()};
    spec.generator_labels = {"S", "S'", "T", "T'"};
    spec.contains_minus_id = true;
    spec.minus_id_word = "SS";
    spec.covolume = M_PI / 3.0;
    CuspData cusp;
    cusp.direction = PlaneVector{1.0, 0.0};
    cusp.width = 1.0;
    cusp.witness_word = "T";
    spec.cusps = {cusp};
    return spec;
}

LatticeSpec preset_hecke(int q) {
    if (q < 3) {
        throw std::invalid_argument("preset_hecke: q must be at least 3");
    }
    if (q == 3) {
        LatticeSpec spec = preset_sl2z();
        spec.id = "hecke:3";
        spec.display_name = "Hecke group H(3)";
        return spec;
    }
    LatticeSpec spec;
    spec.id = "hecke:" + std::to_string(q);
    spec.display_name = "Hecke group H(" + std::to_string(q) + ")";
    const double lambda = hecke_lambda(q);
    const Mat2 s = inversion_generator();
    const Mat2 t = Mat2::from_entries(1.0, lambda, 0.0, 1.0);
    spec.generators = {s, s.inverse(), t, t.inverse()};
    spec.generator_labels = {"S", "S'", "T", "T'"};
    spec.contains_minus_id = true;
    spec.minus_id_word = "SS";
    // Triangle group with angles pi/2, pi/q, 0 has area pi (1 - 2/q) by
    // Gauss-Bonnet, giving the quotient covolume directly.
    spec.covolume = M_PI * (1.0 - 2.0 / static_cast<double>(q));
    CuspData cusp;
    cusp.direction = PlaneVector{1.0, 0.0};
    cusp.width = lambda;
    cusp.witness_word = "T";
    spec.cusps = {cusp};
    return spec;
}

LatticeSpec lattice_by_id(const std::string& id) {
    if (id == "sl2z") {
        return preset_sl2z();
    }
    const std::string prefix = "hecke:";
    if (id.rfind(prefix, 0) == 0) {
        const std::string tail = id.substr(prefix.size());
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("lattice_by_id: malformed hecke id '" + id + "'");
        }
        long q = std::stol(tail);
        if (q < 3 || q > 1000) {
            throw std::invalid_argument("lattice_by_id: hecke index out of range in '" + id + "'");
        }
        return preset_hecke(static_cast<int>(q));
    }
    throw std::invalid_argument("lattice_by_id: unknown lattice id '" + id + "'");
}

ExtendResult extend_with_minus_id(const LatticeSpec& spec) {
    ExtendResult out;
    out.lattice = spec;
    if (spec.contains_minus_id) {
        out.changed = false;
        return out;
    }
    Mat2 minus = -Mat2::identity();
    out.lattice.generators.push_back(minus);
    out.lattice.generator_labels.push_back("-I");
    out.lattice.contains_minus_id = true;
    out.lattice.minus_id_word = "-I";
    out.changed = true;
    return out;
}

}  // namespace orbitcount
