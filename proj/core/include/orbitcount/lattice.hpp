#pragma once

#include <string>
#include <vector>

#include "orbitcount/geometry.hpp"

namespace orbitcount {

// Cusp data for a lattice with exactly one cusp class at the e1 direction.
// width is the translation length of the unipotent stabilizer; witness_word
// spells the stabilizing generator word so tests can recompute the width
// from the generators alone.
struct CuspData {
    PlaneVector direction{1.0, 0.0};
    double width = 1.0;
    std::string witness_word;
};

struct LatticeSpec {
    std::string id;            // registry key, e.g. "sl2z" or "hecke:5"
    std::string display_name;
    std::vector<Mat2> generators;        // closed under inverses
    std::vector<std::string> generator_labels;
    bool contains_minus_id = false;
    std::string minus_id_word;           // witness when contains_minus_id
    double covolume = 0.0;               // hyperbolic area of the quotient
    std::vector<CuspData> cusps;
};

// Modular group generated by S = [[0,-1],[1,0]] and T = [[1,1],[0,1]].
LatticeSpec preset_sl2z();

// Hecke triangle group H(q), q >= 3: S together with the translation by
// lambda = 2 cos(pi / q). q = 3 coincides with the modular group.
LatticeSpec preset_hecke(int q);

// Parse a registry id: "sl2z" or "hecke:<q>". Throws std::invalid_argument
// on unknown ids or out of range q.
LatticeSpec lattice_by_id(const std::string& id);

// Returns a copy whose generator list also spans -Id. When the group already
// contains -Id (witnessed by minus_id_word) this is a no-op apart from
// bookkeeping; the flag reports whether anything changed.
struct ExtendResult {
    LatticeSpec lattice;
    bool changed = false;
};
ExtendResult extend_with_minus_id(const LatticeSpec& spec);

// Hecke translation length 2 cos(pi / q).
double hecke_lambda(int q);

}  // namespace orbitcount
