// cat_field.hpp — energies of the even/odd superpositions of two degenerate
// field-theoretical mean-field branches, from single-particle overlap
// integrals raised to the N-th power (log space).
#pragma once

#include "catspec/params.hpp"
#include "catspec/radial.hpp"

namespace catspec {

struct FieldCatEnergies {
    double e_plus = 0.0;    // even superposition
    double e_mid = 0.0;     // <psi+|H|psi+>
    double e_minus = 0.0;   // odd superposition
    double overlap_eps = 0.0;   // <psi+|psi->
    double log_overlap = 0.0;   // N ln z, finite even when eps underflows
    double cross = 0.0;         // <psi+|H|psi->
};

// `plus_branch` is one member of the degenerate pair; the other is its
// alpha<->beta mirror. Computes z = (1/N) int (a+ a- + b+ b-), the cross
// matrix element, and E_pm = (E_mid +- cross)/(1 +- z^N). Throws
// NotInCatRegimeError when the branches are not distinct (z ~ 1).
FieldCatEnergies cat_energy_ordering(const RadialProfile& plus_branch,
                                     const ModelParams& params, double lambda);

}  // namespace catspec
