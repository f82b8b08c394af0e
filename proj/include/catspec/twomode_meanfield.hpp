// twomode_meanfield.hpp — closed-form mean-field branches, cat-state overlap
// and superposition energies for the two-mode model.
#pragma once

#include <vector>

#include "catspec/params.hpp"

namespace catspec {

enum class BranchLabel { Symmetric, Plus, Minus };

// Stationary point of the constrained mean energy, alpha^2 + beta^2 = N.
struct MeanFieldBranch {
    double alpha = 0.0;
    double beta = 0.0;
    double energy = 0.0;
    BranchLabel label = BranchLabel::Symmetric;
};

// All stationary branches, sorted by energy. |Lambda| >= 1 (or U0 >= U1):
// the single symmetric branch. U1 > U0 and |Lambda| < 1: the degenerate
// +/- pair followed by the symmetric branch. Throws LambdaZeroError for
// lambda == 0 where the amplitude phases are unconstrained.
std::vector<MeanFieldBranch> mean_field_branches(const ModelParams& params);

// Mean energy of amplitudes (alpha, beta) under the params' effective
// couplings: (U0/2)(a^4+b^4) + U1 a^2 b^2 - 2 lambda a b.
double mean_field_energy(const ModelParams& params, double alpha, double beta);

struct OverlapResult {
    double eps = 0.0;      // Lambda^N
    double log_eps = 0.0;  // exact in log space even when eps underflows
    bool underflow = false;
};

// Branch overlap eps = Lambda^N, evaluated in log space.
OverlapResult cat_overlap(const ModelParams& params);

struct CatDiagnostics {
    double overlap_eps = 0.0;
    double e_plus = 0.0;
    double e_minus = 0.0;
    double delta_e = 0.0;          // e_minus - e_plus
    double cat_size = 0.0;         // 1 / eps
    double delta_e_microscopic = 0.0;  // (N/2)(U1-U0), eps ~ 1 limit
    double delta_e_asymptotic = 0.0;   // eps |ln eps| N (U1-U0), eps << 1
    bool eps_underflow = false;
};

// Energies of the even/odd superpositions of the two degenerate mean-field
// branches and their splitting, plus both asymptotic splitting estimates.
// When eps < 1e-15 the splitting is evaluated from the expansion in eps
// rather than by direct subtraction.
CatDiagnostics cat_energies(const ModelParams& params);

}  // namespace catspec
