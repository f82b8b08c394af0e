// gaussian_ansatz.hpp — variational minimization over the Gaussian family
//   alpha(r) = sqrt(A) exp(-r^2/(4 a^2)),  beta(r) = sqrt(B) exp(-r^2/(4 b^2))
// with normalization N = (2 pi)^(3/2) (A a^3 + B b^3) eliminated analytically.
#pragma once

#include <optional>

#include "catspec/params.hpp"
#include "catspec/radial.hpp"

namespace catspec {

struct GaussianPair {
    double amp_a = 0.0;   // A
    double width_a = 0.0; // a
    double amp_b = 0.0;   // B
    double width_b = 0.0; // b

    double atoms_a() const;  // (2 pi)^(3/2) A a^3
    double atoms_b() const;
};

// Pair with n_a atoms of width a and n_b atoms of width b.
GaussianPair gaussian_pair_from_atoms(double n_a, double a, double n_b, double b);

// Energy functional evaluated in closed form on the Gaussian family (the
// Gaussian integrals of the same functional computed by energy_breakdown).
double gaussian_energy(const GaussianPair& g, const ModelParams& params, double lambda);

// Chemical potential by projection of the stationarity equations.
double gaussian_mu(const GaussianPair& g, const ModelParams& params, double lambda);

RadialProfile sample_gaussian(const GaussianPair& g, const RadialGrid& grid);

struct GaussianMinimum {
    GaussianPair pair;
    double energy = 0.0;
    std::optional<GaussianPair> degenerate_partner;  // A<->B mirror when asymmetric
    int evaluations = 0;
};

// Deterministic simplex descent from one symmetric and one asymmetric seed
// (restarts >= 2; extra restarts add perturbed asymmetric seeds). If the
// asymmetric minimum undercuts the symmetric one by more than 1e-9 the mirror
// partner is reported as degenerate_partner. Throws SolverError with the
// best-so-far on optimizer stall.
GaussianMinimum minimize_gaussian(const ModelParams& params, double lambda, int restarts = 2);

}  // namespace catspec
