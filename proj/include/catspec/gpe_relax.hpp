// gpe_relax.hpp — imaginary-time relaxation of the coupled GP equations on the
// radial grid (semi-implicit kinetic step, joint renormalization), the grid
// oracle for the stationarity equations.
#pragma once

#include "catspec/params.hpp"
#include "catspec/radial.hpp"

namespace catspec {

struct RelaxOptions {
    double tau = 0.05;        // imaginary-time step, adapted downward on energy increase
    int max_iterations = 200000;
    double tol = 1e-6;        // on the normalized residual below
    int check_interval = 25;
};

struct RelaxResult {
    RadialProfile profile;
    double energy = 0.0;
    double mu = 0.0;          // by projection of the stationarity equations
    // ||(L - mu) alpha - lambda beta|| over both components, L2(d3r) grid norm
    // normalized by sqrt(N) (1 + |mu|)
    double residual = 0.0;
    int iterations = 0;
};

// Relaxes `seed` (must be normalized to N) to a stationary point of the
// energy functional. Energy is nonincreasing along the descent; an energy
// increase triggers step halving and a persistent increase aborts with
// diagnostics. Non-convergence after max_iterations throws SolverError.
RelaxResult relax_gpe(const ModelParams& params, double lambda, const RadialProfile& seed,
                      const RelaxOptions& opts = {});

}  // namespace catspec
