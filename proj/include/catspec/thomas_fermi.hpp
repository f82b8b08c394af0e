// thomas_fermi.hpp — piecewise Thomas-Fermi solutions of the coupled
// stationarity conditions, with the chemical potential fixed by normalization.
#pragma once

#include <vector>

#include "catspec/params.hpp"
#include "catspec/radial.hpp"
#include "catspec/twomode_meanfield.hpp"  // BranchLabel

namespace catspec {

struct TFSolution {
    double mu = 0.0;
    BranchLabel branch = BranchLabel::Symmetric;
    double r1 = 0.0;   // edge of the asymmetric core (0 for the symmetric case)
    double r2 = 0.0;   // outer support radius
    RadialProfile profile;
};

// Support radius of the symmetric profile: [15 N (U0+U1) / (8 pi)]^(1/5).
double tf_radius_symmetric(const ModelParams& params);

// Mean-field transition coupling Lambda0 = [15N/(8 pi)]^(2/5) (U1+U0)^(-3/5)
// (field convention).
double tf_lambda0(const ModelParams& params);

// Closed-form normalization integral of a TF solution at chemical potential mu
// (used for the root solve and exposed for verification).
double tf_norm_integral(const ModelParams& params, double lambda, double mu);

// Symmetric case: one solution alpha = beta on r <= r0. Asymmetric case
// (U1 > U0 and Lambda < Lambda0): the two degenerate mirror branches with
//   alpha_pm^2 = beta_mp^2 = (rho_mu +- sqrt(rho_mu^2 - Lambda^2)) / 2   r <= r1
//   alpha^2 = beta^2 = (U0 rho_mu + lambda) / (U0 + U1)                  r1 < r <= r2
// where rho_mu = (mu - r^2/2)/U0, r1 = sqrt(2(mu - Lambda U0)),
// r2 = sqrt(2(mu + lambda)); the two pieces join continuously at r1 where
// both equal Lambda/2. mu is found by bracketed bisection on the closed-form
// normalization residual. Profiles are sampled on `grid` (default grid if
// null).
std::vector<TFSolution> solve_thomas_fermi(const ModelParams& params, double lambda,
                                           const RadialGrid* grid = nullptr);

}  // namespace catspec
