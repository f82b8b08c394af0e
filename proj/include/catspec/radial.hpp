// radial.hpp — uniform radial grid, profiles and the coupled energy functional
//
// Everything radial works on u(r) = r * f(r) with u(0) = 0; the Laplacian is
// the second-order central difference on u. Volume integrals are 4 pi times
// the r^2-weighted rectangle sum, which is spectrally accurate for smooth
// profiles vanishing at both ends.
#pragma once

#include <vector>

#include "catspec/params.hpp"

namespace catspec {

struct RadialGrid {
    double h = 0.0;   // spacing; nodes are r_i = (i+1) h, i = 0..n-1
    int n = 0;

    static RadialGrid make(double r_max, int points);
    double r(int i) const { return h * (i + 1); }
    double r_max() const { return h * n; }
};

// Sampled wavefunction pair (alpha, beta) on a radial grid; real amplitudes.
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> alpha;
    std::vector<double> beta;

    double norm() const;  // 4 pi int (alpha^2 + beta^2) r^2 dr
    void scale_to(double n_target);
    RadialProfile mirrored() const;  // alpha <-> beta
};

struct EnergyBreakdown {
    double kinetic = 0.0;
    double trap = 0.0;
    double self_int = 0.0;    // (U0/2) int (alpha^4 + beta^4)
    double cross_int = 0.0;   // U1 int alpha^2 beta^2
    double coupling = 0.0;    // -2 lambda int alpha beta
    double total() const { return kinetic + trap + self_int + cross_int + coupling; }
};

// Coupled-condensate energy functional with the params' effective couplings:
//   E = int d3r [ a(-lap/2 + r^2/2)a + b(-lap/2 + r^2/2)b
//                 + (U0/2)(a^4 + b^4) + U1 a^2 b^2 - 2 lambda a b ].
// Its stationarity conditions are the coupled GP equations.
EnergyBreakdown energy_breakdown(const RadialProfile& p, const ModelParams& params,
                                 double lambda);

// Total of the breakdown; throws if |norm - N|/N > 1e-4.
double energy_functional(const RadialProfile& p, const ModelParams& params, double lambda);

// Left-hand side of the stationarity equations applied to (alpha, beta):
//   ga = (-lap/2 + r^2/2 + U0 a^2 + U1 b^2) a - lambda b   (same with a<->b)
void gp_equations_lhs(const RadialProfile& p, const ModelParams& params, double lambda,
                      std::vector<double>& ga, std::vector<double>& gb);

// Default production grid: r_max = max(2 r_extent, 8), 2048 points.
RadialGrid default_grid(double r_extent);

}  // namespace catspec
