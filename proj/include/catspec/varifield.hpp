// varifield.hpp — approximate field model: one Gaussian orbital per occupation
// sector, pair-wise width optimization, and the resulting tridiagonal
// eigenproblem for the sector amplitudes q_m.
#pragma once

#include <string>
#include <vector>

#include "catspec/params.hpp"
#include "catspec/types.hpp"

namespace catspec {

// Unit-norm orbital c1 g_{a1} + c2 g_{a2}; single-Gaussian orbitals have
// c2 = 0. g_a(r) = (2 pi a^2)^(-3/4) exp(-r^2/(4 a^2)).
struct OrbitalShape {
    double c1 = 1.0;
    double a1 = 0.7071067811865476;
    double c2 = 0.0;
    double a2 = 0.7071067811865476;
};

double orbital_overlap(const OrbitalShape& s, const OrbitalShape& t);    // int s t
double orbital_sp_energy(const OrbitalShape& s);                        // int s L s
double orbital_quartic(const OrbitalShape& s, const OrbitalShape& t);   // int s^2 t^2

struct OrbitalFamily {
    int n_atoms = 0;
    std::vector<OrbitalShape> shapes;     // index m = 0..N
    std::vector<char> interpolated;       // 1 where the width was interpolated
    double width(int m) const { return shapes[m].a1; }
};

// Coupling coefficient in the orbital equations; the printed equations carry
// 2 lambda, the mean-field stationarity conditions carry lambda. Kept as a
// flag so both can be exercised.
enum class VariCoupling { Lambda, TwoLambda };

struct OrbitalOptions {
    int coarse_step = 0;                  // 0: ceil(N/200); 1: full resolution
    VariCoupling coupling = VariCoupling::TwoLambda;
    bool two_gaussian = false;            // richer per-orbital ansatz
};

// Minimizes the sector-pair energy over Gaussian widths for each m <= N/2
// (coarse grid with warm starts, linear interpolation in between), mirrored to
// m > N/2. Per-m optimizer failures are isolated: the width is interpolated
// from neighbors and flagged.
OrbitalFamily solve_orbitals(const ModelParams& params, double lambda,
                             const OrbitalOptions& opts = {});

// Energy of the sector pair (m, N-m) for given shapes (the objective of
// solve_orbitals).
double sector_pair_energy(const ModelParams& params, double lambda, VariCoupling coupling,
                          int m, const OrbitalShape& s, const OrbitalShape& t);

struct QHamiltonian {
    TridiagonalHamiltonian matrix;
    double max_asymmetry = 0.0;  // |L_{m+1} - K_m| scale before symmetrization
};

// Sector-diagonal energies E_m plus the -lambda L/K couplings, symmetrized by
// averaging the two index conventions.
QHamiltonian build_q_hamiltonian(const OrbitalFamily& family, const ModelParams& params,
                                 double lambda);

struct VariSweepRow {
    double Lambda = 0.0;        // field convention
    double Lambda_rel = 0.0;    // Lambda / Lambda0 (Thomas-Fermi transition scale)
    double e0 = 0.0;
    double gap01 = 0.0;
    double gap12 = 0.0;
    double ratio = 0.0;
    double gap03 = 0.0;
    double gap23 = 0.0;
    bool ok = false;
    std::string error;
};

// Per-Lambda orbital solve + q-diagonalization; rows in input order with
// per-row failure isolation.
std::vector<VariSweepRow> variational_sweep(const ModelParams& params,
                                            const std::vector<double>& Lambda_field_grid,
                                            const OrbitalOptions& opts = {}, int threads = 0);

}  // namespace catspec
