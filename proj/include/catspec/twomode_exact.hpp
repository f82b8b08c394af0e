// twomode_exact.hpp — Fock-basis construction and diagonalization of the
// two-mode Hamiltonian, number distributions and gap-ratio sweeps.
#pragma once

#include <string>
#include <vector>

#include "catspec/params.hpp"
#include "catspec/types.hpp"

namespace catspec {

// Matrix of the two-mode Hamiltonian in the basis |m>_A |N-m>_B:
//   d_m = (U0/2)[m(m-1) + (N-m)(N-m-1)] + U1 m(N-m)
//   e_m = -lambda sqrt((m+1)(N-m))
// The bare trap term is dropped (total atom number is conserved). The
// couplings honor the params' tilde_rescale flag.
TridiagonalHamiltonian build_hamiltonian(const ModelParams& params);

// k_lowest smallest eigenvalues (ascending), optionally with orthonormal
// eigenvectors. Eigenvectors carry a deterministic sign convention (first
// coefficient above noise level is positive); quasi-degenerate pairs are
// rotated into exchange-parity eigenstates, so q_m = +/- q_{N-m} holds for
// every returned vector. Residuals are validated to 1e-9 (1 + |E|).
Spectrum diagonalize(const TridiagonalHamiltonian& h, int k_lowest, bool want_vectors);

// p_m = (q_m^0)^2 from the ground eigenvector.
NumberDistribution ground_distribution(const Spectrum& spec);

struct SweepRow {
    double Lambda = 0.0;
    double e0 = 0.0;
    double gap01 = 0.0;
    double gap12 = 0.0;
    double ratio = 0.0;   // gap01 / gap12
    double gap03 = 0.0;
    bool ok = false;
    std::string error;
};

// One independent diagonalization per Lambda (two-mode convention); rows come
// back in input order, failures marked per-row instead of aborting the sweep.
std::vector<SweepRow> gap_ratio_sweep(const ModelParams& params,
                                      const std::vector<double>& Lambda_grid, int threads = 0);

}  // namespace catspec
