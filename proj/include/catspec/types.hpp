// types.hpp — shared domain value types
#pragma once

#include <cstddef>
#include <vector>

namespace catspec {

// Real symmetric tridiagonal matrix; only the single off-diagonal is stored.
struct TridiagonalHamiltonian {
    std::vector<double> diag;     // d_m, m = 0..N
    std::vector<double> offdiag;  // e_m coupling m <-> m+1, m = 0..N-1

    int dim() const { return static_cast<int>(diag.size()); }
};

// Sorted low end of a spectrum, with optional orthonormal eigenvectors.
struct Spectrum {
    std::vector<double> eigenvalues;                 // ascending
    std::vector<std::vector<double>> eigenvectors;   // empty unless requested
    int k_computed = 0;

    bool has_vectors() const { return !eigenvectors.empty(); }
};

// A-atom number histogram p_m, m = 0..N; nonnegative, sums to 1.
struct NumberDistribution {
    std::vector<double> probs;

    int n_atoms() const { return static_cast<int>(probs.size()) - 1; }
};

}  // namespace catspec
