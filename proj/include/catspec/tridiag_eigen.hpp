// tridiag_eigen.hpp — symmetric tridiagonal eigensolvers
//
// Eigenvalues by Sturm-sequence bisection (each index bisected to the
// representable limit, so quasi-degenerate pairs below resolution come out
// bit-identical), eigenvectors by inverse iteration with reorthogonalization
// inside near-degenerate clusters. A full-spectrum QL routine is kept for
// cross-validation at moderate sizes.
#pragma once

#include <vector>

#include "catspec/types.hpp"

namespace catspec {

// Number of eigenvalues strictly below x.
int sturm_count(const TridiagonalHamiltonian& h, double x);

// k-th smallest eigenvalue, k = 0..dim-1.
double eigenvalue_by_index(const TridiagonalHamiltonian& h, int k);

// Eigenvalues of index k0..k1 inclusive, ascending.
std::vector<double> eigenvalues_by_index_range(const TridiagonalHamiltonian& h, int k0, int k1);

// Full spectrum via implicit-shift QL; O(n^2), intended for n <= ~2000.
std::vector<double> eigenvalues_ql(const TridiagonalHamiltonian& h);

// Inverse-iteration eigenvectors for precomputed eigenvalues (ascending).
// Vectors in a cluster (gap < cluster_tol) are orthogonalized against each
// other. Throws SolverError with the iteration count on non-convergence.
std::vector<std::vector<double>> inverse_iteration_vectors(const TridiagonalHamiltonian& h,
                                                           const std::vector<double>& eigenvalues,
                                                           double cluster_tol);

// Gershgorin interval [lo, hi] containing the whole spectrum.
void gershgorin_bounds(const TridiagonalHamiltonian& h, double& lo, double& hi);

}  // namespace catspec
