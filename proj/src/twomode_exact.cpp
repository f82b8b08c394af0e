#include "catspec/twomode_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "catspec/errors.hpp"
#include "catspec/parallel.hpp"
#include "catspec/tridiag_eigen.hpp"

namespace catspec {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// q_m -> q_{N-m}
std::vector<double> reflected(const std::vector<double>& v) {
    std::vector<double> w(v.rbegin(), v.rend());
    return w;
}

void fix_sign(std::vector<double>& v) {
    double amax = 0.0;
    for (double x : v) amax = std::max(amax, std::abs(x));
    for (double x : v) {
        if (std::abs(x) > 1e-12 * amax) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

// Rotates a quasi-degenerate pair into exchange-parity eigenstates. Valid
// because the matrix is exactly persymmetric, so the reflection operator
// commutes with it and acts within the degenerate subspace.
void parity_purify_pair(std::vector<double>& a, std::vector<double>& b) {
    const int n = static_cast<int>(a.size());
    const auto pa = reflected(a);
    const auto pb = reflected(b);
    double maa = 0.0, mab = 0.0, mbb = 0.0;
    for (int i = 0; i < n; ++i) {
        maa += a[i] * pa[i];
        mab += a[i] * pb[i];
        mbb += b[i] * pb[i];
    }
    // 2x2 symmetric eigenproblem for M = V^T P V
    const double theta = 0.5 * std::atan2(2.0 * mab, maa - mbb);
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<double> u(n), w(n);
    for (int i = 0; i < n; ++i) {
        u[i] = c * a[i] + s * b[i];
        w[i] = -s * a[i] + c * b[i];
    }
    const double nu = norm2(u), nw = norm2(w);
    if (nu == 0.0 || nw == 0.0) return;
    for (int i = 0; i < n; ++i) {
        u[i] /= nu;
        w[i] /= nw;
    }
    a = u;
    b = w;
}

double parity_mixing(const std::vector<double>& v) {
    // min of the even/odd component norms, 0 for a parity eigenstate
    double even = 0.0, odd = 0.0;
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        const double r = v[n - 1 - i];
        even += 0.25 * (v[i] + r) * (v[i] + r);
        odd += 0.25 * (v[i] - r) * (v[i] - r);
    }
    return std::sqrt(std::min(even, odd));
}

}  // namespace

TridiagonalHamiltonian build_hamiltonian(const ModelParams& params) {
    params.validate();
    const int n = params.n_atoms;
    const double u0 = params.u0_eff();
    const double u1 = params.u1_eff();
    TridiagonalHamiltonian h;
    h.diag.resize(n + 1);
    h.offdiag.resize(n);
    for (int m = 0; m <= n; ++m) {
        const double ma = m, mb = n - m;
        h.diag[m] = 0.5 * u0 * (ma * (ma - 1.0) + mb * (mb - 1.0)) + u1 * ma * mb;
        if (!std::isfinite(h.diag[m]))
            throw SolverError("build_hamiltonian: diagonal overflow at m=" + std::to_string(m));
    }
    for (int m = 0; m < n; ++m) {
        h.offdiag[m] = -params.lambda * std::sqrt(double(m + 1) * double(n - m));
        if (!std::isfinite(h.offdiag[m]))
            throw SolverError("build_hamiltonian: off-diagonal overflow at m=" + std::to_string(m));
    }
    return h;
}

Spectrum diagonalize(const TridiagonalHamiltonian& h, int k_lowest, bool want_vectors) {
    const int n = h.dim();
    if (k_lowest < 1 || k_lowest > n)
        throw std::invalid_argument("diagonalize: k_lowest out of range");

    Spectrum spec;
    spec.eigenvalues = eigenvalues_by_index_range(h, 0, k_lowest - 1);
    spec.k_computed = k_lowest;
    if (!want_vectors) return spec;

    const double top = (k_lowest == n) ? spec.eigenvalues.back() : eigenvalue_by_index(h, n - 1);
    const double span = std::max(top - spec.eigenvalues.front(), 1e-300);
    const double cluster_tol = 1e-12 * span;

    // extend past k_lowest so a cluster straddling the cut is completed
    std::vector<double> evals = spec.eigenvalues;
    int k_ext = k_lowest;
    while (k_ext < n && k_ext < k_lowest + 4) {
        const double next = eigenvalue_by_index(h, k_ext);
        if (next - evals.back() > cluster_tol) break;
        evals.push_back(next);
        ++k_ext;
    }

    auto vecs = inverse_iteration_vectors(h, evals, cluster_tol);

    // rotate parity-mixed quasi-degenerate pairs into exchange eigenstates
    for (std::size_t j = 0; j + 1 < vecs.size();) {
        if (evals[j + 1] - evals[j] <= cluster_tol) {
            if (parity_mixing(vecs[j]) > 1e-10 || parity_mixing(vecs[j + 1]) > 1e-10)
                parity_purify_pair(vecs[j], vecs[j + 1]);
            j += 2;
        } else {
            ++j;
        }
    }
    // even member of a purified pair comes first (ground state is even)
    for (std::size_t j = 0; j + 1 < vecs.size(); ++j) {
        if (evals[j + 1] - evals[j] <= cluster_tol) {
            double even_j = 0.0, even_j1 = 0.0;
            const int nn = static_cast<int>(vecs[j].size());
            for (int i = 0; i < nn; ++i) {
                even_j += vecs[j][i] * vecs[j][nn - 1 - i];
                even_j1 += vecs[j + 1][i] * vecs[j + 1][nn - 1 - i];
            }
            if (even_j1 > even_j + 1e-12) std::swap(vecs[j], vecs[j + 1]);
        }
    }

    vecs.resize(k_lowest);
    for (auto& v : vecs) fix_sign(v);

    // residual validation on every returned pair
    for (int j = 0; j < k_lowest; ++j) {
        const auto& v = vecs[j];
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = h.diag[i] * v[i];
            if (i > 0) s += h.offdiag[i - 1] * v[i - 1];
            if (i + 1 < n) s += h.offdiag[i] * v[i + 1];
            const double r = s - spec.eigenvalues[j] * v[i];
            res += r * r;
        }
        res = std::sqrt(res);
        if (res > 1e-9 * (1.0 + std::abs(spec.eigenvalues[j]))) {
            std::ostringstream os;
            os << "diagonalize: residual " << res << " too large for eigenpair " << j;
            throw SolverError(os.str());
        }
    }
    spec.eigenvectors = std::move(vecs);
    return spec;
}

NumberDistribution ground_distribution(const Spectrum& spec) {
    if (!spec.has_vectors())
        throw MissingEigenvectorError("ground_distribution: spectrum has no eigenvectors");
    const auto& q = spec.eigenvectors.front();
    NumberDistribution dist;
    dist.probs.resize(q.size());
    double sum = 0.0;
    for (std::size_t m = 0; m < q.size(); ++m) {
        dist.probs[m] = q[m] * q[m];
        sum += dist.probs[m];
    }
    for (auto& p : dist.probs) p /= sum;
    return dist;
}

std::vector<SweepRow> gap_ratio_sweep(const ModelParams& params,
                                      const std::vector<double>& Lambda_grid, int threads) {
    const int n = static_cast<int>(Lambda_grid.size());
    std::vector<SweepRow> rows(n);
    parallel_for_indexed(n, threads, [&](int i) {
        SweepRow& row = rows[i];
        row.Lambda = Lambda_grid[i];
        try {
            const ModelParams p =
                params.with_lambda(lambda_from_Lambda(params, Lambda_grid[i], LambdaConvention::TwoMode));
            const auto h = build_hamiltonian(p);
            const int k = std::min(4, h.dim());
            const auto spec = diagonalize(h, k, false);
            row.e0 = spec.eigenvalues[0];
            row.gap01 = k > 1 ? spec.eigenvalues[1] - spec.eigenvalues[0] : 0.0;
            row.gap12 = k > 2 ? spec.eigenvalues[2] - spec.eigenvalues[1] : 0.0;
            row.ratio = row.gap01 / row.gap12;
            row.gap03 = k > 3 ? spec.eigenvalues[3] - spec.eigenvalues[0] : 0.0;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.e0 = row.gap01 = row.gap12 = row.ratio = row.gap03 =
                std::numeric_limits<double>::quiet_NaN();
        }
    });
    return rows;
}

}  // namespace catspec
