#include <doctest.h>

#include <cmath>
#include <random>

#include "catspec/errors.hpp"
#include "catspec/tridiag_eigen.hpp"
#include "catspec/twomode_exact.hpp"
#include "dense_oracle.hpp"

using namespace catspec;

namespace {

TridiagonalHamiltonian random_tridiag(std::mt19937& rng, int n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    TridiagonalHamiltonian h;
    h.diag.resize(n);
    h.offdiag.resize(n - 1);
    for (auto& d : h.diag) d = u(rng);
    for (auto& e : h.offdiag) e = u(rng);
    return h;
}

}  // namespace

TEST_CASE("sturm count brackets the dense spectrum") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 10;
        const auto h = random_tridiag(rng, n, 2.0);
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) M(i, i) = h.diag[i];
        for (int i = 0; i + 1 < n; ++i) M(i, i + 1) = M(i + 1, i) = h.offdiag[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
        for (double x : {-3.0, -1.0, 0.0, 0.5, 2.5}) {
            int expected = 0;
            for (int i = 0; i < n; ++i)
                if (es.eigenvalues()[i] < x) ++expected;
            CHECK(sturm_count(h, x) == expected);
        }
    }
}

TEST_CASE("bisection matches Eigen on random tridiagonal matrices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 12;
        const auto h = random_tridiag(rng, n, 3.0);
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) M(i, i) = h.diag[i];
        for (int i = 0; i + 1 < n; ++i) M(i, i + 1) = M(i + 1, i) = h.offdiag[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
        for (int k = 0; k < n; ++k)
            CHECK(eigenvalue_by_index(h, k) == doctest::Approx(es.eigenvalues()[k]).epsilon(1e-12));
    }
}

TEST_CASE("QL cross-validates bisection up to n = 2000") {
    ModelParams p;
    p.n_atoms = 1999;
    p.u0 = 1.0 / p.n_atoms;
    p.u1 = 3.0 * p.u0;
    p.lambda = 1.3;
    const auto h = build_hamiltonian(p);
    const auto ql = eigenvalues_ql(h);
    double lo, hi;
    gershgorin_bounds(h, lo, hi);
    const double tol = 1e-9 * (hi - lo);
    for (int k : {0, 1, 2, 3, 500, 1999}) {
        CHECK(std::abs(eigenvalue_by_index(h, k) - ql[k]) <= tol);
    }
}

TEST_CASE("inverse iteration residuals and orthogonality, including clusters") {
    ModelParams p;
    p.n_atoms = 400;
    p.u0 = 1.0 / p.n_atoms;
    p.u1 = 3.0 * p.u0;
    // Lambda = 0.8: the two lowest pairs are quasi-degenerate far below
    // machine resolution
    p.lambda = lambda_from_Lambda(p, 0.8, LambdaConvention::TwoMode);
    const auto h = build_hamiltonian(p);
    const auto spec = diagonalize(h, 4, true);
    REQUIRE(spec.eigenvectors.size() == 4);
    for (int a = 0; a < 4; ++a) {
        double nrm = 0.0;
        for (double x : spec.eigenvectors[a]) nrm += x * x;
        CHECK(std::abs(std::sqrt(nrm) - 1.0) < 1e-10);
        for (int b = a + 1; b < 4; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < spec.eigenvectors[a].size(); ++i)
                dot += spec.eigenvectors[a][i] * spec.eigenvectors[b][i];
            CHECK(std::abs(dot) < 1e-8);
        }
    }
}

TEST_CASE("deterministic sign convention and bit-identical repeat runs") {
    ModelParams p;
    p.n_atoms = 60;
    p.u0 = 0.01;
    p.u1 = 0.05;
    p.lambda = 0.7;
    const auto h = build_hamiltonian(p);
    const auto s1 = diagonalize(h, 3, true);
    const auto s2 = diagonalize(h, 3, true);
    for (int k = 0; k < 3; ++k) {
        CHECK(s1.eigenvalues[k] == s2.eigenvalues[k]);
        for (std::size_t i = 0; i < s1.eigenvectors[k].size(); ++i)
            CHECK(s1.eigenvectors[k][i] == s2.eigenvectors[k][i]);
        // first coefficient above noise is positive
        double amax = 0.0;
        for (double x : s1.eigenvectors[k]) amax = std::max(amax, std::abs(x));
        for (double x : s1.eigenvectors[k]) {
            if (std::abs(x) > 1e-12 * amax) {
                CHECK(x > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("zero matrix: all eigenvalues zero, orthonormal vectors") {
    ModelParams p;
    p.n_atoms = 6;
    const auto h = build_hamiltonian(p);  // U = lambda = 0
    const auto spec = diagonalize(h, 7, true);
    for (double e : spec.eigenvalues) CHECK(e == doctest::Approx(0.0).epsilon(1e-300));
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b) {
            double dot = 0.0;
            for (int i = 0; i < 7; ++i) dot += spec.eigenvectors[a][i] * spec.eigenvectors[b][i];
            CHECK(std::abs(dot) < 1e-10);
        }
}
