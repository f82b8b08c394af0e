#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "catspec/errors.hpp"
#include "catspec/twomode_exact.hpp"
#include "catspec/twomode_meanfield.hpp"

using namespace catspec;

namespace {

// <u|H|v> for tridiagonal H
double expect(const TridiagonalHamiltonian& h, const std::vector<double>& u,
              const std::vector<double>& v) {
    const int n = h.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double hv = h.diag[i] * v[i];
        if (i > 0) hv += h.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) hv += h.offdiag[i] * v[i + 1];
        s += u[i] * hv;
    }
    return s;
}

// Fock coefficients of the normalized binomial state built from a mean-field
// branch: q_m = sqrt(C(N,m)) a1^m b1^(N-m), a1 = alpha/sqrt(N)
std::vector<double> binomial_state(int n, double alpha, double beta) {
    const double a1 = alpha / std::sqrt(double(n)), b1 = beta / std::sqrt(double(n));
    std::vector<double> q(n + 1);
    for (int m = 0; m <= n; ++m) {
        double logc = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
        q[m] = std::exp(0.5 * logc + m * std::log(a1) + (n - m) * std::log(b1));
    }
    return q;
}

// 1D constrained minimization of the mean energy over alpha = sqrt(N) cos t
double minimize_on_circle(const ModelParams& p) {
    double best = 1e300;
    const int steps = 20000;
    for (int i = 1; i < steps; ++i) {
        const double t = 0.5 * M_PI * i / steps;
        const double a = std::sqrt(double(p.n_atoms)) * std::cos(t);
        const double b = std::sqrt(double(p.n_atoms)) * std::sin(t);
        best = std::min(best, mean_field_energy(p, a, b));
    }
    return best;
}

}  // namespace

TEST_CASE("branches: single symmetric branch for Lambda > 1") {
    ModelParams p;
    p.n_atoms = 1000;
    p.u0 = 0.001;
    p.u1 = 0.003;
    p.lambda = 2.0;  // Lambda = 2
    const auto branches = mean_field_branches(p);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].label == BranchLabel::Symmetric);
    CHECK(branches[0].energy == doctest::Approx(-1000.0).epsilon(1e-12));
    CHECK(branches[0].alpha == doctest::Approx(std::sqrt(500.0)).epsilon(1e-14));
    // constrained-minimization oracle agrees
    CHECK(minimize_on_circle(p) == doctest::Approx(-1000.0).epsilon(1e-7));
}

TEST_CASE("branches: degenerate pair below the transition") {
    ModelParams p;
    p.n_atoms = 1000;
    p.u0 = 0.001;
    p.u1 = 0.003;
    p.lambda = 0.5;  // Lambda = 0.5
    const auto branches = mean_field_branches(p);
    REQUIRE(branches.size() == 3);
    CHECK(branches[0].label == BranchLabel::Plus);
    CHECK(branches[1].label == BranchLabel::Minus);
    CHECK(branches[2].label == BranchLabel::Symmetric);
    CHECK(branches[0].energy == doctest::Approx(375.0).epsilon(1e-12));
    CHECK(branches[1].energy == doctest::Approx(375.0).epsilon(1e-12));
    CHECK(branches[2].energy == doctest::Approx(500.0).epsilon(1e-12));
    const double a2 = branches[0].alpha * branches[0].alpha;
    const double b2 = branches[0].beta * branches[0].beta;
    CHECK(a2 == doctest::Approx(933.0127018922193).epsilon(1e-10));
    CHECK(b2 == doctest::Approx(66.98729810778068).epsilon(1e-10));
    // plus and minus are exact mirrors
    CHECK(branches[0].alpha == branches[1].beta);
    CHECK(branches[0].beta == branches[1].alpha);
    // minimum over the constraint circle is the pair energy
    CHECK(minimize_on_circle(p) == doctest::Approx(375.0).epsilon(1e-7));
}

TEST_CASE("branches: normalization and stationarity residuals") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        ModelParams p;
        p.n_atoms = 10 + 37 * (trial % 7);
        p.u0 = u(rng);
        p.u1 = u(rng);
        p.lambda = u(rng) * p.n_atoms * 0.1;
        p.tilde_rescale = trial % 2 == 0;
        const auto branches = mean_field_branches(p);
        for (const auto& br : branches) {
            CHECK(std::abs(br.alpha * br.alpha + br.beta * br.beta - p.n_atoms) <
                  1e-10 * p.n_atoms);
            // both Lagrange equations give the same mu
            const double mu1 =
                ((p.u0_eff() * br.alpha * br.alpha + p.u1_eff() * br.beta * br.beta) * br.alpha -
                 p.lambda * br.beta) /
                br.alpha;
            const double mu2 =
                ((p.u0_eff() * br.beta * br.beta + p.u1_eff() * br.alpha * br.alpha) * br.beta -
                 p.lambda * br.alpha) /
                br.beta;
            CHECK(std::abs(mu1 - mu2) < 1e-9 * (1.0 + std::abs(mu1)));
        }
    }
}

TEST_CASE("branches: energy ordering of the case analysis") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double u0 = u(rng), u1 = u(rng);
        if (u0 == u1) continue;
        ModelParams p;
        p.n_atoms = 50;
        p.u0 = u0;
        p.u1 = u1;
        p.lambda = 0.2 * u(rng) * p.n_atoms * std::abs(u1 - u0);
        const double e0 = 0.25 * p.n_atoms * p.n_atoms * (u0 + u1) - p.lambda * p.n_atoms;
        const double epm = 0.5 * u0 * p.n_atoms * p.n_atoms - p.lambda * p.lambda / (u1 - u0);
        if (u0 > u1) {
            CHECK(epm > e0);
        } else if (std::abs(p.Lambda(LambdaConvention::TwoMode)) < 1.0) {
            CHECK(epm < e0);
            const auto branches = mean_field_branches(p);
            CHECK(branches.front().energy == doctest::Approx(epm).epsilon(1e-12));
        }
    }
}

TEST_CASE("branches: Lambda = 1 collapse and lambda = 0 error") {
    ModelParams p;
    p.n_atoms = 1000;
    p.u0 = 0.001;
    p.u1 = 0.003;
    p.lambda = 1.0;  // exactly Lambda = 1
    const auto branches = mean_field_branches(p);
    CHECK(branches.size() == 1);
    // E0 equals the E_pm expression evaluated at Lambda = 1
    const double epm = 0.5 * p.u0 * 1e6 - p.lambda * p.lambda / (p.u1 - p.u0);
    CHECK(branches[0].energy == doctest::Approx(epm).epsilon(1e-12));

    p.lambda = 0.0;
    CHECK_THROWS_AS(mean_field_branches(p), LambdaZeroError);
}

TEST_CASE("cat_overlap: frozen values, limits, underflow flag") {
    ModelParams p;
    p.n_atoms = 100;
    p.u0 = 0.001;
    p.u1 = 0.003;
    p.lambda = lambda_from_Lambda(p, 0.9, LambdaConvention::TwoMode);
    CHECK(cat_overlap(p).eps == doctest::Approx(2.6561398887587544e-5).epsilon(1e-12));

    p.n_atoms = 10;
    p.lambda = lambda_from_Lambda(p, 0.5, LambdaConvention::TwoMode);
    CHECK(cat_overlap(p).eps == doctest::Approx(9.765625e-4).epsilon(1e-14));

    p.n_atoms = 50;
    p.lambda = lambda_from_Lambda(p, 1.0 - 1e-12, LambdaConvention::TwoMode);
    CHECK(cat_overlap(p).eps == doctest::Approx(1.0).epsilon(1e-9));

    p.n_atoms = 2000;
    p.lambda = lambda_from_Lambda(p, 0.5, LambdaConvention::TwoMode);
    const auto r = cat_overlap(p);
    CHECK(r.underflow);
    CHECK(r.eps == 0.0);
    CHECK(r.log_eps == doctest::Approx(2000.0 * std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("cat_overlap equals the explicit branch inner product (log space)") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uL(0.05, 0.99);
    std::uniform_int_distribution<int> uN(2, 300);
    for (int trial = 0; trial < 20; ++trial) {
        ModelParams p;
        p.n_atoms = uN(rng);
        p.u0 = 0.002;
        p.u1 = 0.007;
        const double Lambda = uL(rng);
        p.lambda = lambda_from_Lambda(p, Lambda, LambdaConvention::TwoMode);
        const auto branches = mean_field_branches(p);
        REQUIRE(branches.size() == 3);
        const auto& plus = branches[0];
        const auto& minus = branches[1];
        const double z =
            (plus.alpha * minus.alpha + plus.beta * minus.beta) / p.n_atoms;
        const double log_inner = p.n_atoms * std::log(z);
        const auto ov = cat_overlap(p);
        CHECK(std::abs(std::exp(log_inner - ov.log_eps) - 1.0) < 1e-10);
    }
}

TEST_CASE("cat_energies matches the N=10 operator-algebra oracle") {
    // params carry bare couplings; tilde_rescale on makes the closed forms the
    // exact expectations in the bare-coupling Hamiltonian
    ModelParams p;
    p.n_atoms = 10;
    p.u0 = 0.0;
    p.u1 = 1.0;
    p.tilde_rescale = true;
    p.lambda = lambda_from_Lambda(p, 0.5, LambdaConvention::TwoMode);  // 2.25

    ModelParams bare = p;
    bare.tilde_rescale = false;
    const auto h = build_hamiltonian(bare);

    const auto branches = mean_field_branches(p);
    REQUIRE(branches.size() == 3);
    const auto qp = binomial_state(p.n_atoms, branches[0].alpha, branches[0].beta);
    const auto qm = binomial_state(p.n_atoms, branches[1].alpha, branches[1].beta);

    double eps_oracle = 0.0, npp = 0.0, nmm = 0.0;
    for (int m = 0; m <= p.n_atoms; ++m) {
        eps_oracle += qp[m] * qm[m];
        npp += qp[m] * qp[m];
        nmm += qm[m] * qm[m];
    }
    CHECK(std::abs(npp - 1.0) < 1e-12);
    CHECK(std::abs(nmm - 1.0) < 1e-12);

    const double hpp = expect(h, qp, qp);
    const double hpm = expect(h, qp, qm);
    const double ep_oracle = (hpp + hpm) / (1.0 + eps_oracle);
    const double em_oracle = (hpp - hpm) / (1.0 - eps_oracle);

    const auto cd = cat_energies(p);
    CHECK(std::abs(cd.overlap_eps - eps_oracle) < 1e-12);
    CHECK(std::abs(cd.e_plus - ep_oracle) < 1e-9 * (1.0 + std::abs(ep_oracle)));
    CHECK(std::abs(cd.e_minus - em_oracle) < 1e-9 * (1.0 + std::abs(em_oracle)));
    CHECK(cd.delta_e == doctest::Approx(em_oracle - ep_oracle).epsilon(1e-9));
}

TEST_CASE("cat_energies: frozen evaluation of the closed form") {
    // effective couplings (0, 1) at Lambda = 0.5, N = 10; exact rationals give
    // E+ = -25*257/1025, E- = -25*255/1023
    ModelParams p;
    p.n_atoms = 10;
    p.u0 = 0.0;
    p.u1 = 1.0;
    p.lambda = lambda_from_Lambda(p, 0.5, LambdaConvention::TwoMode);  // 2.5 bare
    const auto cd = cat_energies(p);
    CHECK(cd.e_plus == doctest::Approx(-6.2682926829268293).epsilon(1e-12));
    CHECK(cd.e_minus == doctest::Approx(-6.2316715542521994).epsilon(1e-12));
    CHECK(cd.delta_e == doctest::Approx(0.036621128674629855).epsilon(1e-10));
}

TEST_CASE("cat_energies: eps -> 0 limit and cancellation guard") {
    ModelParams p;
    p.n_atoms = 300;
    p.u0 = 0.002;
    p.u1 = 0.006;
    p.lambda = lambda_from_Lambda(p, 0.5, LambdaConvention::TwoMode);
    const auto cd = cat_energies(p);
    const double limit = 0.25 * 300.0 * 300.0 * (2.0 * p.u0 - 0.25 * (p.u1 - p.u0));
    CHECK(cd.e_plus == doctest::Approx(limit).epsilon(1e-10));
    CHECK(cd.e_minus == doctest::Approx(limit).epsilon(1e-10));
    // splitting from the expansion, not catastrophic subtraction
    CHECK(cd.delta_e > 0.0);
    const double eps = cd.overlap_eps;
    const double closed =
        0.5 * 300.0 * 300.0 * eps * (p.u1 - p.u0) * (1.0 - 0.25) / (1.0 - eps * eps);
    CHECK(cd.delta_e == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("splitting magnitude tracks eps |ln eps| N (U1-U0) within factor 2") {
    for (int n : {100, 300, 1000}) {
        ModelParams p;
        p.n_atoms = n;
        p.u0 = 1.0 / n;
        p.u1 = 3.0 / n;
        for (double target_eps : {1e-6, 1e-4, 1e-2}) {
            const double Lambda = std::exp(std::log(target_eps) / n);
            p.lambda = lambda_from_Lambda(p, Lambda, LambdaConvention::TwoMode);
            const auto cd = cat_energies(p);
            const double est = cd.delta_e_asymptotic;
            CHECK(std::abs(cd.delta_e) < 2.0 * est);
            CHECK(std::abs(cd.delta_e) > 0.5 * est);
        }
    }
}

TEST_CASE("exact splitting vs ansatz splitting stays in the quality band") {
    // diagnostic: only evaluated where the exact gap is resolvable above the
    // eigenvalue noise floor
    ModelParams p;
    p.n_atoms = 200;
    p.u0 = 1.0 / p.n_atoms;
    p.u1 = 3.0 * p.u0;
    for (double Lambda : {0.9, 0.93, 0.96, 0.98}) {
        p.lambda = lambda_from_Lambda(p, Lambda, LambdaConvention::TwoMode);
        const auto spec = diagonalize(build_hamiltonian(p), 2, false);
        const double gap = spec.eigenvalues[1] - spec.eigenvalues[0];
        const double noise_floor = 1e-13 * std::max(1.0, std::abs(spec.eigenvalues[0]));
        if (gap < 100.0 * noise_floor) continue;
        const auto cd = cat_energies(p);
        const double ratio = gap / cd.delta_e;
        CHECK(ratio > 0.01);
        CHECK(ratio < 100.0);
        MESSAGE("Lambda=", Lambda, " exact/ansatz splitting ratio=", ratio);
    }
}
