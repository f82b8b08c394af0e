#include <doctest.h>

#include <cmath>
#include <complex>

#include "catspec/adiabatic.hpp"
#include "catspec/errors.hpp"
#include "catspec/tridiag_eigen.hpp"
#include "catspec/twomode_exact.hpp"

using namespace catspec;

namespace {

ModelParams test_params(int n) {
    ModelParams p;
    p.n_atoms = n;
    p.u0 = 1.0 / n;
    p.u1 = 3.0 / n;
    return p;
}

double safe_dt(const ModelParams& p, double Lambda_start) {
    const auto h = build_hamiltonian(
        p.with_lambda(lambda_from_Lambda(p, Lambda_start, LambdaConvention::TwoMode)));
    const double span = eigenvalue_by_index(h, h.dim() - 1) - eigenvalue_by_index(h, 0);
    return 0.045 / span;
}

}  // namespace

TEST_CASE("stationary ramp: fidelity stays 1, norm conserved") {
    const auto p = test_params(20);
    RampSchedule ramp;
    ramp.Lambda_start = ramp.Lambda_end = 1.3;
    ramp.duration = 5.0;
    const auto res = evolve(p, ramp, safe_dt(p, 1.3), 51);
    for (const auto& row : res.rows) {
        CHECK(std::abs(row.fid_ground - 1.0) < 1e-8);
        CHECK(std::abs(row.norm - 1.0) < 1e-10);
    }
    CHECK(res.max_norm_drift < 1e-10);
}

TEST_CASE("energy conserved at fixed coupling") {
    const auto p = test_params(24);
    RampSchedule ramp;
    ramp.Lambda_start = ramp.Lambda_end = 1.2;
    ramp.duration = 8.0;
    const auto res = evolve(p, ramp, safe_dt(p, 1.2), 11);
    const auto h = build_hamiltonian(
        p.with_lambda(lambda_from_Lambda(p, 1.2, LambdaConvention::TwoMode)));
    const auto g = diagonalize(h, 1, false);
    // <psi|H|psi> at the end vs the initial (ground) energy
    std::complex<double> e(0.0, 0.0);
    const auto& psi = res.psi_final;
    for (int i = 0; i < h.dim(); ++i) {
        std::complex<double> hv = h.diag[i] * psi[i];
        if (i > 0) hv += h.offdiag[i - 1] * psi[i - 1];
        if (i + 1 < h.dim()) hv += h.offdiag[i] * psi[i + 1];
        e += std::conj(psi[i]) * hv;
    }
    CHECK(std::abs(e.real() - g.eigenvalues[0]) < 1e-8 * (1.0 + std::abs(g.eigenvalues[0])));
}

TEST_CASE("sudden quench: final fidelity equals the static overlap") {
    const auto p = test_params(20);
    RampSchedule ramp;
    ramp.Lambda_start = 1.5;
    ramp.Lambda_end = 0.8;
    ramp.duration = 1e-7;
    const auto res = evolve(p, ramp, 1e-8, 5);
    const auto s_start = diagonalize(
        build_hamiltonian(p.with_lambda(lambda_from_Lambda(p, 1.5, LambdaConvention::TwoMode))), 1,
        true);
    const auto s_end = diagonalize(
        build_hamiltonian(p.with_lambda(lambda_from_Lambda(p, 0.8, LambdaConvention::TwoMode))), 1,
        true);
    double ov = 0.0;
    for (int i = 0; i <= p.n_atoms; ++i)
        ov += s_start.eigenvectors[0][i] * s_end.eigenvectors[0][i];
    CHECK(res.rows.back().fid_ground == doctest::Approx(ov * ov).epsilon(1e-6));
}

TEST_CASE("parity is conserved through the ramp") {
    const auto p = test_params(30);
    RampSchedule ramp;
    ramp.Lambda_start = 1.5;
    ramp.Lambda_end = 0.7;
    ramp.duration = 40.0;
    ramp.shape = RampShape::Smoothstep;
    const auto res = evolve(p, ramp, safe_dt(p, 1.5), 11);
    const auto& psi = res.psi_final;
    const int n = static_cast<int>(psi.size());
    double odd = 0.0;
    for (int i = 0; i < n; ++i) odd += std::norm(0.5 * (psi[i] - psi[n - 1 - i]));
    CHECK(std::sqrt(odd) < 1e-8);
    CHECK(res.max_norm_drift < 1e-10);
}

TEST_CASE("fidelity_pair nondecreasing in duration (small case)") {
    const auto p = test_params(30);
    double prev = -1.0;
    for (double T : {8.0, 32.0, 128.0}) {
        RampSchedule ramp;
        ramp.Lambda_start = 1.5;
        ramp.Lambda_end = 0.7;
        ramp.duration = T;
        ramp.shape = RampShape::Smoothstep;
        const auto res = evolve(p, ramp, safe_dt(p, 1.5), 3);
        const double fid = res.rows.back().fid_pair;
        CHECK(fid >= prev - 1e-6);
        prev = fid;
    }
    CHECK(prev > 0.9);
}

TEST_CASE("ramp validation and dt precondition") {
    const auto p = test_params(10);
    RampSchedule bad;
    bad.Lambda_start = 0.5;
    bad.Lambda_end = 0.7;  // start < end
    bad.duration = 1.0;
    CHECK_THROWS_AS(evolve(p, bad, 1e-3), ConfigError);

    RampSchedule ramp;
    ramp.Lambda_start = 1.5;
    ramp.Lambda_end = 0.7;
    ramp.duration = 1.0;
    CHECK_THROWS_AS(evolve(p, ramp, 1e3), ConfigError);  // dt too large
    CHECK_THROWS_AS(evolve(p, ramp, -1.0), ConfigError);

    RampSchedule zero_dur;
    zero_dur.Lambda_start = 1.5;
    zero_dur.Lambda_end = 0.7;
    zero_dur.duration = 0.0;
    CHECK_THROWS_AS(evolve(p, zero_dur, 1e-3), ConfigError);
}

TEST_CASE("smoothstep ramp endpoints and midpoint") {
    RampSchedule ramp;
    ramp.Lambda_start = 1.5;
    ramp.Lambda_end = 0.7;
    ramp.duration = 10.0;
    ramp.shape = RampShape::Smoothstep;
    CHECK(ramp.Lambda_at(0.0) == 1.5);
    CHECK(ramp.Lambda_at(10.0) == 0.7);
    CHECK(ramp.Lambda_at(5.0) == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(ramp.Lambda_at(20.0) == 0.7);  // clamped
}
