#include "catspec/adiabatic.hpp"

#include <cmath>
#include <sstream>

#include "catspec/errors.hpp"
#include "catspec/tridiag_eigen.hpp"
#include "catspec/twomode_exact.hpp"

namespace catspec {

namespace {

using cvec = std::vector<std::complex<double>>;

// solve (I + i c H) x = rhs, H tridiagonal; diagonal dominance holds for the
// step sizes admitted by the dt precondition, so no pivoting is needed
void cayley_solve(const TridiagonalHamiltonian& h, double c, const cvec& rhs, cvec& x,
                  cvec& dwork, cvec& cwork) {
    const int n = h.dim();
    const std::complex<double> ic(0.0, c);
    dwork.resize(n);
    cwork.resize(n);
    x = rhs;
    // forward elimination (Thomas)
    dwork[0] = 1.0 + ic * h.diag[0];
    for (int i = 1; i < n; ++i) {
        cwork[i - 1] = ic * h.offdiag[i - 1];
        const std::complex<double> m = cwork[i - 1] / dwork[i - 1];
        dwork[i] = 1.0 + ic * h.diag[i] - m * cwork[i - 1];
        x[i] -= m * x[i - 1];
    }
    x[n - 1] /= dwork[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - cwork[i] * x[i + 1]) / dwork[i];
}

void apply_h(const TridiagonalHamiltonian& h, const cvec& v, cvec& out) {
    const int n = h.dim();
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        std::complex<double> s = h.diag[i] * v[i];
        if (i > 0) s += h.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) s += h.offdiag[i] * v[i + 1];
        out[i] = s;
    }
}

double norm(const cvec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

// one implicit midpoint step: (I + i dt/2 H_mid) psi' = (I - i dt/2 H_mid) psi
void midpoint_step(const TridiagonalHamiltonian& h_mid, double dt, cvec& psi, cvec& rhs,
                   cvec& dwork, cvec& cwork) {
    apply_h(h_mid, psi, rhs);
    const std::complex<double> ihalf(0.0, -0.5 * dt);
    for (std::size_t i = 0; i < psi.size(); ++i) rhs[i] = psi[i] + ihalf * rhs[i];
    cayley_solve(h_mid, 0.5 * dt, rhs, psi, dwork, cwork);
}

}  // namespace

RampShape ramp_shape_from_string(const std::string& s) {
    if (s == "linear") return RampShape::Linear;
    if (s == "smoothstep") return RampShape::Smoothstep;
    throw ConfigError("unknown ramp shape '" + s + "' (expected linear or smoothstep)");
}

void RampSchedule::validate() const {
    if (!(Lambda_end > 0.0)) throw ConfigError("ramp: Lambda_end must be > 0");
    if (Lambda_start < Lambda_end)
        throw ConfigError("ramp: Lambda_start must be >= Lambda_end");
    if (!(duration > 0.0)) throw ConfigError("ramp: duration must be > 0");
}

double RampSchedule::Lambda_at(double t) const {
    double x = t / duration;
    x = std::min(std::max(x, 0.0), 1.0);
    if (shape == RampShape::Smoothstep) x = x * x * (3.0 - 2.0 * x);
    return Lambda_start + (Lambda_end - Lambda_start) * x;
}

EvolveResult evolve(const ModelParams& params, const RampSchedule& ramp, double dt,
                    int max_rows) {
    ramp.validate();
    if (!(dt > 0.0)) throw ConfigError("evolve: dt must be > 0");

    auto h_at = [&](double Lambda) {
        return build_hamiltonian(
            params.with_lambda(lambda_from_Lambda(params, Lambda, LambdaConvention::TwoMode)));
    };

    const auto h0 = h_at(ramp.Lambda_start);
    const int n = h0.dim();
    const double span =
        eigenvalue_by_index(h0, n - 1) - eigenvalue_by_index(h0, 0);
    if (dt > 0.05 / span) {
        std::ostringstream os;
        os << "evolve: dt = " << dt << " exceeds 0.05/(E_N-E_0) = " << 0.05 / span;
        throw ConfigError(os.str());
    }

    const auto ground = diagonalize(h0, std::min(2, n), true);
    cvec psi(n);
    for (int i = 0; i < n; ++i) psi[i] = ground.eigenvectors[0][i];

    const long total_steps = std::max(1L, static_cast<long>(std::ceil(ramp.duration / dt)));
    const double step = ramp.duration / total_steps;
    const long stride = std::max(1L, total_steps / std::max(1, max_rows - 1));

    EvolveResult result;
    cvec rhs, dwork, cwork;

    auto sample = [&](double t) {
        const double Lambda = ramp.Lambda_at(t);
        const auto h = h_at(Lambda);
        const auto spec = diagonalize(h, std::min(2, n), true);
        std::complex<double> a0(0.0, 0.0), a1(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            a0 += spec.eigenvectors[0][i] * psi[i];
            if (n > 1) a1 += spec.eigenvectors[1][i] * psi[i];
        }
        EvolveRow row;
        row.t = t;
        row.Lambda = Lambda;
        row.fid_ground = std::norm(a0);
        row.fid_pair = std::norm(a0) + std::norm(a1);
        row.norm = norm(psi);
        result.rows.push_back(row);
        result.max_norm_drift = std::max(result.max_norm_drift, std::abs(row.norm - 1.0));
    };

    sample(0.0);
    for (long s = 0; s < total_steps; ++s) {
        const double t0 = s * step;
        const double norm_before = norm(psi);
        const auto h_mid = h_at(ramp.Lambda_at(t0 + 0.5 * step));
        cvec backup = psi;
        midpoint_step(h_mid, step, psi, rhs, dwork, cwork);
        if (std::abs(norm(psi) - norm_before) > 1e-12) {
            // reject: redo in halves with midpoint Hamiltonians of the halves
            psi = backup;
            int halves = 2;
            bool ok = false;
            for (; halves <= 16 && !ok; halves *= 2) {
                psi = backup;
                const double sub = step / halves;
                for (int q = 0; q < halves; ++q) {
                    const auto h_sub = h_at(ramp.Lambda_at(t0 + (q + 0.5) * sub));
                    midpoint_step(h_sub, sub, psi, rhs, dwork, cwork);
                }
                ok = std::abs(norm(psi) - norm_before) <= 1e-12;
            }
            if (!ok)
                throw SolverError("evolve: step rejected at t=" + std::to_string(t0) +
                                  ", norm drift persists after subdivision");
        }
        result.max_norm_drift = std::max(result.max_norm_drift, std::abs(norm(psi) - 1.0));
        if ((s + 1) % stride == 0 && s + 1 != total_steps) sample((s + 1) * step);
    }
    sample(ramp.duration);
    result.psi_final = psi;
    result.steps = total_steps;
    return result;
}

}  // namespace catspec
