#include "catspec/gpe_relax.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "catspec/errors.hpp"

namespace catspec {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

// factorization of (I + tau K), K = -(1/2) d2/dr2 on u with zero boundaries
struct KineticSolver {
    double off = 0.0;
    std::vector<double> diag_fac;

    KineticSolver(int n, double tau, double h) {
        const double c = tau / (h * h);
        off = -0.5 * c;
        diag_fac.resize(n);
        double prev = 1.0 + c;
        diag_fac[0] = prev;
        for (int i = 1; i < n; ++i) {
            prev = 1.0 + c - off * off / prev;
            diag_fac[i] = prev;
        }
    }

    void solve(std::vector<double>& b) const {
        const int n = static_cast<int>(b.size());
        for (int i = 1; i < n; ++i) b[i] -= off / diag_fac[i - 1] * b[i - 1];
        b[n - 1] /= diag_fac[n - 1];
        for (int i = n - 2; i >= 0; --i) b[i] = (b[i] - off * b[i + 1]) / diag_fac[i];
    }
};

}  // namespace

RelaxResult relax_gpe(const ModelParams& params, double lambda, const RadialProfile& seed,
                      const RelaxOptions& opts) {
    params.validate();
    const double nd = params.n_atoms;
    if (std::abs(seed.norm() - nd) > 1e-4 * nd)
        throw std::invalid_argument("relax_gpe: seed profile is not normalized to N");

    const int n = seed.grid.n;
    const double h = seed.grid.h;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();

    // work in u = r alpha, v = r beta
    std::vector<double> u(n), v(n);
    for (int i = 0; i < n; ++i) {
        u[i] = seed.alpha[i] * seed.grid.r(i);
        v[i] = seed.beta[i] * seed.grid.r(i);
    }

    auto renormalize = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += u[i] * u[i] + v[i] * v[i];
        const double f = std::sqrt(nd / (kFourPi * h * s));
        for (int i = 0; i < n; ++i) {
            u[i] *= f;
            v[i] *= f;
        }
    };
    renormalize();

    auto to_profile = [&] {
        RadialProfile p;
        p.grid = seed.grid;
        p.alpha.resize(n);
        p.beta.resize(n);
        for (int i = 0; i < n; ++i) {
            p.alpha[i] = u[i] / seed.grid.r(i);
            p.beta[i] = v[i] / seed.grid.r(i);
        }
        return p;
    };

    // gradient pieces in u space: G = -u''/2 + W u - lambda v
    std::vector<double> gu(n), gv(n);
    auto apply_equations = [&] {
        for (int i = 0; i < n; ++i) {
            const double r = seed.grid.r(i);
            const double um = i > 0 ? u[i - 1] : 0.0, up = i + 1 < n ? u[i + 1] : 0.0;
            const double vm = i > 0 ? v[i - 1] : 0.0, vp = i + 1 < n ? v[i + 1] : 0.0;
            const double a2 = u[i] * u[i] / (r * r), b2 = v[i] * v[i] / (r * r);
            const double pot = 0.5 * r * r;
            gu[i] = -0.5 * (up - 2.0 * u[i] + um) / (h * h) + (pot + u0 * a2 + u1 * b2) * u[i] -
                    lambda * v[i];
            gv[i] = -0.5 * (vp - 2.0 * v[i] + vm) / (h * h) + (pot + u0 * b2 + u1 * a2) * v[i] -
                    lambda * u[i];
        }
    };

    auto residual_pair = [&](double* mu_out) {
        apply_equations();
        double mu_num = 0.0;
        for (int i = 0; i < n; ++i) mu_num += u[i] * gu[i] + v[i] * gv[i];
        const double mu = kFourPi * h * mu_num / nd;
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ra = gu[i] - mu * u[i];
            const double rb = gv[i] - mu * v[i];
            r2 += ra * ra + rb * rb;
        }
        *mu_out = mu;
        return std::sqrt(kFourPi * h * r2) / (std::sqrt(nd) * (1.0 + std::abs(mu)));
    };

    double tau = opts.tau;
    KineticSolver kin(n, tau, h);
    RadialProfile snapshot = to_profile();
    double best_energy = energy_breakdown(snapshot, params, lambda).total();
    std::vector<double> u_best = u, v_best = v;

    double mu = 0.0;
    double res = residual_pair(&mu);
    int it = 0;
    for (; it < opts.max_iterations && res > opts.tol; ++it) {
        // explicit potential/nonlinear/coupling part, implicit kinetic part
        for (int i = 0; i < n; ++i) {
            const double r = seed.grid.r(i);
            const double a2 = u[i] * u[i] / (r * r), b2 = v[i] * v[i] / (r * r);
            const double pot = 0.5 * r * r;
            gu[i] = u[i] - tau * ((pot + u0 * a2 + u1 * b2) * u[i] - lambda * v[i]);
            gv[i] = v[i] - tau * ((pot + u0 * b2 + u1 * a2) * v[i] - lambda * u[i]);
        }
        kin.solve(gu);
        kin.solve(gv);
        u.swap(gu);
        v.swap(gv);
        renormalize();

        if ((it + 1) % opts.check_interval == 0) {
            const RadialProfile p = to_profile();
            const double e = energy_breakdown(p, params, lambda).total();
            if (e > best_energy + 1e-10 * (1.0 + std::abs(best_energy))) {
                tau *= 0.5;
                if (tau < 1e-6 * opts.tau) {
                    std::ostringstream os;
                    os << "relax_gpe: diverging (energy " << best_energy << " -> " << e
                       << ") at iteration " << it << ", tau floor reached";
                    throw SolverError(os.str());
                }
                kin = KineticSolver(n, tau, h);
                u = u_best;
                v = v_best;
            } else {
                if (e < best_energy) {
                    best_energy = e;
                    u_best = u;
                    v_best = v;
                }
                res = residual_pair(&mu);
            }
        }
    }
    if (res > opts.tol) {
        std::ostringstream os;
        os << "relax_gpe: no convergence after " << it << " iterations (residual " << res << ")";
        throw SolverError(os.str());
    }

    RelaxResult out;
    out.profile = to_profile();
    out.energy = energy_breakdown(out.profile, params, lambda).total();
    out.mu = mu;
    out.residual = res;
    out.iterations = it;
    return out;
}

}  // namespace catspec
