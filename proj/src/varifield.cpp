#include "catspec/varifield.hpp"

#include <algorithm>
#include <cmath>

#include "catspec/errors.hpp"
#include "catspec/parallel.hpp"
#include "catspec/simplex.hpp"
#include "catspec/thomas_fermi.hpp"
#include "catspec/tridiag_eigen.hpp"
#include "catspec/twomode_exact.hpp"

namespace catspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double gauss_overlap(double a, double b) {
    return std::pow(2.0 * a * b / (a * a + b * b), 1.5);
}

// int g_a L g_b with L = -lap/2 + r^2/2
double gauss_sp(double a, double b) {
    const double s2 = a * a + b * b;
    return gauss_overlap(a, b) * (0.75 / s2 + 3.0 * a * a * b * b / s2);
}

// int g_a g_b g_c g_d
double gauss_quartic4(double a, double b, double c, double d) {
    const double gsum =
        1.0 / (4 * a * a) + 1.0 / (4 * b * b) + 1.0 / (4 * c * c) + 1.0 / (4 * d * d);
    double pref = std::pow(2.0 * kPi, -3.0) * std::pow(a * b * c * d, -1.5);
    return pref * std::pow(kPi / gsum, 1.5);
}

OrbitalShape make_shape(double a1, double a2, double mix) {
    OrbitalShape s;
    if (mix == 0.0) {
        s = {1.0, a1, 0.0, a1};
        return s;
    }
    const double c = std::cos(mix), d = std::sin(mix);
    const double nrm = std::sqrt(1.0 + 2.0 * c * d * gauss_overlap(a1, a2));
    s.c1 = c / nrm;
    s.a1 = a1;
    s.c2 = d / nrm;
    s.a2 = a2;
    return s;
}

}  // namespace

double orbital_overlap(const OrbitalShape& s, const OrbitalShape& t) {
    return s.c1 * t.c1 * gauss_overlap(s.a1, t.a1) + s.c1 * t.c2 * gauss_overlap(s.a1, t.a2) +
           s.c2 * t.c1 * gauss_overlap(s.a2, t.a1) + s.c2 * t.c2 * gauss_overlap(s.a2, t.a2);
}

double orbital_sp_energy(const OrbitalShape& s) {
    return s.c1 * s.c1 * gauss_sp(s.a1, s.a1) + 2.0 * s.c1 * s.c2 * gauss_sp(s.a1, s.a2) +
           s.c2 * s.c2 * gauss_sp(s.a2, s.a2);
}

double orbital_quartic(const OrbitalShape& s, const OrbitalShape& t) {
    // expand (c1 g1 + c2 g2)^2 (d1 h1 + d2 h2)^2
    const double cs[2] = {s.c1, s.c2};
    const double as[2] = {s.a1, s.a2};
    const double ct[2] = {t.c1, t.c2};
    const double at[2] = {t.a1, t.a2};
    double sum = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (cs[i] == 0.0 || cs[j] == 0.0) continue;
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    if (ct[k] == 0.0 || ct[l] == 0.0) continue;
                    sum += cs[i] * cs[j] * ct[k] * ct[l] *
                           gauss_quartic4(as[i], as[j], at[k], at[l]);
                }
        }
    return sum;
}

double sector_pair_energy(const ModelParams& params, double lambda, VariCoupling coupling,
                          int m, const OrbitalShape& s, const OrbitalShape& t) {
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    const double ma = m, mb = params.n_atoms - m;
    const double kappa = (coupling == VariCoupling::TwoLambda ? 2.0 : 1.0) * lambda;
    double e = ma * orbital_sp_energy(s) + mb * orbital_sp_energy(t);
    e += 0.5 * u0 * (ma * ma * orbital_quartic(s, s) + mb * mb * orbital_quartic(t, t));
    e += u1 * ma * mb * orbital_quartic(s, t);
    e -= kappa * std::sqrt(ma * mb) * orbital_overlap(s, t);
    return e;
}

OrbitalFamily solve_orbitals(const ModelParams& params, double lambda,
                             const OrbitalOptions& opts) {
    params.validate();
    const int nd = params.n_atoms;
    if (nd < 2) throw std::invalid_argument("solve_orbitals: N >= 2 required");
    const int step = opts.coarse_step > 0
                         ? opts.coarse_step
                         : std::max(1, (nd + 199) / 200);

    OrbitalFamily fam;
    fam.n_atoms = nd;
    fam.shapes.assign(nd + 1, OrbitalShape{});
    fam.interpolated.assign(nd + 1, 1);

    // m points to solve: N/2 down to 1 in `step` strides, plus 1 and 0
    std::vector<int> ms;
    for (int m = nd / 2; m >= 1; m -= step) ms.push_back(m);
    if (ms.empty() || ms.back() != 1) ms.push_back(1);

    const double a_osc = 1.0 / std::sqrt(2.0);
    const double chi = std::max(nd * (params.u0_eff() + params.u1_eff()), 0.0);
    double warm_s = std::max(a_osc, 0.3 * std::pow(chi + 1.0, 0.2));
    double warm_t = warm_s;
    double warm_mix_s = 0.0, warm_mix_t = 0.0, warm_s2 = warm_s, warm_t2 = warm_t;

    SimplexOptions sopts;
    sopts.initial_step = 0.15;

    for (int m : ms) {
        auto objective = [&](const std::vector<double>& x) {
            OrbitalShape s, t;
            if (!opts.two_gaussian) {
                s = make_shape(std::exp(x[0]), 0.0, 0.0);
                t = make_shape(std::exp(x[1]), 0.0, 0.0);
            } else {
                s = make_shape(std::exp(x[0]), std::exp(x[1]), x[2]);
                t = make_shape(std::exp(x[3]), std::exp(x[4]), x[5]);
            }
            return sector_pair_energy(params, lambda, opts.coupling, m, s, t);
        };
        try {
            std::vector<double> x0;
            if (!opts.two_gaussian)
                x0 = {std::log(warm_s), std::log(warm_t)};
            else
                x0 = {std::log(warm_s),     std::log(warm_s2), warm_mix_s,
                      std::log(warm_t),     std::log(warm_t2), warm_mix_t};
            const auto r = nelder_mead(objective, x0, sopts);
            if (!r.converged) throw SolverError("orbital optimizer stalled");
            if (!opts.two_gaussian) {
                fam.shapes[m] = make_shape(std::exp(r.x[0]), 0.0, 0.0);
                fam.shapes[nd - m] = make_shape(std::exp(r.x[1]), 0.0, 0.0);
                warm_s = std::exp(r.x[0]);
                warm_t = std::exp(r.x[1]);
            } else {
                fam.shapes[m] = make_shape(std::exp(r.x[0]), std::exp(r.x[1]), r.x[2]);
                fam.shapes[nd - m] = make_shape(std::exp(r.x[3]), std::exp(r.x[4]), r.x[5]);
                warm_s = std::exp(r.x[0]);
                warm_s2 = std::exp(r.x[1]);
                warm_mix_s = r.x[2];
                warm_t = std::exp(r.x[3]);
                warm_t2 = std::exp(r.x[4]);
                warm_mix_t = r.x[5];
            }
            fam.interpolated[m] = 0;
            fam.interpolated[nd - m] = 0;
        } catch (const SolverError&) {
            // isolated failure: leave flagged, fill by interpolation below
        }
    }

    // m = 0 sector: a lone N-atom orbital; the empty orbital aligns with its
    // partner (the coupling term dominates the m -> 0 limit)
    {
        auto objective0 = [&](const std::vector<double>& x) {
            const OrbitalShape t = opts.two_gaussian
                                       ? make_shape(std::exp(x[0]), std::exp(x[1]), x[2])
                                       : make_shape(std::exp(x[0]), 0.0, 0.0);
            return sector_pair_energy(params, lambda, opts.coupling, 0, OrbitalShape{}, t);
        };
        std::vector<double> x0 = opts.two_gaussian
                                     ? std::vector<double>{std::log(warm_t), std::log(warm_t2),
                                                           warm_mix_t}
                                     : std::vector<double>{std::log(warm_t)};
        const auto r = nelder_mead(objective0, x0, sopts);
        if (r.converged) {
            fam.shapes[nd] = opts.two_gaussian
                                 ? make_shape(std::exp(r.x[0]), std::exp(r.x[1]), r.x[2])
                                 : make_shape(std::exp(r.x[0]), 0.0, 0.0);
            fam.shapes[0] = fam.shapes[nd];
            fam.interpolated[0] = 0;
            fam.interpolated[nd] = 0;
        }
    }

    // linear interpolation of widths across unsolved or failed sectors
    int prev = -1;
    for (int m = 0; m <= nd; ++m) {
        if (!fam.interpolated[m]) {
            if (prev >= 0 && m - prev > 1) {
                for (int j = prev + 1; j < m; ++j) {
                    const double w = double(j - prev) / (m - prev);
                    OrbitalShape sh;
                    sh.a1 = (1.0 - w) * fam.shapes[prev].a1 + w * fam.shapes[m].a1;
                    sh.a2 = (1.0 - w) * fam.shapes[prev].a2 + w * fam.shapes[m].a2;
                    const double mix_prev = std::atan2(fam.shapes[prev].c2, fam.shapes[prev].c1);
                    const double mix_next = std::atan2(fam.shapes[m].c2, fam.shapes[m].c1);
                    const double mix = (1.0 - w) * mix_prev + w * mix_next;
                    fam.shapes[j] = make_shape(sh.a1, sh.a2, mix);
                }
            }
            prev = m;
        }
    }
    if (prev < 0) throw SolverError("solve_orbitals: every sector failed");
    return fam;
}

QHamiltonian build_q_hamiltonian(const OrbitalFamily& family, const ModelParams& params,
                                 double lambda) {
    const int nd = family.n_atoms;
    if (static_cast<int>(family.shapes.size()) != nd + 1)
        throw std::invalid_argument("build_q_hamiltonian: family size mismatch");
    const double u0 = params.u0_eff(), u1 = params.u1_eff();

    QHamiltonian out;
    out.matrix.diag.resize(nd + 1);
    out.matrix.offdiag.resize(nd);
    for (int m = 0; m <= nd; ++m) {
        const double ma = m, mb = nd - m;
        const OrbitalShape& s = family.shapes[m];
        const OrbitalShape& t = family.shapes[nd - m];
        double em = ma * orbital_sp_energy(s) + mb * orbital_sp_energy(t);
        em += 0.5 * u0 * (ma * ma * orbital_quartic(s, s) + mb * mb * orbital_quartic(t, t));
        em += u1 * ma * mb * orbital_quartic(s, t);
        out.matrix.diag[m] = em;
    }
    for (int m = 0; m < nd; ++m) {
        const double amp = std::sqrt(double(m + 1) * double(nd - m));
        const double L = amp * orbital_overlap(family.shapes[m], family.shapes[nd - m]);
        const double K = amp * orbital_overlap(family.shapes[m + 1], family.shapes[nd - m - 1]);
        out.matrix.offdiag[m] = -lambda * 0.5 * (L + K);
        out.max_asymmetry = std::max(out.max_asymmetry, std::abs(L - K));
    }
    return out;
}

std::vector<VariSweepRow> variational_sweep(const ModelParams& params,
                                            const std::vector<double>& Lambda_field_grid,
                                            const OrbitalOptions& opts, int threads) {
    const int n = static_cast<int>(Lambda_field_grid.size());
    const double lambda0 = tf_lambda0(params);
    std::vector<VariSweepRow> rows(n);
    parallel_for_indexed(n, threads, [&](int i) {
        VariSweepRow& row = rows[i];
        row.Lambda = Lambda_field_grid[i];
        row.Lambda_rel = row.Lambda / lambda0;
        try {
            const double lam = lambda_from_Lambda(params, row.Lambda, LambdaConvention::Field);
            const auto family = solve_orbitals(params, lam, opts);
            const auto qh = build_q_hamiltonian(family, params, lam);
            const int k = std::min(4, qh.matrix.dim());
            const auto spec = diagonalize(qh.matrix, k, false);
            row.e0 = spec.eigenvalues[0];
            row.gap01 = k > 1 ? spec.eigenvalues[1] - spec.eigenvalues[0] : 0.0;
            row.gap12 = k > 2 ? spec.eigenvalues[2] - spec.eigenvalues[1] : 0.0;
            row.ratio = row.gap01 / row.gap12;
            row.gap03 = k > 3 ? spec.eigenvalues[3] - spec.eigenvalues[0] : 0.0;
            row.gap23 = k > 3 ? spec.eigenvalues[3] - spec.eigenvalues[2] : 0.0;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.e0 = row.gap01 = row.gap12 = row.ratio = row.gap03 = row.gap23 =
                std::numeric_limits<double>::quiet_NaN();
        }
    });
    return rows;
}

}  // namespace catspec
