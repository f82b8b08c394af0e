#include "catspec/cat_field.hpp"

#include <cmath>

#include "catspec/errors.hpp"

namespace catspec {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

// int f L g d3r with L = -lap/2 + r^2/2, via first differences of u = r f
// (symmetric in f, g by construction)
double single_particle_cross(const RadialGrid& grid, const std::vector<double>& f,
                             const std::vector<double>& g) {
    const int n = grid.n;
    const double h = grid.h;
    double kin = 0.0, trap = 0.0;
    double uf_prev = 0.0, ug_prev = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double r = h * (i + 1);
        const double uf = (i < n) ? f[i] * r : 0.0;
        const double ug = (i < n) ? g[i] * r : 0.0;
        kin += 0.5 * ((uf - uf_prev) / h) * ((ug - ug_prev) / h);
        if (i < n) trap += 0.5 * r * r * uf * ug;
        uf_prev = uf;
        ug_prev = ug;
    }
    return kFourPi * h * (kin + trap);
}

double overlap_integral(const RadialGrid& grid, const std::vector<double>& f,
                        const std::vector<double>& g) {
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.r(i);
        s += f[i] * g[i] * r * r;
    }
    return kFourPi * s * grid.h;
}

double quartic_integral(const RadialGrid& grid, const std::vector<double>& f,
                        const std::vector<double>& g) {
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.r(i);
        s += f[i] * f[i] * g[i] * g[i] * r * r;
    }
    return kFourPi * s * grid.h;
}

}  // namespace

FieldCatEnergies cat_energy_ordering(const RadialProfile& plus_branch, const ModelParams& params,
                                     double lambda) {
    params.validate();
    const double nd = params.n_atoms;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    const RadialGrid& grid = plus_branch.grid;
    const auto& a = plus_branch.alpha;
    const auto& b = plus_branch.beta;

    // mirror branch: alpha- = beta+, beta- = alpha+
    const double z = 2.0 * overlap_integral(grid, a, b) / nd;
    if (!(z > 0.0))
        throw std::domain_error("cat_energy_ordering: nonpositive branch overlap");
    if (z >= 1.0 - 1e-9)
        throw NotInCatRegimeError("cat_energy_ordering: branches not distinct (overlap ~ 1)");

    const double log_eps = nd * std::log(z);
    const double eps = (log_eps < -745.0) ? 0.0 : std::exp(log_eps);
    const double zExp1 = ((nd - 1.0) * std::log(z) < -745.0)
                             ? 0.0
                             : std::exp((nd - 1.0) * std::log(z));
    const double zExp2 = ((nd - 2.0) * std::log(z) < -745.0)
                             ? 0.0
                             : std::exp((nd - 2.0) * std::log(z));

    const double e_mid = energy_breakdown(plus_branch, params, lambda).total();

    // <psi+|H|psi->: single-particle terms carry z^(N-1), pair terms z^(N-2)
    const double sp = 2.0 * single_particle_cross(grid, a, b) - lambda * nd;
    const double pair = (u0 + u1) * quartic_integral(grid, a, b);
    const double cross = zExp1 * sp + zExp2 * pair;

    FieldCatEnergies out;
    out.e_mid = e_mid;
    out.overlap_eps = eps;
    out.log_overlap = log_eps;
    out.cross = cross;
    out.e_plus = (e_mid + cross) / (1.0 + eps);
    out.e_minus = (e_mid - cross) / (1.0 - eps);
    return out;
}

}  // namespace catspec
