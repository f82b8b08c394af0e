#include "catspec/radial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "catspec/errors.hpp"

namespace catspec {

namespace {
constexpr double kFourPi = 4.0 * 3.14159265358979323846;
}

RadialGrid RadialGrid::make(double r_max, int points) {
    if (!(r_max > 0.0) || points < 8)
        throw std::invalid_argument("RadialGrid: need r_max > 0 and at least 8 points");
    RadialGrid g;
    g.n = points;
    g.h = r_max / points;
    return g;
}

RadialGrid default_grid(double r_extent) {
    return RadialGrid::make(std::max(2.0 * r_extent, 8.0), 2048);
}

double RadialProfile::norm() const {
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.r(i);
        s += (alpha[i] * alpha[i] + beta[i] * beta[i]) * r * r;
    }
    return kFourPi * s * grid.h;
}

void RadialProfile::scale_to(double n_target) {
    const double n0 = norm();
    if (n0 <= 0.0) throw SolverError("RadialProfile::scale_to: empty profile");
    const double f = std::sqrt(n_target / n0);
    for (auto& x : alpha) x *= f;
    for (auto& x : beta) x *= f;
}

RadialProfile RadialProfile::mirrored() const {
    RadialProfile q = *this;
    std::swap(q.alpha, q.beta);
    return q;
}

EnergyBreakdown energy_breakdown(const RadialProfile& p, const ModelParams& params,
                                 double lambda) {
    const int n = p.grid.n;
    const double h = p.grid.h;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    EnergyBreakdown e;
    // u = r alpha, v = r beta; kinetic via sum of squared first differences,
    // the discrete counterpart of (1/2) int u'^2 (u vanishes at both ends)
    double kin = 0.0, trap = 0.0, self = 0.0, cross = 0.0, coup = 0.0;
    double ua_prev = 0.0, ub_prev = 0.0;  // u(0) = 0
    for (int i = 0; i <= n; ++i) {
        const double r = h * (i + 1);
        const double ua = (i < n) ? p.alpha[i] * r : 0.0;
        const double ub = (i < n) ? p.beta[i] * r : 0.0;
        const double da = (ua - ua_prev) / h;
        const double db = (ub - ub_prev) / h;
        kin += 0.5 * (da * da + db * db);
        if (i < n) {
            const double a2 = ua * ua, b2 = ub * ub;
            trap += 0.5 * r * r * (a2 + b2);
            self += 0.5 * u0 * (a2 * a2 + b2 * b2) / (r * r);
            cross += u1 * a2 * b2 / (r * r);
            coup += -2.0 * lambda * ua * ub;
        }
        ua_prev = ua;
        ub_prev = ub;
    }
    e.kinetic = kFourPi * h * kin;
    e.trap = kFourPi * h * trap;
    e.self_int = kFourPi * h * self;
    e.cross_int = kFourPi * h * cross;
    e.coupling = kFourPi * h * coup;
    return e;
}

double energy_functional(const RadialProfile& p, const ModelParams& params, double lambda) {
    const double n0 = p.norm();
    const double nd = params.n_atoms;
    if (std::abs(n0 - nd) > 1e-4 * nd) {
        std::ostringstream os;
        os << "energy_functional: profile norm " << n0 << " deviates from N = " << nd;
        throw std::invalid_argument(os.str());
    }
    return energy_breakdown(p, params, lambda).total();
}

void gp_equations_lhs(const RadialProfile& p, const ModelParams& params, double lambda,
                      std::vector<double>& ga, std::vector<double>& gb) {
    const int n = p.grid.n;
    const double h = p.grid.h;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    ga.resize(n);
    gb.resize(n);
    auto lap_u = [&](const std::vector<double>& f, int i) {
        // second difference of u = r f at node i, boundary u = 0
        const double um = (i > 0) ? f[i - 1] * p.grid.r(i - 1) : 0.0;
        const double uc = f[i] * p.grid.r(i);
        const double up = (i + 1 < n) ? f[i + 1] * p.grid.r(i + 1) : 0.0;
        return (up - 2.0 * uc + um) / (h * h);
    };
    for (int i = 0; i < n; ++i) {
        const double r = p.grid.r(i);
        const double a = p.alpha[i], b = p.beta[i];
        const double pot = 0.5 * r * r;
        ga[i] = -0.5 * lap_u(p.alpha, i) / r + (pot + u0 * a * a + u1 * b * b) * a - lambda * b;
        gb[i] = -0.5 * lap_u(p.beta, i) / r + (pot + u0 * b * b + u1 * a * a) * b - lambda * a;
    }
}

}  // namespace catspec
