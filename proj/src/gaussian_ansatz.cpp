#include "catspec/gaussian_ansatz.hpp"

#include <cmath>
#include <sstream>

#include "catspec/errors.hpp"
#include "catspec/simplex.hpp"

namespace catspec {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kTwoPi32 = std::pow(2.0 * kPi, 1.5);

// closed forms for unit-norm Gaussian orbitals g_a(r) ~ exp(-r^2/(4a^2)):
//   single-particle energy  e(a)   = 3/(8 a^2) + 3 a^2 / 2
//   quartic overlap         X(a,b) = (2 pi (a^2+b^2))^(-3/2),  X(a,a) = int g^4
//   wave overlap            S(a,b) = (2ab/(a^2+b^2))^(3/2)
double orbital_energy(double a) { return 3.0 / (8.0 * a * a) + 1.5 * a * a; }
double quartic_overlap(double a, double b) {
    return std::pow(2.0 * kPi * (a * a + b * b), -1.5);
}
double wave_overlap(double a, double b) {
    return std::pow(2.0 * a * b / (a * a + b * b), 1.5);
}

struct SplitEnergy {
    double kinetic_trap, self, cross, coupling;
    double total() const { return kinetic_trap + self + cross + coupling; }
};

SplitEnergy split_energy(double n_a, double a, double n_b, double b, double u0, double u1,
                         double lambda) {
    SplitEnergy e{};
    e.kinetic_trap = n_a * orbital_energy(a) + n_b * orbital_energy(b);
    e.self = 0.5 * u0 * (n_a * n_a * quartic_overlap(a, a) + n_b * n_b * quartic_overlap(b, b));
    e.cross = u1 * n_a * n_b * quartic_overlap(a, b);
    e.coupling = -2.0 * lambda * std::sqrt(n_a * n_b) * wave_overlap(a, b);
    return e;
}

}  // namespace

double GaussianPair::atoms_a() const { return kTwoPi32 * amp_a * std::pow(width_a, 3); }
double GaussianPair::atoms_b() const { return kTwoPi32 * amp_b * std::pow(width_b, 3); }

GaussianPair gaussian_pair_from_atoms(double n_a, double a, double n_b, double b) {
    GaussianPair g;
    g.width_a = a;
    g.width_b = b;
    g.amp_a = n_a / (kTwoPi32 * std::pow(a, 3));
    g.amp_b = n_b / (kTwoPi32 * std::pow(b, 3));
    return g;
}

double gaussian_energy(const GaussianPair& g, const ModelParams& params, double lambda) {
    return split_energy(g.atoms_a(), g.width_a, g.atoms_b(), g.width_b, params.u0_eff(),
                        params.u1_eff(), lambda)
        .total();
}

double gaussian_mu(const GaussianPair& g, const ModelParams& params, double lambda) {
    // mu N = K + 2 E_self + 2 E_cross + E_coupling (projection of the
    // stationarity equations onto the profile)
    const SplitEnergy e = split_energy(g.atoms_a(), g.width_a, g.atoms_b(), g.width_b,
                                       params.u0_eff(), params.u1_eff(), lambda);
    return (e.kinetic_trap + 2.0 * e.self + 2.0 * e.cross + e.coupling) / params.n_atoms;
}

RadialProfile sample_gaussian(const GaussianPair& g, const RadialGrid& grid) {
    RadialProfile p;
    p.grid = grid;
    p.alpha.resize(grid.n);
    p.beta.resize(grid.n);
    const double sa = std::sqrt(g.amp_a), sb = std::sqrt(g.amp_b);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.r(i);
        p.alpha[i] = sa * std::exp(-r * r / (4.0 * g.width_a * g.width_a));
        p.beta[i] = sb * std::exp(-r * r / (4.0 * g.width_b * g.width_b));
    }
    return p;
}

GaussianMinimum minimize_gaussian(const ModelParams& params, double lambda, int restarts) {
    params.validate();
    if (restarts < 2)
        throw std::invalid_argument("minimize_gaussian: restarts >= 2 (symmetric + asymmetric)");
    const double nd = params.n_atoms;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();

    // x = (ln a, ln b, logit f) with n_a = f N
    auto energy_of = [&](const std::vector<double>& x) {
        const double a = std::exp(x[0]), b = std::exp(x[1]);
        const double f = 1.0 / (1.0 + std::exp(-x[2]));
        return split_energy(f * nd, a, (1.0 - f) * nd, b, u0, u1, lambda).total();
    };

    // width scale: noninteracting 1/sqrt(2), inflated by the interaction
    const double chi = std::max(nd * (u0 + u1), 0.0);
    const double a_guess = std::max(1.0 / std::sqrt(2.0), 0.3 * std::pow(chi + 1.0, 0.2));

    std::vector<std::vector<double>> seeds;
    seeds.push_back({std::log(a_guess), std::log(a_guess), 0.0});                    // symmetric
    seeds.push_back({std::log(a_guess * 1.1), std::log(a_guess * 0.7), 2.0});       // asymmetric
    for (int k = 2; k < restarts; ++k)
        seeds.push_back({std::log(a_guess * (1.0 + 0.2 * k)), std::log(a_guess / (1.0 + 0.15 * k)),
                         1.0 + 0.5 * k});

    SimplexOptions opts;
    int evals = 0;
    SimplexResult best;
    SimplexResult best_symmetric;
    bool have_best = false;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        SimplexResult r = nelder_mead(energy_of, seeds[s], opts);
        evals += r.evaluations;
        if (!r.converged) {
            std::ostringstream os;
            os << "minimize_gaussian: optimizer stalled after " << r.evaluations
               << " evaluations; best energy " << r.value;
            throw SolverError(os.str());
        }
        if (s == 0) best_symmetric = r;
        if (!have_best || r.value < best.value) {
            best = r;
            have_best = true;
        }
    }

    auto pair_of = [&](const std::vector<double>& x) {
        const double a = std::exp(x[0]), b = std::exp(x[1]);
        const double f = 1.0 / (1.0 + std::exp(-x[2]));
        return gaussian_pair_from_atoms(f * nd, a, (1.0 - f) * nd, b);
    };

    GaussianMinimum out;
    out.pair = pair_of(best.x);
    out.energy = best.value;
    out.evaluations = evals;
    if (best_symmetric.value - best.value > 1e-9) {
        GaussianPair mirror;
        mirror.amp_a = out.pair.amp_b;
        mirror.width_a = out.pair.width_b;
        mirror.amp_b = out.pair.amp_a;
        mirror.width_b = out.pair.width_a;
        out.degenerate_partner = mirror;
    }
    return out;
}

}  // namespace catspec
