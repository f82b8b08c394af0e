#include "catspec/thomas_fermi.hpp"

#include <cmath>
#include <sstream>

#include "catspec/errors.hpp"

namespace catspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct TFCase {
    bool asymmetric = false;
    double Lambda = 0.0;  // field convention, 0 when U1 <= U0
};

TFCase classify(const ModelParams& params, double lambda) {
    TFCase c;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    if (u1 > u0) {
        c.Lambda = 2.0 * lambda / (u1 - u0);
        c.asymmetric = c.Lambda < tf_lambda0(params);
    }
    return c;
}

}  // namespace

double tf_radius_symmetric(const ModelParams& params) {
    const double usum = params.u0_eff() + params.u1_eff();
    if (!(usum > 0.0)) throw std::domain_error("tf_radius_symmetric: requires U0 + U1 > 0");
    return std::pow(15.0 * params.n_atoms * usum / (8.0 * kPi), 0.2);
}

double tf_lambda0(const ModelParams& params) {
    const double usum = params.u0_eff() + params.u1_eff();
    if (!(usum > 0.0)) throw std::domain_error("tf_lambda0: requires U0 + U1 > 0");
    return std::pow(15.0 * params.n_atoms / (8.0 * kPi), 0.4) * std::pow(usum, -0.6);
}

double tf_norm_integral(const ModelParams& params, double lambda, double mu) {
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    const TFCase c = classify(params, lambda);
    const double shell_top = 2.0 * (mu + lambda);
    if (shell_top <= 0.0) return 0.0;
    const double r2 = std::sqrt(shell_top);
    double r1 = 0.0;
    if (c.asymmetric) {
        const double core_top = 2.0 * (mu - c.Lambda * u0);
        if (core_top > 0.0) r1 = std::sqrt(core_top);
    }
    auto p3 = [](double r) { return r * r * r / 3.0; };
    auto p5 = [](double r) { return std::pow(r, 5) / 10.0; };
    double total = 0.0;
    if (r1 > 0.0) {
        // core: alpha^2 + beta^2 = rho_mu = (mu - r^2/2)/U0
        total += (mu * p3(r1) - p5(r1)) / u0;
    }
    // shell (or the whole support in the symmetric case):
    // alpha^2 + beta^2 = 2 (mu + lambda - r^2/2) / (U0 + U1)
    total += 2.0 / (u0 + u1) * ((mu + lambda) * (p3(r2) - p3(r1)) - (p5(r2) - p5(r1)));
    return 4.0 * kPi * total;
}

std::vector<TFSolution> solve_thomas_fermi(const ModelParams& params, double lambda,
                                           const RadialGrid* grid) {
    params.validate();
    if (lambda < 0.0) throw std::domain_error("solve_thomas_fermi: lambda must be >= 0");
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    if (!(u0 + u1 > 0.0)) throw std::domain_error("solve_thomas_fermi: requires U0 + U1 > 0");
    const double nd = params.n_atoms;
    const TFCase c = classify(params, lambda);

    double mu;
    if (!c.asymmetric) {
        const double r0 = tf_radius_symmetric(params);
        mu = 0.5 * r0 * r0 - lambda;
    } else {
        // bracket scanned geometrically from mu = Lambda U0 upward
        double lo = c.Lambda * u0;
        double width = std::max(0.5 * tf_radius_symmetric(params) * tf_radius_symmetric(params),
                                std::abs(lo) + 1.0);
        double hi = lo + width;
        int expansions = 0;
        while (tf_norm_integral(params, lambda, hi) < nd) {
            width *= 2.0;
            hi = lo + width;
            if (++expansions > 200) {
                std::ostringstream os;
                os << "solve_thomas_fermi: no bracket for mu in [" << lo << ", " << hi << "]";
                throw SolverError(os.str());
            }
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (tf_norm_integral(params, lambda, mid) < nd) ? lo = mid : hi = mid;
        }
        mu = 0.5 * (lo + hi);
        const double resid = std::abs(tf_norm_integral(params, lambda, mu) - nd);
        if (resid > 1e-8 * nd) {
            std::ostringstream os;
            os << "solve_thomas_fermi: normalization residual " << resid
               << " after bisection on [" << lo << ", " << hi << "]";
            throw SolverError(os.str());
        }
    }

    const double r2 = std::sqrt(std::max(2.0 * (mu + lambda), 0.0));
    double r1 = 0.0;
    if (c.asymmetric) r1 = std::sqrt(std::max(2.0 * (mu - c.Lambda * u0), 0.0));

    RadialGrid g = grid ? *grid : default_grid(r2);
    auto sample = [&](bool plus_branch) {
        RadialProfile p;
        p.grid = g;
        p.alpha.assign(g.n, 0.0);
        p.beta.assign(g.n, 0.0);
        for (int i = 0; i < g.n; ++i) {
            const double r = g.r(i);
            if (r > r2) break;
            if (r <= r1) {
                const double rho = (mu - 0.5 * r * r) / u0;
                const double disc = std::sqrt(std::max(rho * rho - c.Lambda * c.Lambda, 0.0));
                const double hi2 = 0.5 * (rho + disc), lo2 = 0.5 * (rho - disc);
                p.alpha[i] = std::sqrt(std::max(plus_branch ? hi2 : lo2, 0.0));
                p.beta[i] = std::sqrt(std::max(plus_branch ? lo2 : hi2, 0.0));
            } else {
                const double common = (mu + lambda - 0.5 * r * r) / (u0 + u1);
                p.alpha[i] = p.beta[i] = std::sqrt(std::max(common, 0.0));
            }
        }
        return p;
    };

    std::vector<TFSolution> out;
    if (!c.asymmetric) {
        TFSolution s;
        s.mu = mu;
        s.branch = BranchLabel::Symmetric;
        s.r1 = 0.0;
        s.r2 = r2;
        s.profile = sample(true);
        out.push_back(std::move(s));
    } else {
        TFSolution plus;
        plus.mu = mu;
        plus.branch = BranchLabel::Plus;
        plus.r1 = r1;
        plus.r2 = r2;
        plus.profile = sample(true);
        TFSolution minus = plus;
        minus.branch = BranchLabel::Minus;
        minus.profile = plus.profile.mirrored();
        out.push_back(std::move(plus));
        out.push_back(std::move(minus));
    }
    return out;
}

}  // namespace catspec
