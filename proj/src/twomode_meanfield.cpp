#include "catspec/twomode_meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "catspec/errors.hpp"

namespace catspec {

double mean_field_energy(const ModelParams& params, double alpha, double beta) {
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    const double a2 = alpha * alpha, b2 = beta * beta;
    return 0.5 * u0 * (a2 * a2 + b2 * b2) + u1 * a2 * b2 - 2.0 * params.lambda * alpha * beta;
}

std::vector<MeanFieldBranch> mean_field_branches(const ModelParams& params) {
    params.validate();
    if (params.lambda == 0.0)
        throw LambdaZeroError("mean_field_branches: lambda == 0 leaves amplitude phases free");
    const double nd = params.n_atoms;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();

    std::vector<MeanFieldBranch> out;
    const double s = std::sqrt(nd / 2.0);
    MeanFieldBranch sym;
    sym.alpha = sym.beta = s;
    sym.label = BranchLabel::Symmetric;
    sym.energy = 0.25 * nd * nd * (u0 + u1) - params.lambda * nd;
    out.push_back(sym);

    if (u1 > u0) {
        const double Lambda = params.Lambda(LambdaConvention::TwoMode);
        if (std::abs(Lambda) < 1.0) {
            const double root = std::sqrt(1.0 - Lambda * Lambda);
            const double e_pm = 0.5 * u0 * nd * nd - params.lambda * params.lambda / (u1 - u0);
            MeanFieldBranch plus, minus;
            plus.alpha = std::sqrt(0.5 * nd * (1.0 + root));
            plus.beta = std::sqrt(0.5 * nd * (1.0 - root));
            plus.energy = e_pm;
            plus.label = BranchLabel::Plus;
            minus.alpha = plus.beta;
            minus.beta = plus.alpha;
            minus.energy = e_pm;
            minus.label = BranchLabel::Minus;
            out.push_back(plus);
            out.push_back(minus);
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const MeanFieldBranch& a, const MeanFieldBranch& b) {
                         return a.energy < b.energy;
                     });
    return out;
}

OverlapResult cat_overlap(const ModelParams& params) {
    params.validate();
    if (params.u1_eff() <= params.u0_eff())
        throw std::domain_error("cat_overlap: requires U1 > U0");
    const double Lambda = params.Lambda(LambdaConvention::TwoMode);
    if (Lambda <= 0.0 || Lambda >= 1.0)
        throw std::domain_error("cat_overlap: requires 0 < Lambda < 1");
    OverlapResult r;
    r.log_eps = params.n_atoms * std::log(Lambda);
    if (r.log_eps < -745.0) {
        r.eps = 0.0;
        r.underflow = true;
    } else {
        r.eps = std::exp(r.log_eps);
    }
    return r;
}

CatDiagnostics cat_energies(const ModelParams& params) {
    const OverlapResult ov = cat_overlap(params);
    const double nd = params.n_atoms;
    const double u0 = params.u0_eff(), u1 = params.u1_eff();
    const double Lambda = params.Lambda(LambdaConvention::TwoMode);
    const double eps = ov.eps;

    CatDiagnostics out;
    out.overlap_eps = eps;
    out.eps_underflow = ov.underflow;
    out.cat_size = ov.underflow ? std::numeric_limits<double>::infinity() : 1.0 / eps;

    const double quarter = 0.25 * nd * nd;
    const double p = 2.0 * u0 - Lambda * Lambda * (u1 - u0);  // eps-independent part
    const double q = 3.0 * u0 - u1;                           // cross-term coefficient
    out.e_plus = quarter * (p + eps * q) / (1.0 + eps);
    out.e_minus = quarter * (p - eps * q) / (1.0 - eps);
    if (eps < 1e-15) {
        // direct subtraction cancels; first order in eps:
        // E- - E+ = (N^2/2) eps (U1-U0)(1-Lambda^2)
        out.delta_e = 0.5 * nd * nd * eps * (u1 - u0) * (1.0 - Lambda * Lambda);
    } else {
        out.delta_e = out.e_minus - out.e_plus;
    }
    out.delta_e_microscopic = 0.5 * nd * (u1 - u0);
    out.delta_e_asymptotic = ov.underflow ? 0.0 : eps * std::abs(ov.log_eps) * nd * (u1 - u0);
    return out;
}

}  // namespace catspec
