#include "catspec/params.hpp"

#include <cmath>
#include <sstream>

#include "catspec/errors.hpp"

namespace catspec {

std::string to_string(LambdaConvention c) {
    return c == LambdaConvention::TwoMode ? "two_mode" : "field";
}

LambdaConvention lambda_convention_from_string(const std::string& s) {
    if (s == "two_mode" || s == "twomode") return LambdaConvention::TwoMode;
    if (s == "field") return LambdaConvention::Field;
    throw ConfigError("unknown Lambda_convention '" + s + "' (expected two_mode or field)");
}

void ModelParams::validate() const {
    if (n_atoms < 1) throw ConfigError("n_atoms must be >= 1");
    if (lambda < 0.0) throw ConfigError("lambda must be >= 0");
    if (!std::isfinite(u0) || !std::isfinite(u1) || !std::isfinite(lambda))
        throw ConfigError("model parameters must be finite");
}

double ModelParams::Lambda(LambdaConvention c) const {
    const double du = u1_eff() - u0_eff();
    if (du == 0.0) {
        std::ostringstream os;
        os << "Lambda undefined: effective U1 == U0 (" << u1_eff() << ")";
        throw DegenerateInteractionError(os.str());
    }
    const double denom = (c == LambdaConvention::TwoMode) ? n_atoms * du : du;
    return 2.0 * lambda / denom;
}

double lambda_from_Lambda(const ModelParams& p, double Lambda, LambdaConvention c) {
    const double du = p.u1_eff() - p.u0_eff();
    if (du == 0.0)
        throw DegenerateInteractionError("lambda_from_Lambda: effective U1 == U0");
    if (du < 0.0)
        throw std::domain_error("lambda_from_Lambda: requires U1 > U0");
    if (Lambda < 0.0)
        throw std::domain_error("lambda_from_Lambda: Lambda must be >= 0");
    const double factor = (c == LambdaConvention::TwoMode) ? p.n_atoms * du : du;
    return Lambda * factor / 2.0;
}

}  // namespace catspec
