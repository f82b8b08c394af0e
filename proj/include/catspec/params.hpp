// params.hpp — model parameters, unit conventions and the Lambda control parameter
//
// All quantities are dimensionless, in trap units: energies in units of the trap
// quantum, lengths in units of the oscillator length. Two conventions for the
// control parameter Lambda coexist and differ by a factor N:
//   two_mode: Lambda = 2*lambda / [N*(U1-U0)]
//   field:    Lambda = 2*lambda / (U1-U0)
// They are kept as an explicit enum; nothing is silently unified.
#pragma once

#include <string>

namespace catspec {

enum class LambdaConvention { TwoMode, Field };

std::string to_string(LambdaConvention c);
LambdaConvention lambda_convention_from_string(const std::string& s);

// Physical knobs of the two-component model. Immutable value type; copy freely.
//
// `tilde_rescale` controls whether the interaction couplings are multiplied by
// (N-1)/N everywhere they enter energies (the mean-field redefinition). Exact
// diagonalization conventionally runs with the bare couplings (flag off), the
// mean-field modules with the flag on; both options are exposed so the
// O(1/N) mean-field-vs-exact comparison can be made either way.
struct ModelParams {
    int n_atoms = 1;
    double u0 = 0.0;          // same-species interaction
    double u1 = 0.0;          // cross-species interaction
    double lambda = 0.0;      // Raman coupling, >= 0
    bool tilde_rescale = false;

    void validate() const;    // throws ConfigError on a bad parameter set

    double tilde_factor() const { return tilde_rescale ? double(n_atoms - 1) / n_atoms : 1.0; }
    double u0_eff() const { return u0 * tilde_factor(); }
    double u1_eff() const { return u1 * tilde_factor(); }

    // Control parameter in the requested convention; throws
    // DegenerateInteractionError when U1 == U0 (effective couplings).
    double Lambda(LambdaConvention c) const;

    ModelParams with_lambda(double new_lambda) const {
        ModelParams p = *this;
        p.lambda = new_lambda;
        return p;
    }
};

// Inverse of ModelParams::Lambda: the Raman coupling realizing a given Lambda.
// Requires U1 > U0 and Lambda >= 0.
double lambda_from_Lambda(const ModelParams& p, double Lambda, LambdaConvention c);

}  // namespace catspec
