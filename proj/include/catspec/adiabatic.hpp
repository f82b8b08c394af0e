// adiabatic.hpp — preparation protocol: start in the ground state above the
// transition, ramp the coupling down, track fidelity with the instantaneous
// ground state and its quasi-degenerate partner.
#pragma once

#include <complex>
#include <vector>

#include "catspec/params.hpp"

namespace catspec {

enum class RampShape { Linear, Smoothstep };

RampShape ramp_shape_from_string(const std::string& s);

struct RampSchedule {
    double Lambda_start = 1.5;
    double Lambda_end = 0.7;
    double duration = 100.0;   // trap periods
    RampShape shape = RampShape::Linear;

    void validate() const;     // Lambda_start >= Lambda_end > 0, duration > 0
    double Lambda_at(double t) const;
};

struct EvolveRow {
    double t = 0.0;
    double Lambda = 0.0;
    double fid_ground = 0.0;   // |<phi0(t)|psi(t)>|^2
    double fid_pair = 0.0;     // adds the quasi-degenerate partner
    double norm = 0.0;
};

struct EvolveResult {
    std::vector<EvolveRow> rows;
    std::vector<std::complex<double>> psi_final;
    double max_norm_drift = 0.0;
    long steps = 0;
};

// Integrates i dpsi/dt = H(lambda(t)) psi with the norm-preserving implicit
// midpoint rule, starting from the ground state at Lambda_start. dt must
// resolve the spectral span at the start: dt <= 0.05 / (E_N - E_0). A step
// whose norm drift exceeds 1e-12 is rejected and re-taken in halves.
// Fidelities are evaluated at ~max_rows sample times (always including the
// endpoint).
EvolveResult evolve(const ModelParams& params, const RampSchedule& ramp, double dt,
                    int max_rows = 401);

}  // namespace catspec
