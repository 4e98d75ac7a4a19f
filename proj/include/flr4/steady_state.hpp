// steady_state.hpp — fixed point of dψ/dt = Mψ + C, a fixed-step RK4
// integrator used as an independent check, and the spectrum of M.

#pragma once

#include "flr4/model.hpp"

#include <string>
#include <vector>

namespace flr4 {

inline constexpr double kDefaultTimeStep = 1e-3;
inline constexpr int kDefaultSampleStride = 100;
// Any component above this magnitude means the explicit scheme diverged.
inline constexpr double kDivergenceBound = 10.0;

// ψ(∞) = −M⁻¹C by pivoted LU. The result is projected onto the
// conjugation-symmetric subspace (ψ ← (ψ + J·conj ψ)/2).
// Throws Error{SingularLiouvillian} when M is numerically rank deficient.
StateVector steady_state(const Liouvillian& l);

// ‖Mψ + C‖∞
double steady_residual(const Liouvillian& l, const StateVector& psi);

struct IntegrateOptions {
    double dt = kDefaultTimeStep;
    int sample_stride = kDefaultSampleStride; // keep every k-th step
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;

    const StateVector& final_state() const { return states.back(); }
};

// Classical RK4 from psi0 to t_end. The step is shrunk to t_end/ceil(t_end/dt)
// so the last sample lands exactly on t_end; t = 0 and t_end are always kept.
// Throws Error{InvalidGrid} for dt ≤ 0 or t_end < 0 and
// Error{StepSizeTooLarge} on divergence.
Trajectory integrate(const Liouvillian& l, const StateVector& psi0, double t_end,
                     IntegrateOptions options = {});

// One RK4 step of the affine system, written as ψ ← Pψ + q. For a constant
// generator this is exactly the four-stage update.
struct AffineStep {
    Mat15 propagator;
    Vec15 offset;
};
AffineStep rk4_affine_step(const Mat15& m, const Vec15& c, double h);

// Eigenvalues of M, sorted by descending real part (then descending
// imaginary part).
std::vector<cd> stability_eigs(const Liouvillian& l);

// Which sign of C yields physical steady populations at the figure-2(a)
// point. Reported in every output manifest.
struct CSignResolution {
    int sign = +1;                 // C1 = sign · iΩ1
    bool derived_sign_physical = false;
    bool flipped_sign_physical = false;
    std::string label;             // "C1=+i*Omega1"
};
CSignResolution resolve_c_sign();

} // namespace flr4
