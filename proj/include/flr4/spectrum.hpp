// spectrum.hpp — incoherent fluorescence spectra of the three ladder lines
// from the resolvent R(z) = (z − M)⁻¹, evaluated at z = iν with ν measured
// from each line's own center.
//
// Two variants are provided:
//   eq10            S_i = Re μ_i²[ R_ii ψ_{i+6} + (1/z)(M⁻¹ R C)_i conj ψ_i ]
//   qrt-consistent  S_i = Re μ_i²[ R_ii ψ_{i+6} − (R ψ(∞))_i conj ψ_i ]
// The second is the exact Laplace transform of the regression-theorem
// correlation with the coherent (elastic) part removed. The first carries an
// extra 1/z in its second term and is singular at ν = 0.

#pragma once

#include "flr4/grid.hpp"
#include "flr4/model.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace flr4 {

enum class SpectrumMethod { Eq10, QrtConsistent, TimeDomain };

std::string_view to_string(SpectrumMethod m) noexcept;

// Frequencies closer than this to a line center are rejected by eq10.
inline constexpr double kPoleGuard = 1e-6;
// z closer than this to an eigenvalue of M is treated as a pole.
inline constexpr double kResolventPoleDistance = 1e-12;

struct SpectrumSeries {
    std::vector<double> nu;
    // Transitions 2→1, 3→2, 4→3.
    std::array<std::vector<double>, 3> s;
    std::array<double, 3> coherent_weight{0.0, 0.0, 0.0};
    SpectrumMethod method = SpectrumMethod::QrtConsistent;
};

// Solves (z·I − M)x = rhs. Throws Error{ResolventSingular} when z is within
// kResolventPoleDistance of an eigenvalue of M.
Vec15 resolvent_apply(const Liouvillian& l, cd z, const Vec15& rhs);

// Throws Error{PoleGuard} if any |ν| < kPoleGuard.
SpectrumSeries spectrum_eq10(const SystemParams& p, const std::vector<double>& nu);
SpectrumSeries spectrum_consistent(const SystemParams& p, const std::vector<double>& nu);

// μ_i²·|ψ_i(∞)|², the weights of the elastic delta peaks.
std::array<double, 3> coherent_weights(const StateVector& psi_inf, const std::array<double, 3>& mu);

// Frequency grid used when none is given: ν ∈ [−25, 25] with 2001 points, or
// ν ∈ [−120, 120] with 4801 points when any Rabi frequency exceeds 10. The
// center point is excluded by the pole guard.
GridSpec default_nu_grid(const SystemParams& p);

} // namespace flr4
