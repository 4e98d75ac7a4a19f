// correlation.hpp — time-domain two-time correlations via the quantum
// regression theorem, and their numerical transform to a spectrum.
//
// For line i (lower level i, upper level i+1) the correlation
//   g_i(τ) = lim_t ⟨A_{i+1,i}(t+τ) A_{i,i+1}(t)⟩
// is component i of u(τ), where du/dτ = M·u + C·conj(ψ_i(∞)) and
// u_k(0) = ⟨B_k A_{i,i+1}⟩ with B_k the flip operator whose expectation is ψ_k.
// This path never touches the resolvent and serves as an independent check
// on the frequency-domain spectra.

#pragma once

#include "flr4/model.hpp"
#include "flr4/spectrum.hpp"

#include <string_view>
#include <vector>

namespace flr4 {

enum class CorrelationMode {
    // u(0) = e_i·ψ_{i+6}(∞): only the term that survives the
    // rotating-wave truncation of cross terms.
    Truncated,
    // u(0) from the complete flip-operator product rule.
    Full,
};

std::string_view to_string(CorrelationMode m) noexcept;

inline constexpr double kDefaultTauMax = 50.0;
inline constexpr double kAsymptoteTolerance = 1e-6;
inline constexpr double kCorrelationMaxStep = 1e-3;

struct CorrelationSeries {
    std::vector<double> tau;
    std::vector<cd> g;
    cd asymptote{0.0, 0.0}; // |ψ_i(∞)|²
    int transition = 1;     // 1..3
    CorrelationMode mode = CorrelationMode::Truncated;
    double dipole_sq = 1.0; // μ_i²
};

// Expectation ⟨B_k A_{i,i+1}⟩ for every k; i is 1-based.
Vec15 correlation_initial(const StateVector& steady, int transition, CorrelationMode mode);

// tau must start at 0 and increase strictly. RK4 sub-steps are no longer
// than kCorrelationMaxStep. Throws Error{StepSizeTooLarge} on divergence.
CorrelationSeries correlation(const SystemParams& p, int transition,
                              const std::vector<double>& tau, CorrelationMode mode);

// min(1e-2, π/(10·max|ν|))
double max_quadrature_step(const std::vector<double>& nu);

// Uniform grid on [0, tau_max] whose spacing is the largest allowed by
// max_quadrature_step(nu).
std::vector<double> default_tau_grid(const std::vector<double>& nu,
                                     double tau_max = kDefaultTauMax);

struct TransitionSpectrum {
    std::vector<double> nu;
    std::vector<double> s;
    int transition = 1;
};

// S(ν) = μ²·Re ∫₀^τmax e^{−iντ}(g(τ) − g∞) dτ by the trapezoidal rule.
// Throws Error{HorizonTooShort} when |g(τmax) − g∞| > kAsymptoteTolerance and
// Error{InvalidGrid} when the τ spacing exceeds max_quadrature_step(nu).
TransitionSpectrum transform_spectrum(const CorrelationSeries& series,
                                      const std::vector<double>& nu);

// All three lines through the time-domain path.
SpectrumSeries spectrum_timedomain(const SystemParams& p, const std::vector<double>& nu,
                                   CorrelationMode mode = CorrelationMode::Truncated,
                                   double tau_max = kDefaultTauMax);

} // namespace flr4
