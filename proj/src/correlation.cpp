// correlation.cpp — regression-theorem correlations and their transform

#include "flr4/correlation.hpp"

#include "flr4/error.hpp"
#include "flr4/parallel.hpp"
#include "flr4/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace flr4 {

namespace {

// Flip operator A_{ab} whose expectation is stored at component k (0-based).
struct FlipOperator {
    int a;
    int b;
};

FlipOperator flip_for_component(int k)
{
    if (k < kCoherenceCount) {
        const auto slot = kCoherenceSlots[static_cast<std::size_t>(k)];
        // ⟨A_ab⟩ = ρ_ba, so ρ_rc is the expectation of A_cr.
        return {slot.col, slot.row};
    }
    if (k < 9) return {k - 4, k - 4};
    const auto slot = kCoherenceSlots[static_cast<std::size_t>(k - 9)];
    return {slot.row, slot.col};
}

void check_transition(int i)
{
    if (i < 1 || i > 3) {
        throw Error(ErrorCode::InvalidParameter, "transition index must be 1, 2 or 3");
    }
}

// n RK4 steps of length h folded into a single affine map.
AffineStep compose_steps(const AffineStep& one, long long n)
{
    AffineStep total{Mat15::Identity(), Vec15::Zero()};
    for (long long s = 0; s < n; ++s) {
        total.offset = one.propagator * total.offset + one.offset;
        total.propagator = one.propagator * total.propagator;
    }
    return total;
}

} // namespace

std::string_view to_string(CorrelationMode m) noexcept
{
    return m == CorrelationMode::Full ? "full" : "truncated";
}

Vec15 correlation_initial(const StateVector& steady, int transition, CorrelationMode mode)
{
    check_transition(transition);
    Vec15 u = Vec15::Zero();
    if (mode == CorrelationMode::Truncated) {
        u(transition - 1) = steady.psi()(transition + 5);
        return u;
    }
    // A_ab A_{i,i+1} = δ_{b,i} A_{a,i+1}, and ⟨A_{a,i+1}⟩ = ρ_{i+1,a}.
    for (int k = 0; k < kStateDim; ++k) {
        const auto op = flip_for_component(k);
        if (op.b == transition) u(k) = steady.rho(transition + 1, op.a);
    }
    return u;
}

CorrelationSeries correlation(const SystemParams& p, int transition,
                              const std::vector<double>& tau, CorrelationMode mode)
{
    check_transition(transition);
    if (tau.empty() || tau.front() != 0.0) {
        throw Error(ErrorCode::InvalidGrid, "correlation: tau grid must start at 0");
    }
    for (std::size_t k = 1; k < tau.size(); ++k) {
        if (!(tau[k] > tau[k - 1]) || !std::isfinite(tau[k])) {
            throw Error(ErrorCode::InvalidGrid, "correlation: tau grid must increase strictly");
        }
    }

    const Liouvillian l = build_liouvillian(p);
    const StateVector steady = steady_state(l);
    const cd lowering = std::conj(steady.psi()(transition - 1));
    const Vec15 drive = l.c * lowering;
    const auto idx = static_cast<std::size_t>(transition - 1);

    CorrelationSeries series;
    series.tau = tau;
    series.transition = transition;
    series.mode = mode;
    series.asymptote = steady.psi()(transition - 1) * lowering;
    series.dipole_sq = p.mu[idx] * p.mu[idx];
    series.g.reserve(tau.size());

    Vec15 u = correlation_initial(steady, transition, mode);
    series.g.push_back(u(transition - 1));

    double cached_interval = -1.0;
    AffineStep interval_step;
    for (std::size_t k = 1; k < tau.size(); ++k) {
        const double interval = tau[k] - tau[k - 1];
        if (interval != cached_interval) {
            const auto n = static_cast<long long>(std::ceil(interval / kCorrelationMaxStep - 1e-9));
            const auto sub = std::max<long long>(n, 1);
            interval_step = compose_steps(
                rk4_affine_step(l.m, drive, interval / static_cast<double>(sub)), sub);
            cached_interval = interval;
        }
        u = interval_step.propagator * u + interval_step.offset;
        if (!u.allFinite() || u.cwiseAbs().maxCoeff() > kDivergenceBound) {
            std::ostringstream msg;
            msg << "correlation diverged at tau = " << tau[k];
            throw Error(ErrorCode::StepSizeTooLarge, msg.str());
        }
        series.g.push_back(u(transition - 1));
    }
    return series;
}

double max_quadrature_step(const std::vector<double>& nu)
{
    double nu_max = 0.0;
    for (double v : nu) nu_max = std::max(nu_max, std::abs(v));
    if (nu_max == 0.0) return 1e-2;
    return std::min(1e-2, std::numbers::pi / (10.0 * nu_max));
}

std::vector<double> default_tau_grid(const std::vector<double>& nu, double tau_max)
{
    if (!(tau_max > 0.0)) throw Error(ErrorCode::InvalidGrid, "tau_max must be positive");
    const double h = max_quadrature_step(nu);
    const auto intervals = static_cast<std::size_t>(std::ceil(tau_max / h - 1e-9));
    std::vector<double> tau(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
        tau[k] = tau_max * static_cast<double>(k) / static_cast<double>(intervals);
    }
    return tau;
}

TransitionSpectrum transform_spectrum(const CorrelationSeries& series,
                                      const std::vector<double>& nu)
{
    const auto& tau = series.tau;
    if (tau.size() < 2 || series.g.size() != tau.size()) {
        throw Error(ErrorCode::InvalidGrid, "transform_spectrum: correlation series is too short");
    }
    const double residual = std::abs(series.g.back() - series.asymptote);
    if (residual > kAsymptoteTolerance) {
        std::ostringstream msg;
        msg << "correlation has not decayed by tau = " << tau.back()
            << " (|g - g_inf| = " << residual << ")";
        throw Error(ErrorCode::HorizonTooShort, msg.str());
    }
    const double step_limit = max_quadrature_step(nu) * (1.0 + 1e-9);
    for (std::size_t k = 1; k < tau.size(); ++k) {
        if (tau[k] - tau[k - 1] > step_limit) {
            std::ostringstream msg;
            msg << "tau spacing " << tau[k] - tau[k - 1] << " exceeds the quadrature limit "
                << max_quadrature_step(nu);
            throw Error(ErrorCode::InvalidGrid, msg.str());
        }
    }

    std::vector<cd> fluct(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k) fluct[k] = series.g[k] - series.asymptote;

    TransitionSpectrum out;
    out.nu = nu;
    out.transition = series.transition;
    out.s.assign(nu.size(), 0.0);
    parallel_for(nu.size(), [&](std::size_t j) {
        const double v = nu[j];
        cd acc{0.0, 0.0};
        cd prev = fluct[0]; // e^{−iν·0} = 1
        for (std::size_t k = 1; k < tau.size(); ++k) {
            const cd cur = std::polar(1.0, -v * tau[k]) * fluct[k];
            acc += 0.5 * (tau[k] - tau[k - 1]) * (prev + cur);
            prev = cur;
        }
        out.s[j] = series.dipole_sq * acc.real();
    });
    return out;
}

SpectrumSeries spectrum_timedomain(const SystemParams& p, const std::vector<double>& nu,
                                   CorrelationMode mode, double tau_max)
{
    const auto tau = default_tau_grid(nu, tau_max);
    SpectrumSeries series;
    series.nu = nu;
    series.method = SpectrumMethod::TimeDomain;
    series.coherent_weight = coherent_weights(steady_state(build_liouvillian(p)), p.mu);
    for (int i = 1; i <= 3; ++i) {
        const auto corr = correlation(p, i, tau, mode);
        series.s[static_cast<std::size_t>(i - 1)] = transform_spectrum(corr, nu).s;
    }
    return series;
}

} // namespace flr4
