// spectrum.cpp — resolvent-based spectra

#include "flr4/spectrum.hpp"

#include "flr4/error.hpp"
#include "flr4/parallel.hpp"
#include "flr4/steady_state.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace flr4 {

namespace {

using Rhs = Eigen::Matrix<cd, kStateDim, 4>;

double pole_distance(const std::vector<cd>& eigs, cd z)
{
    double d = std::numeric_limits<double>::infinity();
    for (cd lambda : eigs) d = std::min(d, std::abs(z - lambda));
    return d;
}

[[noreturn]] void throw_pole(cd z, double distance)
{
    std::ostringstream msg;
    msg.precision(17);
    msg << "z = " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
        << "i lies within " << distance << " of an eigenvalue of M";
    throw Error(ErrorCode::ResolventSingular, msg.str());
}

// Everything that does not depend on ν, shared read-only by all frequencies.
struct SpectrumContext {
    SystemParams params;
    Liouvillian liouvillian;
    StateVector steady;
    std::vector<cd> eigs;
    Eigen::PartialPivLU<Mat15> m_lu;
    std::array<double, 3> mu_sq{};

    explicit SpectrumContext(const SystemParams& p)
        : params(validate_params(p).params()),
          liouvillian(build_liouvillian(p)),
          steady(steady_state(liouvillian)),
          eigs(stability_eigs(liouvillian)),
          m_lu(liouvillian.m)
    {
        for (std::size_t i = 0; i < 3; ++i) mu_sq[i] = params.mu[i] * params.mu[i];
    }

    // Columns e1, e2, e3, and `last` pushed through R(z).
    Rhs resolve(cd z, const Vec15& last) const
    {
        const double d = pole_distance(eigs, z);
        if (d <= kResolventPoleDistance) throw_pole(z, d);
        Rhs rhs = Rhs::Zero();
        rhs(0, 0) = 1.0;
        rhs(1, 1) = 1.0;
        rhs(2, 2) = 1.0;
        rhs.col(3) = last;
        const Mat15 shifted = z * Mat15::Identity() - liouvillian.m;
        return Eigen::PartialPivLU<Mat15>(shifted).solve(rhs);
    }

    std::array<double, 3> eq10_at(double nu) const
    {
        const cd z{0.0, nu};
        const Rhs x = resolve(z, liouvillian.c);
        const Vec15 n_c = m_lu.solve(Vec15(x.col(3))); // M⁻¹ R(z) C
        std::array<double, 3> out{};
        for (int i = 0; i < 3; ++i) {
            const cd psi_i = steady.psi()(i);
            const cd term = x(i, i) * steady.psi()(i + 6) + (1.0 / z) * n_c(i) * std::conj(psi_i);
            out[static_cast<std::size_t>(i)] = mu_sq[static_cast<std::size_t>(i)] * term.real();
        }
        return out;
    }

    std::array<double, 3> consistent_at(double nu) const
    {
        const cd z{0.0, nu};
        const Rhs x = resolve(z, steady.psi());
        std::array<double, 3> out{};
        for (int i = 0; i < 3; ++i) {
            const cd psi_i = steady.psi()(i);
            const cd term = x(i, i) * steady.psi()(i + 6) - x(i, 3) * std::conj(psi_i);
            out[static_cast<std::size_t>(i)] = mu_sq[static_cast<std::size_t>(i)] * term.real();
        }
        return out;
    }
};

template <class PointFn>
SpectrumSeries evaluate(const SpectrumContext& ctx, const std::vector<double>& nu,
                        SpectrumMethod method, PointFn&& at)
{
    SpectrumSeries series;
    series.nu = nu;
    series.method = method;
    series.coherent_weight = coherent_weights(ctx.steady, ctx.params.mu);
    for (auto& s : series.s) s.assign(nu.size(), 0.0);
    parallel_for(nu.size(), [&](std::size_t k) {
        const auto v = at(nu[k]);
        for (std::size_t i = 0; i < 3; ++i) series.s[i][k] = v[i];
    });
    return series;
}

} // namespace

std::string_view to_string(SpectrumMethod m) noexcept
{
    switch (m) {
    case SpectrumMethod::Eq10: return "eq10";
    case SpectrumMethod::QrtConsistent: return "qrt-consistent";
    case SpectrumMethod::TimeDomain: return "timedomain";
    }
    return "unknown";
}

Vec15 resolvent_apply(const Liouvillian& l, cd z, const Vec15& rhs)
{
    const auto eigs = stability_eigs(l);
    const double d = pole_distance(eigs, z);
    if (d <= kResolventPoleDistance) throw_pole(z, d);
    const Mat15 shifted = z * Mat15::Identity() - l.m;
    return Eigen::PartialPivLU<Mat15>(shifted).solve(rhs);
}

SpectrumSeries spectrum_eq10(const SystemParams& p, const std::vector<double>& nu)
{
    for (double v : nu) {
        if (!(std::abs(v) >= kPoleGuard)) {
            std::ostringstream msg;
            msg << "frequency " << v << " is inside the line-center guard |nu| < " << kPoleGuard;
            throw Error(ErrorCode::PoleGuard, msg.str());
        }
    }
    const SpectrumContext ctx(p);
    return evaluate(ctx, nu, SpectrumMethod::Eq10, [&](double v) { return ctx.eq10_at(v); });
}

SpectrumSeries spectrum_consistent(const SystemParams& p, const std::vector<double>& nu)
{
    for (double v : nu) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidGrid, "non-finite frequency");
    }
    const SpectrumContext ctx(p);
    return evaluate(ctx, nu, SpectrumMethod::QrtConsistent,
                    [&](double v) { return ctx.consistent_at(v); });
}

std::array<double, 3> coherent_weights(const StateVector& psi_inf, const std::array<double, 3>& mu)
{
    std::array<double, 3> w{};
    for (std::size_t i = 0; i < 3; ++i) {
        w[i] = mu[i] * mu[i] * std::norm(psi_inf.psi()(static_cast<int>(i)));
    }
    return w;
}

GridSpec default_nu_grid(const SystemParams& p)
{
    const double strongest = *std::max_element(p.omega.begin(), p.omega.end());
    GridSpec g;
    if (strongest > 10.0) {
        g.min = -120.0;
        g.max = 120.0;
        g.points = 4801;
    } else {
        g.min = -25.0;
        g.max = 25.0;
        g.points = 2001;
    }
    g.exclude_below = kPoleGuard;
    return g;
}

} // namespace flr4
